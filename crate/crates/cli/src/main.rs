//! `nlos-sim`: single-geometry SNR maps and Monte Carlo campaigns.

mod campaign;
mod config;
mod map;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use nlos_core::{MrOrientationPolicy, Point2};

/// Exit status for usage and validation errors.
const EXIT_USAGE: u8 = 2;
const EXIT_RUNTIME: u8 = 1;

/// Environment variable capping the worker count (0 = one per core).
const THREADS_ENV: &str = "NLOS_SIM_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "nlos-sim",
    version,
    about = "IRS vs. mobile relay placement for indoor mmWave links"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// SNR map over every candidate position for one source/destination pair.
    Map(map::MapArgs),
    /// Monte Carlo campaign over random source/destination pairs.
    Campaign(campaign::CampaignArgs),
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Runtime(anyhow::Error),
}

impl From<nlos_core::Error> for CliError {
    fn from(e: nlos_core::Error) -> Self {
        use nlos_core::Error::*;
        match e {
            InvalidEnvironment(_)
            | InvalidStep { .. }
            | InvalidArray(_)
            | InvalidConfig(_)
            | EndpointOutside { .. } => CliError::Usage(e.to_string()),
            other => CliError::Runtime(other.into()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Runtime(e.into())
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub fn parse_point(s: &str) -> Result<Point2, String> {
    let (x, y) = s.split_once(',').ok_or_else(|| format!("expected 'x,y', got '{s}'"))?;
    let parse = |v: &str| v.trim().parse::<f64>().map_err(|e| format!("'{v}': {e}"));
    let p = Point2::new(parse(x)?, parse(y)?);
    if !p.is_finite() {
        return Err(format!("non-finite coordinate in '{s}'"));
    }
    Ok(p)
}

pub fn parse_policy(s: &str) -> Result<MrOrientationPolicy, String> {
    s.parse().map_err(|e: nlos_core::Error| e.to_string())
}

fn thread_pool() -> CliResult<rayon::ThreadPool> {
    let threads = match std::env::var(THREADS_ENV) {
        Ok(v) => v.trim().parse::<usize>().map_err(|_| {
            CliError::Usage(format!("{THREADS_ENV} must be a non-negative integer, got '{v}'"))
        })?,
        Err(_) => 0,
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::Runtime(e.into()))
}

fn run(cli: Cli) -> CliResult<Vec<PathBuf>> {
    let pool = thread_pool()?;
    pool.install(|| match cli.command {
        Command::Map(args) => map::cmd_map(&args),
        Command::Campaign(args) => campaign::cmd_campaign(&args),
    })
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(paths) => {
            for p in paths {
                println!("wrote {}", p.display());
            }
            ExitCode::SUCCESS
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(CliError::Runtime(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_RUNTIME)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn points_parse() {
        assert_eq!(parse_point("0.5,1.5").unwrap(), Point2::new(0.5, 1.5));
        assert_eq!(parse_point(" 2 , 3 ").unwrap(), Point2::new(2.0, 3.0));
        assert!(parse_point("1").is_err());
        assert!(parse_point("a,b").is_err());
        assert!(parse_point("inf,1").is_err());
    }

    #[test]
    fn core_errors_map_to_exit_classes() {
        let usage: CliError = nlos_core::Error::InvalidStep { step: 0.0, side: 3.0 }.into();
        assert!(matches!(usage, CliError::Usage(_)));
        let runtime: CliError = nlos_core::Error::SamplingExhausted(3).into();
        assert!(matches!(runtime, CliError::Runtime(_)));
    }
}
