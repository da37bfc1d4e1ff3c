use std::path::PathBuf;

use clap::{Args, ValueEnum};
use nlos_core::export::map_csv_string;
use nlos_core::placement::{optimize_irs, optimize_mr, snr_map_export, PlacementResult};
use nlos_core::{Environment, MrOrientationPolicy, Point2, ScenarioConfig};
use serde::Serialize;

use crate::config::base_config;
use crate::output::{to_json, write_bundle, Manifest};
use crate::{parse_point, parse_policy, CliError, CliResult};

pub const IRS_MAP_FILE: &str = "irs_map.csv";
pub const MR_MAP_FILE: &str = "mr_map.csv";
pub const BEST_FILE: &str = "best.json";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TechChoice {
    Irs,
    Mr,
    Both,
}

#[derive(Debug, Args)]
pub struct MapArgs {
    /// Room side length in metres [default: first entry of the config's env_sizes]
    #[arg(long)]
    env_size: Option<f64>,
    /// Source position "x,y" in metres
    #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
    src: Point2,
    /// Destination position "x,y" in metres
    #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
    dst: Point2,
    /// Array element count, a perfect square [default: first entry of element_counts]
    #[arg(long)]
    elements: Option<usize>,
    /// Candidate spacing in metres
    #[arg(long)]
    step: Option<f64>,
    #[arg(long, value_enum, default_value = "both")]
    tech: TechChoice,
    /// Output directory
    #[arg(long)]
    out: PathBuf,
    /// JSON scenario file
    #[arg(long)]
    config: Option<PathBuf>,
    /// Relay orientation: boresight_per_hop, bisector or fixed_normal
    #[arg(long, value_parser = parse_policy)]
    policy: Option<MrOrientationPolicy>,
}

#[derive(Debug, Serialize)]
struct BestPoint {
    x_m: f64,
    y_m: f64,
    snr_db: f64,
}

#[derive(Debug, Serialize)]
struct TechReport {
    best: Option<BestPoint>,
    candidates: usize,
    infeasible: usize,
}

impl From<&PlacementResult> for TechReport {
    fn from(r: &PlacementResult) -> Self {
        Self {
            best: r.best.as_ref().map(|b| BestPoint {
                x_m: b.pose.position.x,
                y_m: b.pose.position.y,
                snr_db: b.snr_db,
            }),
            candidates: r.candidates_evaluated,
            infeasible: r.infeasible_count,
        }
    }
}

#[derive(Debug, Serialize)]
struct BestReport {
    manifest: Manifest,
    env_size_m: f64,
    n_elements: usize,
    src: Point2,
    dst: Point2,
    #[serde(skip_serializing_if = "Option::is_none")]
    irs: Option<TechReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    mr: Option<TechReport>,
}

fn resolve_config(args: &MapArgs) -> CliResult<ScenarioConfig> {
    let mut cfg = base_config(args.config.as_deref())?;
    if let Some(l) = args.env_size {
        cfg.env_sizes = vec![l];
    }
    if let Some(n) = args.elements {
        cfg.element_counts = vec![n];
    }
    if let Some(s) = args.step {
        cfg.step = s;
    }
    if let Some(p) = args.policy {
        cfg.policy = p;
    }
    cfg.env_sizes.truncate(1);
    cfg.element_counts.truncate(1);
    cfg.validate()?;
    Ok(cfg)
}

pub fn cmd_map(args: &MapArgs) -> CliResult<Vec<PathBuf>> {
    let cfg = resolve_config(args)?;
    let l = cfg.env_sizes[0];
    let env = Environment::new(l)?;
    for (flag, p) in [("--src", &args.src), ("--dst", &args.dst)] {
        if !env.contains_strictly(p) {
            return Err(CliError::Usage(format!(
                "{flag} {},{} is not strictly inside the {l} m room",
                p.x, p.y
            )));
        }
    }
    if args.src == args.dst {
        return Err(CliError::Usage("--src and --dst coincide".into()));
    }
    let array = cfg.array(cfg.element_counts[0])?;
    array.warn_if_electrically_large(cfg.radio.wavelength_m);

    let irs = match args.tech {
        TechChoice::Irs | TechChoice::Both => {
            Some(optimize_irs(&env, args.src, args.dst, &cfg.radio, &array, cfg.step)?)
        }
        TechChoice::Mr => None,
    };
    let mr = match args.tech {
        TechChoice::Mr | TechChoice::Both => {
            Some(optimize_mr(&env, args.src, args.dst, &cfg.radio, &array, cfg.step, cfg.policy)?)
        }
        TechChoice::Irs => None,
    };

    let mut files: Vec<(&str, String)> = Vec::new();
    if let Some(r) = &irs {
        files.push((IRS_MAP_FILE, map_csv_string(&snr_map_export(r))));
    }
    if let Some(r) = &mr {
        files.push((MR_MAP_FILE, map_csv_string(&snr_map_export(r))));
    }
    let report = BestReport {
        manifest: Manifest::new("map", &cfg),
        env_size_m: l,
        n_elements: array.n_elements(),
        src: args.src,
        dst: args.dst,
        irs: irs.as_ref().map(TechReport::from),
        mr: mr.as_ref().map(TechReport::from),
    };
    files.push((BEST_FILE, to_json(&report)?));
    write_bundle(&args.out, &files)
}
