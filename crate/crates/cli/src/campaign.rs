use std::path::PathBuf;

use clap::Args;
use nlos_core::export::{records_csv_string, summary_csv_string};
use nlos_core::montecarlo::run_campaign;
use nlos_core::{MrOrientationPolicy, ScenarioConfig};

use crate::config::base_config;
use crate::output::{to_json, write_bundle, Manifest};
use crate::{parse_policy, CliResult};

pub const RECORDS_FILE: &str = "records.csv";
pub const SUMMARY_FILE: &str = "summary.csv";
pub const MANIFEST_FILE: &str = "manifest.json";

#[derive(Debug, Args)]
pub struct CampaignArgs {
    /// Runs per (room size, element count) cell
    #[arg(long)]
    runs: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Room side lengths, e.g. 3,6,10
    #[arg(long, value_delimiter = ',')]
    env_sizes: Option<Vec<f64>>,
    /// Element counts, e.g. 100,400,900
    #[arg(long, value_delimiter = ',')]
    elements: Option<Vec<usize>>,
    #[arg(long)]
    step: Option<f64>,
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

fn resolve_config(args: &CampaignArgs) -> CliResult<ScenarioConfig> {
    let mut cfg = base_config(args.config.as_deref())?;
    if let Some(r) = args.runs {
        cfg.runs = r;
    }
    if let Some(s) = args.seed {
        cfg.seed = s;
    }
    if let Some(v) = &args.env_sizes {
        cfg.env_sizes = v.clone();
    }
    if let Some(v) = &args.elements {
        cfg.element_counts = v.clone();
    }
    if let Some(s) = args.step {
        cfg.step = s;
    }
    if let Some(p) = args.policy {
        cfg.policy = p;
    }
    cfg.validate()?;
    Ok(cfg)
}

pub fn cmd_campaign(args: &CampaignArgs) -> CliResult<Vec<PathBuf>> {
    let cfg = resolve_config(args)?;
    let out = run_campaign(&cfg)?;
    let files = [
        (RECORDS_FILE, records_csv_string(&out.records)),
        (SUMMARY_FILE, summary_csv_string(&out.summary)),
        (MANIFEST_FILE, to_json(&Manifest::new("campaign", &cfg))?),
    ];
    write_bundle(&args.out, &files)
}
