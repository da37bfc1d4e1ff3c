//! Monte Carlo campaign over random source/destination pairs.
//!
//! Every run draws its endpoints from its own ChaCha8 stream, keyed by the
//! campaign seed and `(cell, run)`, so the output is identical for any
//! number of worker threads.

use rand::RngCore;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{grid_candidates, wall_candidates, CandidateSet, Environment, Point2};
use crate::irs_channel::ArrayConfig;
use crate::mr_channel::MrOrientationPolicy;
use crate::placement::{optimize_irs_over, optimize_mr_over, PlacementResult, Technology};
use crate::radio::RadioConfig;

/// Rejection attempts before [`sample_endpoints`] gives up.
pub const MAX_SAMPLING_ATTEMPTS: usize = 10_000;

/// RNG words consumed per sampling attempt (x and y of each endpoint).
pub const DRAWS_PER_ATTEMPT: usize = 4;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioConfig {
    pub env_sizes: Vec<f64>,
    pub element_counts: Vec<usize>,
    pub step: f64,
    pub runs: usize,
    pub seed: u64,
    pub radio: RadioConfig,
    pub policy: MrOrientationPolicy,
    pub min_separation: f64,
    /// Element area in m²; `None` means `(λ/4)²`.
    pub element_area: Option<f64>,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            env_sizes: vec![3.0, 6.0, 10.0],
            element_counts: vec![100, 400, 900],
            step: 0.1,
            runs: 1000,
            seed: 1,
            radio: RadioConfig::default(),
            policy: MrOrientationPolicy::default(),
            min_separation: 0.1,
            element_area: None,
        }
    }
}

impl ScenarioConfig {
    pub fn element_area(&self) -> f64 {
        self.element_area.unwrap_or_else(|| self.radio.default_element_area())
    }

    pub fn array(&self, n_elements: usize) -> Result<ArrayConfig> {
        ArrayConfig::new(n_elements, self.element_area())
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidConfig(m));
        self.radio.validate()?;
        if self.runs == 0 {
            return bad("runs must be at least 1".into());
        }
        if self.env_sizes.is_empty() || self.element_counts.is_empty() {
            return bad("env_sizes and element_counts must be non-empty".into());
        }
        for &l in &self.env_sizes {
            Environment::new(l)?;
            if !(self.step > 0.0 && self.step <= l) {
                return Err(Error::InvalidStep { step: self.step, side: l });
            }
            if !(self.min_separation >= 0.0 && self.min_separation < l * std::f64::consts::SQRT_2) {
                return bad(format!(
                    "min_separation {} not in [0, L√2) for L = {l}",
                    self.min_separation
                ));
            }
        }
        for &n in &self.element_counts {
            self.array(n)?;
        }
        Ok(())
    }

    /// `(env_size, n_elements)` cells, environment-major.
    pub fn cells(&self) -> Vec<(f64, usize)> {
        self.env_sizes
            .iter()
            .flat_map(|&l| self.element_counts.iter().map(move |&n| (l, n)))
            .collect()
    }
}

/// Best position and its SNR for one technology in one run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BestPlacement {
    pub position: Point2,
    pub snr_db: f64,
}

impl BestPlacement {
    fn from_result(r: &PlacementResult) -> Option<Self> {
        r.best.as_ref().map(|b| Self { position: b.pose.position, snr_db: b.snr_db })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub run_id: usize,
    pub env_size: f64,
    pub n_elements: usize,
    pub src: Point2,
    pub dst: Point2,
    pub irs: Option<BestPlacement>,
    pub mr: Option<BestPlacement>,
}

impl RunRecord {
    pub fn best(&self, tech: Technology) -> Option<&BestPlacement> {
        match tech {
            Technology::Irs => self.irs.as_ref(),
            Technology::Mr => self.mr.as_ref(),
        }
    }

    pub fn irs_best_snr_db(&self) -> Option<f64> {
        self.irs.map(|b| b.snr_db)
    }

    pub fn mr_best_snr_db(&self) -> Option<f64> {
        self.mr.map(|b| b.snr_db)
    }

    pub fn mr_feasible(&self) -> bool {
        self.mr.is_some()
    }
}

/// Box-plot statistics of best-SNR values in dB.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SnrStats {
    pub min: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub max: f64,
    pub mean: f64,
}

impl SnrStats {
    /// Order statistics with linear interpolation between closest ranks.
    /// `None` for an empty sample.
    pub fn from_values(values: &[f64]) -> Option<Self> {
        if values.is_empty() {
            return None;
        }
        let mut sorted = values.to_vec();
        sorted.sort_by(f64::total_cmp);
        Some(Self {
            min: sorted[0],
            q1: quantile_sorted(&sorted, 0.25),
            median: quantile_sorted(&sorted, 0.5),
            q3: quantile_sorted(&sorted, 0.75),
            max: sorted[sorted.len() - 1],
            mean: sorted.iter().sum::<f64>() / sorted.len() as f64,
        })
    }
}

/// Type-7 quantile of an ascending, non-empty slice.
pub fn quantile_sorted(sorted: &[f64], p: f64) -> f64 {
    let h = (sorted.len() - 1) as f64 * p;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellSummary {
    pub env_size: f64,
    pub n_elements: usize,
    pub technology: Technology,
    pub runs: usize,
    pub feasible_runs: usize,
    /// `None` when no run in the cell had a feasible placement.
    pub stats: Option<SnrStats>,
}

impl CellSummary {
    pub fn feasible_rate(&self) -> f64 {
        if self.runs == 0 {
            0.0
        } else {
            self.feasible_runs as f64 / self.runs as f64
        }
    }

    pub fn excluded_runs(&self) -> usize {
        self.runs - self.feasible_runs
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct CampaignSummary {
    pub cells: Vec<CellSummary>,
}

impl CampaignSummary {
    pub fn cell(
        &self,
        env_size: f64,
        n_elements: usize,
        technology: Technology,
    ) -> Option<&CellSummary> {
        self.cells.iter().find(|c| {
            c.env_size == env_size && c.n_elements == n_elements && c.technology == technology
        })
    }

    pub fn mean(&self, env_size: f64, n_elements: usize, technology: Technology) -> Option<f64> {
        self.cell(env_size, n_elements, technology).and_then(|c| c.stats).map(|s| s.mean)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CampaignOutput {
    pub records: Vec<RunRecord>,
    pub summary: CampaignSummary,
}

/// Draws a uniform coordinate strictly inside `(0, side)` from one RNG word.
fn open_unit_coord(rng: &mut impl RngCore, side: f64) -> f64 {
    // 53 random bits, centred in their bucket: never exactly 0 or 1
    let k = rng.next_u64() >> 11;
    (k as f64 + 0.5) * (1.0 / (1u64 << 53) as f64) * side
}

/// Uniform source and destination in the open room interior, at least
/// `min_separation` apart. Each attempt consumes [`DRAWS_PER_ATTEMPT`] words.
pub fn sample_endpoints(
    env: &Environment,
    rng: &mut impl RngCore,
    min_separation: f64,
) -> Result<(Point2, Point2)> {
    let l = env.side_length();
    for _ in 0..MAX_SAMPLING_ATTEMPTS {
        let src = Point2::new(open_unit_coord(rng, l), open_unit_coord(rng, l));
        let dst = Point2::new(open_unit_coord(rng, l), open_unit_coord(rng, l));
        if src.distance(&dst) >= min_separation && src.distance(&dst) > 0.0 {
            return Ok((src, dst));
        }
    }
    Err(Error::SamplingExhausted(MAX_SAMPLING_ATTEMPTS))
}

/// RNG for run `run_id` of cell `cell`: the campaign seed with a dedicated stream.
pub fn run_rng(seed: u64, cell: usize, run_id: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((cell as u64) << 40) | run_id as u64);
    rng
}

struct Cell {
    index: usize,
    env: Environment,
    array: ArrayConfig,
    walls: CandidateSet,
    grid: CandidateSet,
}

/// Runs every `(env_size, n_elements)` cell for `cfg.runs` runs and summarises.
///
/// A run with no feasible relay position is recorded, not treated as an error.
pub fn run_campaign(cfg: &ScenarioConfig) -> Result<CampaignOutput> {
    cfg.validate()?;
    let cells = cfg
        .cells()
        .into_iter()
        .enumerate()
        .map(|(index, (l, n))| {
            let env = Environment::new(l)?;
            let array = cfg.array(n)?;
            Ok(Cell {
                index,
                env,
                array,
                walls: wall_candidates(&env, cfg.step)?,
                grid: grid_candidates(&env, cfg.step)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    if let Some(c) = cells.first() {
        c.array.warn_if_electrically_large(cfg.radio.wavelength_m);
    }

    let jobs: Vec<(&Cell, usize)> =
        cells.iter().flat_map(|c| (0..cfg.runs).map(move |r| (c, r))).collect();
    let records = jobs
        .par_iter()
        .map(|&(cell, run_id)| run_once(cfg, cell, run_id))
        .collect::<Result<Vec<_>>>()?;

    let summary = summarize(&records);
    Ok(CampaignOutput { records, summary })
}

fn run_once(cfg: &ScenarioConfig, cell: &Cell, run_id: usize) -> Result<RunRecord> {
    let mut rng = run_rng(cfg.seed, cell.index, run_id);
    let (src, dst) = sample_endpoints(&cell.env, &mut rng, cfg.min_separation)?;
    let irs = optimize_irs_over(&cell.env, src, dst, &cfg.radio, &cell.array, &cell.walls)?;
    let mr =
        optimize_mr_over(&cell.env, src, dst, &cfg.radio, &cell.array, &cell.grid, cfg.policy)?;
    Ok(RunRecord {
        run_id,
        env_size: cell.env.side_length(),
        n_elements: cell.array.n_elements(),
        src,
        dst,
        irs: BestPlacement::from_result(&irs),
        mr: BestPlacement::from_result(&mr),
    })
}

/// Per `(env_size, n_elements, technology)` statistics over feasible runs,
/// in order of first appearance.
pub fn summarize(records: &[RunRecord]) -> CampaignSummary {
    let mut keys: Vec<(f64, usize)> = Vec::new();
    for r in records {
        if !keys.iter().any(|&(l, n)| l == r.env_size && n == r.n_elements) {
            keys.push((r.env_size, r.n_elements));
        }
    }
    let mut cells = Vec::with_capacity(keys.len() * 2);
    for (l, n) in keys {
        let in_cell: Vec<&RunRecord> =
            records.iter().filter(|r| r.env_size == l && r.n_elements == n).collect();
        for tech in [Technology::Irs, Technology::Mr] {
            let values: Vec<f64> =
                in_cell.iter().filter_map(|r| r.best(tech)).map(|b| b.snr_db).collect();
            cells.push(CellSummary {
                env_size: l,
                n_elements: n,
                technology: tech,
                runs: in_cell.len(),
                feasible_runs: values.len(),
                stats: SnrStats::from_values(&values),
            });
        }
    }
    CampaignSummary { cells }
}
