//! Exhaustive placement search for the IRS (walls) and the relay (whole room).

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::direct_link::direct_ceiling;
use crate::error::{Error, Result};
use crate::geometry::{
    grid_candidates, relative_geometry, wall_candidates, CandidateSet, Environment, PanelPose,
    Point2,
};
use crate::irs_channel::{irs_endpoint_gain, snr_irs, ArrayConfig};
use crate::mr_channel::{
    relay_gain, resolve_orientation, snr_end_to_end, snr_hop, MrOrientationPolicy,
};
use crate::radio::RadioConfig;
use crate::{to_db, INFEASIBLE_SENTINEL_DB};

/// Minimum relay-to-endpoint distance, m.
pub const RELAY_MIN_DISTANCE: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Technology {
    Irs,
    Mr,
}

impl Technology {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Irs => "irs",
            Self::Mr => "mr",
        }
    }
}

impl std::fmt::Display for Technology {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Why a candidate was discarded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Infeasibility {
    /// Relay within [`RELAY_MIN_DISTANCE`] of an endpoint.
    TooClose,
    /// An endpoint is behind or edge-on to the panel.
    Grazing,
    /// Relayed SNR exceeds the direct line-of-sight SNR.
    AboveDirect,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinkEvaluation {
    pub pose: PanelPose,
    /// `None` for infeasible candidates.
    pub snr_linear: Option<f64>,
    /// True SNR in dB, or [`INFEASIBLE_SENTINEL_DB`] when infeasible.
    pub snr_db: f64,
    pub feasible: bool,
    pub reason: Option<Infeasibility>,
}

impl LinkEvaluation {
    fn feasible(pose: PanelPose, snr: f64) -> Self {
        Self { pose, snr_linear: Some(snr), snr_db: to_db(snr), feasible: true, reason: None }
    }

    fn infeasible(pose: PanelPose, reason: Infeasibility) -> Self {
        Self {
            pose,
            snr_linear: None,
            snr_db: INFEASIBLE_SENTINEL_DB,
            feasible: false,
            reason: Some(reason),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlacementResult {
    pub technology: Technology,
    /// Highest-SNR feasible candidate, earliest in traversal order on ties.
    /// `None` when every candidate is infeasible.
    pub best: Option<LinkEvaluation>,
    pub best_index: Option<usize>,
    pub map: Vec<LinkEvaluation>,
    pub candidates_evaluated: usize,
    pub infeasible_count: usize,
}

impl PlacementResult {
    fn from_map(technology: Technology, map: Vec<LinkEvaluation>) -> Self {
        let mut best_index: Option<usize> = None;
        let mut best_snr = f64::NEG_INFINITY;
        for (i, e) in map.iter().enumerate() {
            if let Some(snr) = e.snr_linear {
                if snr > best_snr {
                    best_snr = snr;
                    best_index = Some(i);
                }
            }
        }
        let infeasible_count = map.iter().filter(|e| !e.feasible).count();
        Self {
            technology,
            best: best_index.map(|i| map[i].clone()),
            best_index,
            candidates_evaluated: map.len(),
            infeasible_count,
            map,
        }
    }

    pub fn has_feasible(&self) -> bool {
        self.best.is_some()
    }

    /// The best candidate, or [`Error::NoFeasiblePlacement`].
    pub fn require_best(&self) -> Result<&LinkEvaluation> {
        self.best.as_ref().ok_or(Error::NoFeasiblePlacement(self.technology.as_str()))
    }

    /// SNR of the worst feasible candidate, in dB.
    pub fn worst_feasible_db(&self) -> Option<f64> {
        self.map.iter().filter(|e| e.feasible).map(|e| e.snr_db).reduce(f64::min)
    }
}

/// Best IRS position on the walls for a source/destination pair.
pub fn optimize_irs(
    env: &Environment,
    src: Point2,
    dst: Point2,
    radio: &RadioConfig,
    array: &ArrayConfig,
    step: f64,
) -> Result<PlacementResult> {
    let candidates = wall_candidates(env, step)?;
    optimize_irs_over(env, src, dst, radio, array, &candidates)
}

/// [`optimize_irs`] over a precomputed candidate set.
pub fn optimize_irs_over(
    env: &Environment,
    src: Point2,
    dst: Point2,
    radio: &RadioConfig,
    array: &ArrayConfig,
    candidates: &CandidateSet,
) -> Result<PlacementResult> {
    env.require_interior("source", &src)?;
    env.require_interior("destination", &dst)?;
    let p_eff = radio.tx_power_eff_w();
    let noise = radio.noise_power_w();

    let map = candidates
        .candidates
        .par_iter()
        .map(|pose| {
            let gs = relative_geometry(pose, &src)?;
            let gd = relative_geometry(pose, &dst)?;
            if !(gs.is_in_front() && gd.is_in_front()) {
                return Ok(LinkEvaluation::infeasible(*pose, Infeasibility::Grazing));
            }
            let amps = irs_endpoint_gain(&gs, &gd, array)?;
            let snr = snr_irs(p_eff, noise, &amps.source, &amps.destination)?;
            Ok(LinkEvaluation::feasible(*pose, snr))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PlacementResult::from_map(Technology::Irs, map))
}

/// Best relay position on the room lattice for a source/destination pair.
pub fn optimize_mr(
    env: &Environment,
    src: Point2,
    dst: Point2,
    radio: &RadioConfig,
    array: &ArrayConfig,
    step: f64,
    policy: MrOrientationPolicy,
) -> Result<PlacementResult> {
    let candidates = grid_candidates(env, step)?;
    optimize_mr_over(env, src, dst, radio, array, &candidates, policy)
}

/// [`optimize_mr`] over a precomputed candidate set.
pub fn optimize_mr_over(
    env: &Environment,
    src: Point2,
    dst: Point2,
    radio: &RadioConfig,
    array: &ArrayConfig,
    candidates: &CandidateSet,
    policy: MrOrientationPolicy,
) -> Result<PlacementResult> {
    env.require_interior("source", &src)?;
    env.require_interior("destination", &dst)?;
    let p_src = radio.tx_power_eff_w();
    let p_relay = radio.relay_power_eff_w();
    let noise = radio.noise_power_w();
    let ceiling = direct_ceiling(&src, &dst, radio, array)?;

    let map = candidates
        .candidates
        .par_iter()
        .map(|pose| {
            let p = pose.position;
            if p.distance(&src) < RELAY_MIN_DISTANCE || p.distance(&dst) < RELAY_MIN_DISTANCE {
                return Ok(LinkEvaluation::infeasible(*pose, Infeasibility::TooClose));
            }
            let (gs, gd) = resolve_orientation(policy, pose, &src, &dst)?;
            if !(gs.is_in_front() && gd.is_in_front()) {
                return Ok(LinkEvaluation::infeasible(*pose, Infeasibility::Grazing));
            }
            let first = snr_hop(p_src, noise, relay_gain(gs.distance, gs.angle, array)?)?;
            let second = snr_hop(p_relay, noise, relay_gain(gd.distance, gd.angle, array)?)?;
            let snr = snr_end_to_end(first, second);
            if snr > ceiling {
                return Ok(LinkEvaluation::infeasible(*pose, Infeasibility::AboveDirect));
            }
            Ok(LinkEvaluation::feasible(*pose, snr))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PlacementResult::from_map(Technology::Mr, map))
}

/// One row of an exported SNR map.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MapRow {
    pub x_m: f64,
    pub y_m: f64,
    pub snr_db: f64,
    pub feasible: bool,
}

/// Flattens a result into map rows; infeasible candidates carry the -10 dB sentinel.
pub fn snr_map_export(result: &PlacementResult) -> Vec<MapRow> {
    result
        .map
        .iter()
        .map(|e| MapRow {
            x_m: e.pose.position.x,
            y_m: e.pose.position.y,
            snr_db: if e.feasible { e.snr_db } else { INFEASIBLE_SENTINEL_DB },
            feasible: e.feasible,
        })
        .collect()
}
