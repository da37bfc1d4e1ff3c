//! Link-level models for comparing an intelligent reflective surface (IRS)
//! mounted on a wall against a freely placed mobile decode-and-forward relay
//! (MR) when the direct indoor mmWave path is blocked.
//!
//! The crate is organised bottom-up:
//!
//! - [`geometry`]: the square room, candidate IRS/MR poses, panel-relative coordinates.
//! - [`radio`]: carrier, bandwidth, noise and power budget.
//! - [`irs_channel`]: near-field per-element gain of a square IRS and its coherent SNR.
//! - [`mr_channel`]: closed-form aggregate array gain and the two-hop DF SNR.
//! - [`direct_link`]: the direct line-of-sight SNR used as the relay feasibility ceiling.
//! - [`placement`]: exhaustive search over candidate positions.
//! - [`montecarlo`]: random source/destination campaigns and box-plot statistics.
//! - [`export`]: CSV contracts shared with the command-line tool and plotting scripts.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod direct_link;
pub mod error;
pub mod export;
pub mod geometry;
pub mod irs_channel;
pub mod montecarlo;
pub mod mr_channel;
pub mod placement;
pub mod radio;

pub use direct_link::DirectLinkModel;
pub use error::{Error, Result};
pub use geometry::{CandidateSet, Environment, PanelPose, Point2, RelativeGeometry};
pub use irs_channel::{ArrayConfig, ElementCoord};
pub use montecarlo::{CampaignOutput, CampaignSummary, RunRecord, ScenarioConfig, SnrStats};
pub use mr_channel::{HopGeometry, MrOrientationPolicy};
pub use placement::{Infeasibility, LinkEvaluation, MapRow, PlacementResult, Technology};
pub use radio::RadioConfig;

/// Angles at or beyond `π/2 - ANGLE_GUARD` from a panel normal are treated as
/// behind or coplanar with the panel.
pub const ANGLE_GUARD: f64 = 1e-6;

/// dB value written for infeasible candidates in exported SNR maps.
pub const INFEASIBLE_SENTINEL_DB: f64 = -10.0;

/// Converts a linear power ratio to decibels.
pub fn to_db(linear: f64) -> f64 {
    10.0 * linear.log10()
}

pub fn from_db(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}
