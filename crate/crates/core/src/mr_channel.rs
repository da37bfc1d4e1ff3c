//! Mobile decode-and-forward relay: aggregate array gain and two-hop SNR.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{relative_geometry, PanelPose, Point2, RelativeGeometry};
use crate::irs_channel::ArrayConfig;
use crate::ANGLE_GUARD;

/// How the relay array is pointed when evaluating its two hops.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MrOrientationPolicy {
    /// The relay faces each counterpart during its half-duplex phase: η = 0 on both hops.
    #[default]
    BoresightPerHop,
    /// One fixed facing along the bisector of the source and destination directions.
    Bisector,
    /// Angles measured from the candidate pose's stored normal.
    FixedNormal,
}

impl MrOrientationPolicy {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::BoresightPerHop => "boresight_per_hop",
            Self::Bisector => "bisector",
            Self::FixedNormal => "fixed_normal",
        }
    }
}

impl std::str::FromStr for MrOrientationPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "boresight_per_hop" => Ok(Self::BoresightPerHop),
            "bisector" => Ok(Self::Bisector),
            "fixed_normal" => Ok(Self::FixedNormal),
            other => Err(Error::InvalidConfig(format!("unknown orientation policy '{other}'"))),
        }
    }
}

/// One hop as seen from an `N`-element array, with the aperture ratio
/// `B = N·A / (4 d² cos² η)` the closed-form gain is written in.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HopGeometry {
    pub distance: f64,
    pub angle: f64,
    pub aperture_ratio: f64,
}

impl HopGeometry {
    pub fn new(distance: f64, angle: f64, cfg: &ArrayConfig) -> Result<Self> {
        if !(distance > 0.0 && distance.is_finite()) {
            return Err(Error::DegenerateGeometry(format!("hop distance {distance}")));
        }
        if !(angle.abs() < FRAC_PI_2 - ANGLE_GUARD) {
            return Err(Error::DegenerateGeometry(format!(
                "hop angle {angle:.6} rad is at or beyond grazing incidence"
            )));
        }
        let cos = angle.cos();
        let ratio =
            cfg.n_elements() as f64 * cfg.element_area() / (4.0 * distance * distance * cos * cos);
        Ok(Self { distance, angle, aperture_ratio: ratio })
    }

    /// Aggregate gain `Σ_n |h_n|²` of the whole array for this hop.
    pub fn gain(&self) -> f64 {
        let b = self.aperture_ratio;
        let t = self.angle.tan();
        let sb = b.sqrt();
        let mut sum = 0.0;
        for sign in [-1.0, 1.0] {
            let num = b + sign * sb * t;
            let den = (2.0 * b + t * t + 1.0 + 2.0 * sign * sb * t).sqrt();
            sum += num / (6.0 * PI * (b + 1.0) * den) + (num / den).atan() / (3.0 * PI);
        }
        sum
    }
}

/// Closed-form gain of an `N`-element square array from a point at distance
/// `d` and angle `eta` off boresight. Lies in (0, 1/3).
pub fn relay_gain(d: f64, eta: f64, cfg: &ArrayConfig) -> Result<f64> {
    Ok(HopGeometry::new(d, eta, cfg)?.gain())
}

/// Hop SNR `P·ζ/σ²`; `gain` already aggregates all elements.
pub fn snr_hop(p_eff: f64, noise: f64, gain: f64) -> Result<f64> {
    if !(noise > 0.0) {
        return Err(Error::NonPositiveNoise(noise));
    }
    Ok(p_eff * gain / noise)
}

/// Half-duplex decode-and-forward: the weaker hop limits the link.
pub fn snr_end_to_end(snr_tx_mr: f64, snr_mr_rx: f64) -> f64 {
    snr_tx_mr.min(snr_mr_rx)
}

/// Geometry of the source and destination hops for a relay at `relay`.
///
/// Returned angles may be at or beyond the grazing guard; callers decide
/// feasibility with [`RelativeGeometry::is_in_front`].
pub fn resolve_orientation(
    policy: MrOrientationPolicy,
    relay: &PanelPose,
    src: &Point2,
    dst: &Point2,
) -> Result<(RelativeGeometry, RelativeGeometry)> {
    match policy {
        MrOrientationPolicy::FixedNormal => {
            Ok((relative_geometry(relay, src)?, relative_geometry(relay, dst)?))
        }
        MrOrientationPolicy::BoresightPerHop => {
            let d_src = relative_geometry(relay, src)?.distance;
            let d_dst = relative_geometry(relay, dst)?.distance;
            Ok((
                RelativeGeometry { distance: d_src, angle: 0.0 },
                RelativeGeometry { distance: d_dst, angle: 0.0 },
            ))
        }
        MrOrientationPolicy::Bisector => {
            let p = relay.position;
            let to_src = unit(src.x - p.x, src.y - p.y, src)?;
            let to_dst = unit(dst.x - p.x, dst.y - p.y, dst)?;
            let (bx, by) = (to_src.0 + to_dst.0, to_src.1 + to_dst.1);
            let norm = bx.hypot(by);
            // opposite directions: no bisector in front, fall back to a perpendicular facing
            let normal = if norm > 1e-12 { (bx / norm, by / norm) } else { (-to_src.1, to_src.0) };
            let pose = PanelPose::new(p, normal)?;
            Ok((relative_geometry(&pose, src)?, relative_geometry(&pose, dst)?))
        }
    }
}

fn unit(dx: f64, dy: f64, at: &Point2) -> Result<(f64, f64)> {
    let n = dx.hypot(dy);
    if !(n > 0.0) {
        return Err(Error::DegenerateGeometry(format!(
            "relay coincides with endpoint ({}, {})",
            at.x, at.y
        )));
    }
    Ok((dx / n, dy / n))
}
