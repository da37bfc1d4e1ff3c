//! Room geometry, candidate enumeration and panel-relative coordinates.

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ANGLE_GUARD;

/// Slack used when rounding `L / step` to a lattice count.
const LATTICE_EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn distance(&self, other: &Point2) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    fn sub(&self, other: &Point2) -> (f64, f64) {
        (self.x - other.x, self.y - other.y)
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

/// Square room `[0, L] × [0, L]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Environment {
    side_length: f64,
}

impl Environment {
    pub fn new(side_length: f64) -> Result<Self> {
        if !(side_length.is_finite() && side_length > 0.0) {
            return Err(Error::InvalidEnvironment(side_length));
        }
        Ok(Self { side_length })
    }

    pub fn side_length(&self) -> f64 {
        self.side_length
    }

    /// True when `p` lies in the open interior `(0, L)²`.
    pub fn contains_strictly(&self, p: &Point2) -> bool {
        p.is_finite() && p.x > 0.0 && p.x < self.side_length && p.y > 0.0 && p.y < self.side_length
    }

    pub(crate) fn require_interior(&self, role: &'static str, p: &Point2) -> Result<()> {
        if self.contains_strictly(p) {
            Ok(())
        } else {
            Err(Error::EndpointOutside { role, x: p.x, y: p.y, side: self.side_length })
        }
    }

    fn lattice_count(&self, step: f64) -> Result<usize> {
        if !(step.is_finite() && step > 0.0 && step <= self.side_length * (1.0 + LATTICE_EPS)) {
            return Err(Error::InvalidStep { step, side: self.side_length });
        }
        Ok((self.side_length / step + LATTICE_EPS).floor() as usize)
    }

    fn lattice_coord(&self, k: usize, step: f64) -> f64 {
        (k as f64 * step).min(self.side_length)
    }
}

/// Position and facing of an IRS panel or relay array in the room plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PanelPose {
    pub position: Point2,
    normal: (f64, f64),
}

impl PanelPose {
    /// Builds a pose, normalising `normal`. Fails on a zero or non-finite normal.
    pub fn new(position: Point2, normal: (f64, f64)) -> Result<Self> {
        let norm = normal.0.hypot(normal.1);
        if !(norm.is_finite() && norm > 0.0) || !position.is_finite() {
            return Err(Error::DegenerateGeometry(format!(
                "pose at ({}, {}) with normal {normal:?}",
                position.x, position.y
            )));
        }
        Ok(Self { position, normal: (normal.0 / norm, normal.1 / norm) })
    }

    fn axis(position: Point2, normal: (f64, f64)) -> Self {
        Self { position, normal }
    }

    pub fn normal(&self) -> (f64, f64) {
        self.normal
    }
}

/// Distance and signed angle (from the panel normal, counterclockwise positive)
/// of an endpoint as seen from a panel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RelativeGeometry {
    pub distance: f64,
    pub angle: f64,
}

impl RelativeGeometry {
    /// Whether the endpoint is strictly in front of the panel, with margin.
    pub fn is_in_front(&self) -> bool {
        self.distance > 0.0 && self.angle.abs() < FRAC_PI_2 - ANGLE_GUARD
    }
}

/// Candidate poses in deterministic traversal order.
#[derive(Debug, Clone, PartialEq)]
pub struct CandidateSet {
    pub step: f64,
    pub candidates: Vec<PanelPose>,
}

impl CandidateSet {
    pub fn len(&self) -> usize {
        self.candidates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.candidates.is_empty()
    }
}

/// Maps (side length, offset along the wall) to a position on that wall.
type WallPlacer = fn(f64, f64) -> Point2;

/// IRS poses along the four walls, each facing into the room.
///
/// Walls are walked counterclockwise from the corner (0, 0): bottom (y = 0),
/// right (x = L), top (y = L), left (x = 0). Points sit at offsets `k·step`
/// from each wall's starting corner. A position already produced by an
/// earlier wall is skipped, so each corner appears once.
pub fn wall_candidates(env: &Environment, step: f64) -> Result<CandidateSet> {
    let k_max = env.lattice_count(step)?;
    let l = env.side_length();
    let walls: [(WallPlacer, (f64, f64)); 4] = [
        (|_, s| Point2::new(s, 0.0), (0.0, 1.0)),
        (|l, s| Point2::new(l, s), (-1.0, 0.0)),
        (|l, s| Point2::new(l - s, l), (0.0, -1.0)),
        (|l, s| Point2::new(0.0, l - s), (1.0, 0.0)),
    ];

    let mut candidates: Vec<PanelPose> = Vec::with_capacity(4 * (k_max + 1));
    for (place, normal) in walls {
        for k in 0..=k_max {
            let p = place(l, env.lattice_coord(k, step));
            let dup = candidates.iter().any(|c| c.position.distance(&p) < LATTICE_EPS * l.max(1.0));
            if !dup {
                candidates.push(PanelPose::axis(p, normal));
            }
        }
    }
    Ok(CandidateSet { step, candidates })
}

/// Relay poses on the `(i·step, j·step)` lattice covering the room,
/// row by row (y outer, x inner) from (0, 0). Normals start at +x; the
/// relay orientation policy decides how they are used.
pub fn grid_candidates(env: &Environment, step: f64) -> Result<CandidateSet> {
    let k_max = env.lattice_count(step)?;
    let mut candidates = Vec::with_capacity((k_max + 1) * (k_max + 1));
    for j in 0..=k_max {
        let y = env.lattice_coord(j, step);
        for i in 0..=k_max {
            let x = env.lattice_coord(i, step);
            candidates.push(PanelPose::axis(Point2::new(x, y), (1.0, 0.0)));
        }
    }
    Ok(CandidateSet { step, candidates })
}

/// Distance and signed angle from the panel normal to `endpoint`, angle in (−π, π].
pub fn relative_geometry(panel: &PanelPose, endpoint: &Point2) -> Result<RelativeGeometry> {
    let (vx, vy) = endpoint.sub(&panel.position);
    let distance = vx.hypot(vy);
    if !(distance > 0.0) {
        return Err(Error::DegenerateGeometry(format!(
            "endpoint coincides with panel at ({}, {})",
            endpoint.x, endpoint.y
        )));
    }
    let (nx, ny) = panel.normal;
    let cross = nx * vy - ny * vx;
    let dot = nx * vx + ny * vy;
    Ok(RelativeGeometry { distance, angle: cross.atan2(dot) })
}
