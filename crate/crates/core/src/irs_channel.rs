//! Near-field channel of a square IRS.
//!
//! Each element is a small `a × a` receive aperture in the panel plane
//! (z = 0). The gain from a point source at `(x_t, y_t, d)` is the
//! closed-form integral of the radiated intensity over the element, which
//! stays bounded (< 1/3) however close the source gets. With ideal phase
//! configuration every element adds coherently at the destination.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::RelativeGeometry;

/// Square array of `n_elements` identical elements of area `element_area`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ArrayConfig {
    n_elements: usize,
    element_area: f64,
    side_count: usize,
}

impl ArrayConfig {
    pub fn new(n_elements: usize, element_area: f64) -> Result<Self> {
        if n_elements == 0 {
            return Err(Error::InvalidArray("element count must be at least 1".into()));
        }
        let side_count = (n_elements as f64).sqrt().round() as usize;
        if side_count * side_count != n_elements {
            return Err(Error::InvalidArray(format!(
                "element count {n_elements} is not a perfect square"
            )));
        }
        if !(element_area.is_finite() && element_area > 0.0) {
            return Err(Error::InvalidArray(format!(
                "element area must be positive, got {element_area}"
            )));
        }
        Ok(Self { n_elements, element_area, side_count })
    }

    pub fn n_elements(&self) -> usize {
        self.n_elements
    }

    pub fn element_area(&self) -> f64 {
        self.element_area
    }

    /// Elements per row (√N).
    pub fn side_count(&self) -> usize {
        self.side_count
    }

    /// Element side `a = √A`.
    pub fn element_side(&self) -> f64 {
        self.element_area.sqrt()
    }

    /// Side length of the whole array, `√N · √A`.
    pub fn aperture_side(&self) -> f64 {
        self.side_count as f64 * self.element_side()
    }

    /// Logs a warning if elements are electrically large (`a > λ/2`), where the
    /// small-aperture gain model loses accuracy. Returns whether it warned.
    pub fn warn_if_electrically_large(&self, wavelength: f64) -> bool {
        let large = self.element_side() > wavelength / 2.0;
        if large {
            log::warn!(
                "element side {:.4} m exceeds half a wavelength ({:.4} m); gain model is approximate",
                self.element_side(),
                wavelength / 2.0
            );
        }
        large
    }

    /// All element centres in index order `n = 1..=N`.
    pub fn elements(&self) -> impl Iterator<Item = ElementCoord> + '_ {
        (1..=self.n_elements).map(move |n| self.coord_unchecked(n))
    }

    fn coord_unchecked(&self, n: usize) -> ElementCoord {
        let a = self.element_side();
        let half = (self.side_count as f64 - 1.0) * a / 2.0;
        let col = (n - 1) % self.side_count;
        let row = (n - 1) / self.side_count;
        ElementCoord { index: n, x: -half + a * col as f64, y: half - a * row as f64 }
    }
}

/// Centre of element `index` (1-based) in the panel plane, array centred at the origin.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ElementCoord {
    pub index: usize,
    pub x: f64,
    pub y: f64,
}

/// Element centres fill rows left to right, top row first.
pub fn element_coords(cfg: &ArrayConfig, n: usize) -> Result<ElementCoord> {
    if n == 0 || n > cfg.n_elements {
        return Err(Error::ElementIndexOutOfRange { index: n, count: cfg.n_elements });
    }
    Ok(cfg.coord_unchecked(n))
}

/// Free-space gain from an isotropic source at `(tx_x, tx_y, tx_z)` into the
/// `a × a` element centred at `elem`.
pub fn free_space_gain(
    tx_x: f64,
    tx_y: f64,
    tx_z: f64,
    elem: &ElementCoord,
    a: f64,
) -> Result<f64> {
    if !(tx_z > 0.0 && tx_z.is_finite()) {
        return Err(Error::DegenerateGeometry(format!(
            "transmitter must be in front of the panel plane, got z = {tx_z}"
        )));
    }
    if !(a > 0.0 && a.is_finite()) {
        return Err(Error::InvalidArray(format!("element side must be positive, got {a}")));
    }
    Ok(aperture_gain(elem.x - tx_x, elem.y - tx_y, tx_z, a))
}

/// Gain of an `a × a` aperture whose centre is offset `(dx, dy)` laterally
/// from the source, at height `d`. Inputs are assumed valid.
#[inline]
pub(crate) fn aperture_gain(dx: f64, dy: f64, d: f64, a: f64) -> f64 {
    let half = a / 2.0;
    let xs = [(half + dx) / d, (half - dx) / d];
    let ys = [(half + dy) / d, (half - dy) / d];
    let mut sum = 0.0;
    for &x in &xs {
        for &y in &ys {
            sum += corner_term(x, y);
        }
    }
    sum / (4.0 * PI)
}

/// One corner of the intensity antiderivative, in units normalised by the height.
#[inline]
fn corner_term(x: f64, y: f64) -> f64 {
    let xy = x * y;
    let r = (x * x + y * y + 1.0).sqrt();
    xy / (3.0 * (y * y + 1.0) * r) + (2.0 / 3.0) * (xy / r).atan()
}

/// Per-element amplitudes `|a_n|` (source → element) and `|b_n|` (element → destination).
#[derive(Debug, Clone, PartialEq)]
pub struct EndpointAmplitudes {
    pub source: Vec<f64>,
    pub destination: Vec<f64>,
}

/// Maps each endpoint to `(d·sin η, 0, d·cos η)` in the panel frame (endpoints
/// at the array's height, lateral offset along the wall) and evaluates every element.
pub fn irs_endpoint_gain(
    geom_src: &RelativeGeometry,
    geom_dst: &RelativeGeometry,
    cfg: &ArrayConfig,
) -> Result<EndpointAmplitudes> {
    for g in [geom_src, geom_dst] {
        if !g.is_in_front() {
            return Err(Error::DegenerateGeometry(format!(
                "endpoint at angle {:.6} rad, distance {} is not in front of the panel",
                g.angle, g.distance
            )));
        }
    }
    Ok(EndpointAmplitudes {
        source: element_amplitudes(geom_src, cfg),
        destination: element_amplitudes(geom_dst, cfg),
    })
}

fn element_amplitudes(g: &RelativeGeometry, cfg: &ArrayConfig) -> Vec<f64> {
    let (sin, cos) = g.angle.sin_cos();
    let (tx, tz) = (g.distance * sin, g.distance * cos);
    let a = cfg.element_side();
    cfg.elements().map(|e| aperture_gain(e.x - tx, e.y, tz, a).sqrt()).collect()
}

/// Coherent SNR `(P/σ²)·(Σ |a_n||b_n|)²`, summed in index order.
pub fn snr_irs(p_tx_eff: f64, noise: f64, amps_a: &[f64], amps_b: &[f64]) -> Result<f64> {
    if amps_a.len() != amps_b.len() {
        return Err(Error::LengthMismatch(amps_a.len(), amps_b.len()));
    }
    if !(noise > 0.0) {
        return Err(Error::NonPositiveNoise(noise));
    }
    let coherent: f64 = amps_a.iter().zip(amps_b).map(|(a, b)| a * b).sum();
    Ok(p_tx_eff / noise * coherent * coherent)
}
