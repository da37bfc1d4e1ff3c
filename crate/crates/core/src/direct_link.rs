//! Direct source → destination line-of-sight SNR.
//!
//! No direct-path model is pinned by the reference setup, so two are offered.
//! Either one only serves as the relay feasibility ceiling.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Point2;
use crate::irs_channel::ArrayConfig;
use crate::mr_channel::relay_gain;
use crate::radio::RadioConfig;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DirectLinkModel {
    /// Friis budget between the source antenna and a receive antenna of gain `rx_gain_dbi`.
    Friis,
    /// The destination receives with the same N-element aperture the relay
    /// uses, at boresight.
    #[default]
    Aperture,
}

impl DirectLinkModel {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Friis => "friis",
            Self::Aperture => "aperture",
        }
    }
}

/// Friis SNR `P·g_tx·g_rx·(λ / 4πd)² / σ²`.
pub fn snr_direct_los(src: &Point2, dst: &Point2, radio: &RadioConfig) -> Result<f64> {
    let d = separation(src, dst)?;
    let path = radio.wavelength_m / (4.0 * PI * d);
    Ok(radio.tx_power_eff_w() * radio.rx_gain() * path * path / radio.noise_power_w())
}

/// Direct SNR with the destination using an `array`-sized aperture facing the source.
pub fn snr_direct_aperture(
    src: &Point2,
    dst: &Point2,
    radio: &RadioConfig,
    array: &ArrayConfig,
) -> Result<f64> {
    let d = separation(src, dst)?;
    Ok(radio.tx_power_eff_w() * relay_gain(d, 0.0, array)? / radio.noise_power_w())
}

/// Direct SNR under the model selected in `radio.direct_link`.
pub fn direct_ceiling(
    src: &Point2,
    dst: &Point2,
    radio: &RadioConfig,
    array: &ArrayConfig,
) -> Result<f64> {
    match radio.direct_link {
        DirectLinkModel::Friis => snr_direct_los(src, dst, radio),
        DirectLinkModel::Aperture => snr_direct_aperture(src, dst, radio, array),
    }
}

fn separation(src: &Point2, dst: &Point2) -> Result<f64> {
    let d = src.distance(dst);
    if !(d > 0.0) {
        return Err(Error::DegenerateGeometry("source and destination coincide".into()));
    }
    Ok(d)
}
