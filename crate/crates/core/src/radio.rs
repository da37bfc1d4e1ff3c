//! Radio parameters and the derived power/noise budget.

use serde::{Deserialize, Serialize};

use crate::direct_link::DirectLinkModel;
use crate::error::{Error, Result};
use crate::from_db;

/// Thermal noise density at room temperature, dBm/Hz.
pub const THERMAL_NOISE_DBM_PER_HZ: f64 = -174.0;

/// Carrier, noise and power parameters shared by every link model.
///
/// Defaults are the 30 GHz indoor setup: λ = 0.01 m, 1.76 GHz bandwidth,
/// 6 dB noise figure and a 6 dBi source antenna. The absolute transmit power
/// is not pinned by the reference setup and defaults to 0 dBm; SNR differences
/// between technologies do not depend on it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RadioConfig {
    /// Informational; the channel models use `wavelength_m` directly.
    pub carrier_hz: f64,
    pub wavelength_m: f64,
    pub bandwidth_hz: f64,
    pub noise_figure_db: f64,
    pub tx_power_dbm: f64,
    /// Relay transmit power. `None` means "same as the source".
    pub relay_power_dbm: Option<f64>,
    pub tx_gain_dbi: f64,
    pub rx_gain_dbi: f64,
    /// Model behind the relay feasibility ceiling.
    pub direct_link: DirectLinkModel,
}

impl Default for RadioConfig {
    fn default() -> Self {
        Self {
            carrier_hz: 30e9,
            wavelength_m: 0.01,
            bandwidth_hz: 1.76e9,
            noise_figure_db: 6.0,
            tx_power_dbm: 0.0,
            relay_power_dbm: None,
            tx_gain_dbi: 6.0,
            rx_gain_dbi: 0.0,
            direct_link: DirectLinkModel::default(),
        }
    }
}

impl RadioConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("wavelength_m", self.wavelength_m),
            ("bandwidth_hz", self.bandwidth_hz),
            ("carrier_hz", self.carrier_hz),
        ];
        for (key, v) in positive {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidConfig(format!("radio.{key} must be positive, got {v}")));
            }
        }
        let finite = [
            ("noise_figure_db", self.noise_figure_db),
            ("tx_power_dbm", self.tx_power_dbm),
            ("tx_gain_dbi", self.tx_gain_dbi),
            ("rx_gain_dbi", self.rx_gain_dbi),
            ("relay_power_dbm", self.relay_power_dbm.unwrap_or(0.0)),
        ];
        for (key, v) in finite {
            if !v.is_finite() {
                return Err(Error::InvalidConfig(format!("radio.{key} must be finite")));
            }
        }
        Ok(())
    }

    /// Noise power `-174 + 10 log10(B) + F` in dBm.
    pub fn noise_power_dbm(&self) -> f64 {
        THERMAL_NOISE_DBM_PER_HZ + 10.0 * self.bandwidth_hz.log10() + self.noise_figure_db
    }

    pub fn noise_power_w(&self) -> f64 {
        dbm_to_watt(self.noise_power_dbm())
    }

    pub fn tx_gain(&self) -> f64 {
        from_db(self.tx_gain_dbi)
    }

    pub fn rx_gain(&self) -> f64 {
        from_db(self.rx_gain_dbi)
    }

    pub fn tx_power_w(&self) -> f64 {
        dbm_to_watt(self.tx_power_dbm)
    }

    pub fn relay_power_w(&self) -> f64 {
        dbm_to_watt(self.relay_power_dbm.unwrap_or(self.tx_power_dbm))
    }

    /// Source power including the transmit antenna gain. Applied identically
    /// to the IRS, relay and direct links.
    pub fn tx_power_eff_w(&self) -> f64 {
        self.tx_power_w() * self.tx_gain()
    }

    pub fn relay_power_eff_w(&self) -> f64 {
        self.relay_power_w() * self.tx_gain()
    }

    /// Default IRS/MR element area `(λ/4)²`.
    pub fn default_element_area(&self) -> f64 {
        (self.wavelength_m / 4.0).powi(2)
    }
}

pub fn dbm_to_watt(dbm: f64) -> f64 {
    from_db(dbm) * 1e-3
}

pub fn watt_to_dbm(w: f64) -> f64 {
    crate::to_db(w * 1e3)
}
