//! Physical model of a single-user wireless-powered link: one hybrid access
//! point (HAP) that beams energy downlink and one user that spends the
//! harvested energy on an uplink transmission.
//!
//! All quantities are SI: watts, hertz, seconds, joules, bits per second.
//! The noise power `sigma2` is referred to the full bandwidth `w0`; a receiver
//! occupying a fraction of the band sees a proportionally smaller noise power.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Parameters shared by both duplexing schemes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SystemParams {
    /// Full-band noise power (W).
    pub sigma2: f64,
    /// HAP power amplifier limit (W).
    pub p_max: f64,
    /// Regulatory power spectral density limit (W/Hz).
    pub s_max: f64,
    /// Total bandwidth (Hz).
    pub w0: f64,
    /// Frame length (s). Cancels out of every rate expression; only energy
    /// bookkeeping uses it.
    pub t_frame: f64,
    /// Downlink channel power gain.
    pub h_gain: f64,
    /// Uplink channel power gain.
    pub g_gain: f64,
}

impl SystemParams {
    pub fn new(
        sigma2: f64,
        p_max: f64,
        s_max: f64,
        w0: f64,
        t_frame: f64,
        h_gain: f64,
        g_gain: f64,
    ) -> Result<Self> {
        let params = Self {
            sigma2,
            p_max,
            s_max,
            w0,
            t_frame,
            h_gain,
            g_gain,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("sigma2", self.sigma2),
            ("p_max", self.p_max),
            ("s_max", self.s_max),
            ("w0", self.w0),
            ("t_frame", self.t_frame),
        ];
        for (field, value) in positive {
            if !value.is_finite() || value <= 0.0 {
                return Err(Error::InvalidParams {
                    field,
                    reason: format!("must be finite and > 0, got {value}"),
                });
            }
        }
        for (field, value) in [("h_gain", self.h_gain), ("g_gain", self.g_gain)] {
            if !value.is_finite() || value < 0.0 {
                return Err(Error::InvalidParams {
                    field,
                    reason: format!("must be finite and >= 0, got {value}"),
                });
            }
        }
        Ok(())
    }

    /// Copy of `self` with the channel gains replaced.
    pub fn with_gains(&self, h_gain: f64, g_gain: f64) -> Self {
        Self {
            h_gain,
            g_gain,
            ..*self
        }
    }
}

/// Converts a power level in dBm to watts.
pub fn dbm_to_watts(level_dbm: f64) -> Result<f64> {
    if !level_dbm.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "power level must be finite, got {level_dbm} dBm"
        )));
    }
    Ok(10f64.powf((level_dbm - 30.0) / 10.0))
}

/// Effective SNR of the time-split scheme: the whole band carries `p_d`
/// during the energy phase.
pub fn gamma_tdd(params: &SystemParams, p_d: f64) -> f64 {
    params.g_gain * params.h_gain * p_d / params.sigma2
}

/// Effective SNR of the band-split scheme at transmit PSD `s`.
pub fn gamma_fdd(params: &SystemParams, s: f64) -> f64 {
    params.g_gain * params.h_gain * s * params.w0 / params.sigma2
}

/// The rate objective shared by both schemes,
/// `f(x) = (1 - x) * w0 * log2(1 + gamma * x / (1 - x))`,
/// where `x` is the fraction of the frame (time split) or of the band
/// (frequency split) devoted to energy transfer.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ObjectiveSpec {
    pub gamma: f64,
    pub w0: f64,
    pub x_lo: f64,
    pub x_hi: f64,
}

impl ObjectiveSpec {
    pub fn new(gamma: f64, w0: f64, x_lo: f64, x_hi: f64) -> Result<Self> {
        if !gamma.is_finite() || gamma < 0.0 {
            return Err(Error::InvalidArgument(format!(
                "gamma must be finite and >= 0, got {gamma}"
            )));
        }
        if !w0.is_finite() || w0 <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "w0 must be finite and > 0, got {w0}"
            )));
        }
        check_fraction("x_lo", x_lo)?;
        check_fraction("x_hi", x_hi)?;
        if x_lo > x_hi {
            return Err(Error::EmptyInterval { x_lo, x_hi });
        }
        Ok(Self {
            gamma,
            w0,
            x_lo,
            x_hi,
        })
    }

    /// Objective on the full unit interval.
    pub fn unit(gamma: f64, w0: f64) -> Result<Self> {
        Self::new(gamma, w0, 0.0, 1.0)
    }

    /// Evaluates the rate at `x`, rejecting fractions outside `[0, 1]`.
    pub fn throughput(&self, x: f64) -> Result<f64> {
        check_fraction("x", x)?;
        Ok(self.rate(x))
    }

    /// Unchecked evaluation for callers that already hold `x` in `[0, 1]`.
    pub(crate) fn rate(&self, x: f64) -> f64 {
        // x = 1 is 0/0 in closed form; the continuous extension is 0.
        if x >= 1.0 || x <= 0.0 {
            return 0.0;
        }
        let keep = 1.0 - x;
        keep * self.w0 * (self.gamma * x / keep).ln_1p() / std::f64::consts::LN_2
    }
}

/// Free-function form of [`ObjectiveSpec::throughput`].
pub fn throughput(obj: &ObjectiveSpec, x: f64) -> Result<f64> {
    obj.throughput(x)
}

fn check_fraction(name: &'static str, value: f64) -> Result<()> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(Error::FractionOutOfRange { name, value })
    }
}

/// Energy bookkeeping for one frame.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyAccount {
    /// Harvested energy (J).
    pub epsilon: f64,
    /// User uplink transmit power (W).
    pub p_u: f64,
    /// HAP downlink transmit power (W).
    pub p_d: f64,
}

/// Harvest-then-transmit: energy is collected for `tau * T` and spent over
/// the remaining `(1 - tau) * T`.
pub fn energy_account_tdd(params: &SystemParams, p_d: f64, tau: f64) -> Result<EnergyAccount> {
    check_fraction("tau", tau)?;
    if tau == 1.0 {
        return Err(Error::InvalidArgument(
            "tau = 1 leaves no time for the uplink".into(),
        ));
    }
    if !p_d.is_finite() || p_d < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "p_d must be finite and >= 0, got {p_d}"
        )));
    }
    let epsilon = tau * params.t_frame * p_d * params.h_gain;
    let p_u = epsilon / ((1.0 - tau) * params.t_frame);
    Ok(EnergyAccount { epsilon, p_u, p_d })
}

/// Energy transfer and uplink run concurrently on disjoint sub-bands; the
/// energy band is `beta * w0` wide at PSD `s`.
pub fn energy_account_fdd(params: &SystemParams, beta: f64, s: f64) -> Result<EnergyAccount> {
    check_fraction("beta", beta)?;
    if !s.is_finite() || s < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "s must be finite and >= 0, got {s}"
        )));
    }
    let p_d = beta * params.w0 * s;
    let epsilon = params.t_frame * p_d * params.h_gain;
    let p_u = epsilon / params.t_frame;
    Ok(EnergyAccount { epsilon, p_u, p_d })
}
