//! Rate-optimal resource splits for time-division and frequency-division
//! duplexing, and a head-to-head comparison of the two.
//!
//! TDD: the HAP radiates over the full band for a fraction `tau` of the
//! frame, then the user transmits for the rest. The delivered power is
//! `p_d = w0 * s` with `s <= s_max` and `p_d <= p_max`; the rate grows with
//! `p_d`, so `p_d = min(p_max, w0 * s_max)`.
//!
//! FDD: energy and data flow at the same time on disjoint sub-bands. The HAP
//! radiates at `s_max` over a fraction `beta` of the band, giving
//! `p_d = beta * w0 * s_max <= p_max`, hence `beta <= min(1, p_max / (w0 * s_max))`.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::model::{gamma_fdd, gamma_tdd, ObjectiveSpec, SystemParams};
use crate::optimizer::{maximize_concave, DEFAULT_TOL};

/// Relative rate difference below which the two schemes are called a tie.
pub const TIE_REL_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Constraint {
    /// TDD: `w0 * s_max` limits the downlink power.
    PsdCap,
    /// The HAP amplifier limit `p_max` is active.
    PowerCap,
    /// TDD: `tau` sits at 0 or 1.
    TimeUnitInterval,
    /// FDD: `beta` sits at 0 or 1.
    BandwidthUnitInterval,
    /// FDD: optimum strictly inside the feasible band split.
    Interior,
}

impl Constraint {
    pub fn label(self) -> &'static str {
        match self {
            Constraint::PsdCap => "psd_cap",
            Constraint::PowerCap => "power_cap",
            Constraint::TimeUnitInterval => "time_unit_interval",
            Constraint::BandwidthUnitInterval => "bandwidth_unit_interval",
            Constraint::Interior => "interior",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolveOptions {
    /// Optimizer tolerance on the resource fraction.
    pub tol: f64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self { tol: DEFAULT_TOL }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TddSolution {
    pub tau_star: f64,
    pub p_d: f64,
    pub s_implied: f64,
    pub gamma: f64,
    pub rate: f64,
    pub binding: Vec<Constraint>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FddSolution {
    pub beta_star: f64,
    pub s: f64,
    pub p_d: f64,
    pub beta_cap: f64,
    pub gamma: f64,
    pub rate: f64,
    pub binding: Vec<Constraint>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Winner {
    Tdd,
    Fdd,
    Tie,
}

impl Winner {
    pub fn label(self) -> &'static str {
        match self {
            Winner::Tdd => "tdd",
            Winner::Fdd => "fdd",
            Winner::Tie => "tie",
        }
    }

    pub fn between(rate_tdd: f64, rate_fdd: f64) -> Self {
        let scale = rate_tdd.abs().max(rate_fdd.abs());
        if (rate_fdd - rate_tdd).abs() <= TIE_REL_TOL * scale {
            Winner::Tie
        } else if rate_fdd > rate_tdd {
            Winner::Fdd
        } else {
            Winner::Tdd
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub tdd: TddSolution,
    pub fdd: FddSolution,
    /// FDD rate over TDD rate; `None` when the TDD rate is zero.
    pub rate_ratio: Option<f64>,
    pub winner: Winner,
}

pub fn solve_tdd(params: &SystemParams) -> Result<TddSolution> {
    solve_tdd_with(params, &SolveOptions::default())
}

pub fn solve_tdd_with(params: &SystemParams, opts: &SolveOptions) -> Result<TddSolution> {
    params.validate()?;
    let psd_limited = params.w0 * params.s_max;
    let p_d = params.p_max.min(psd_limited);
    let gamma = gamma_tdd(params, p_d);
    let objective = ObjectiveSpec::unit(gamma, params.w0)?;
    let best = maximize_concave(|x| objective.rate(x), 0.0, 1.0, opts.tol)?;

    let mut binding = Vec::new();
    if psd_limited <= params.p_max {
        binding.push(Constraint::PsdCap);
    }
    if params.p_max <= psd_limited {
        binding.push(Constraint::PowerCap);
    }
    if best.x_star == 0.0 || best.x_star == 1.0 {
        binding.push(Constraint::TimeUnitInterval);
    }

    Ok(TddSolution {
        tau_star: best.x_star,
        p_d,
        s_implied: p_d / params.w0,
        gamma,
        rate: best.f_star,
        binding,
    })
}

/// Largest feasible energy-band fraction, `min(1, p_max / (w0 * s_max))`.
pub fn fdd_beta_cap(params: &SystemParams) -> f64 {
    (params.p_max / (params.w0 * params.s_max)).min(1.0)
}

pub fn solve_fdd(params: &SystemParams) -> Result<FddSolution> {
    solve_fdd_with(params, &SolveOptions::default())
}

pub fn solve_fdd_with(params: &SystemParams, opts: &SolveOptions) -> Result<FddSolution> {
    params.validate()?;
    let s = params.s_max;
    let beta_cap = fdd_beta_cap(params);
    let gamma = gamma_fdd(params, s);
    let objective = ObjectiveSpec::new(gamma, params.w0, 0.0, beta_cap)?;
    let best = maximize_concave(|x| objective.rate(x), 0.0, beta_cap, opts.tol)?;
    let beta_star = best.x_star;

    let mut binding = Vec::new();
    if beta_star == beta_cap && beta_cap < 1.0 {
        binding.push(Constraint::PowerCap);
    }
    if beta_star == 0.0 || beta_star == 1.0 {
        binding.push(Constraint::BandwidthUnitInterval);
    }
    if binding.is_empty() {
        binding.push(Constraint::Interior);
    }

    Ok(FddSolution {
        beta_star,
        s,
        p_d: beta_star * params.w0 * s,
        beta_cap,
        gamma,
        rate: best.f_star,
        binding,
    })
}

pub fn compare(params: &SystemParams) -> Result<Comparison> {
    compare_with(params, &SolveOptions::default())
}

pub fn compare_with(params: &SystemParams, opts: &SolveOptions) -> Result<Comparison> {
    let tdd = solve_tdd_with(params, opts)?;
    let fdd = solve_fdd_with(params, opts)?;
    let rate_ratio = (tdd.rate > 0.0).then(|| fdd.rate / tdd.rate);
    let winner = Winner::between(tdd.rate, fdd.rate);
    Ok(Comparison {
        tdd,
        fdd,
        rate_ratio,
        winner,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::dbm_to_watts;

    fn scenario(p_max: f64, s_max: f64) -> SystemParams {
        let sigma2 = dbm_to_watts(-120.0).unwrap();
        SystemParams::new(sigma2, p_max, s_max, 1e4, 1e-3, 1e-6, 1e-6).unwrap()
    }

    #[test]
    fn tdd_equal_caps() {
        let sol = solve_tdd(&scenario(0.1, 1e-5)).unwrap();
        assert!((sol.tau_star - 0.27).abs() < 0.005, "{}", sol.tau_star);
        assert!((sol.rate - 38_300.0).abs() < 50.0, "{}", sol.rate);
        assert!(sol.binding.contains(&Constraint::PowerCap));
        assert!(sol.binding.contains(&Constraint::PsdCap));
    }

    #[test]
    fn tdd_reduced_power() {
        let sol = solve_tdd(&scenario(0.01, 1e-5)).unwrap();
        assert!((sol.tau_star - 0.42).abs() < 0.005, "{}", sol.tau_star);
        // The exact optimum is 17649.02 bit/s.
        assert!((sol.rate - 17_649.017).abs() < 0.01, "{}", sol.rate);
        assert_eq!(sol.binding, vec![Constraint::PowerCap]);
        assert!((sol.gamma - 10.0).abs() < 1e-9);
    }

    #[test]
    fn tdd_dead_uplink() {
        let params = scenario(0.1, 1e-5).with_gains(1e-6, 0.0);
        let sol = solve_tdd(&params).unwrap();
        assert_eq!((sol.gamma, sol.tau_star, sol.rate), (0.0, 0.0, 0.0));
        assert!(sol.binding.contains(&Constraint::TimeUnitInterval));
    }

    #[test]
    fn tdd_psd_limited() {
        let sol = solve_tdd(&scenario(1.0, 1e-5)).unwrap();
        assert_eq!(sol.binding, vec![Constraint::PsdCap]);
        assert!((sol.p_d - 0.1).abs() < 1e-15);
        assert!((sol.s_implied - 1e-5).abs() < 1e-20);
    }

    #[test]
    fn fdd_scenarios() {
        let sol = solve_fdd(&scenario(0.1, 1e-5)).unwrap();
        assert!((sol.beta_star - 0.27).abs() < 0.005);
        assert_eq!(sol.beta_cap, 1.0);
        assert_eq!(sol.binding, vec![Constraint::Interior]);

        let sol = solve_fdd(&scenario(0.1, 1e-4)).unwrap();
        assert_eq!(sol.beta_star, sol.beta_cap);
        assert!((sol.beta_cap - 0.1).abs() < 1e-12);
        assert_eq!(sol.binding, vec![Constraint::PowerCap]);
        assert!((sol.rate - 61_279.069).abs() < 0.01, "{}", sol.rate);
        assert!(sol.p_d <= 0.1 * (1.0 + 1e-12));

        let sol = solve_fdd(&scenario(0.01, 1e-5)).unwrap();
        assert_eq!(sol.beta_star, sol.beta_cap);
        assert!((sol.rate - 32_384.334).abs() < 0.01, "{}", sol.rate);
    }

    #[test]
    fn fdd_dead_uplink() {
        let params = scenario(0.1, 1e-4).with_gains(0.0, 1e-6);
        let sol = solve_fdd(&params).unwrap();
        assert_eq!((sol.beta_star, sol.rate), (0.0, 0.0));
        assert_eq!(sol.binding, vec![Constraint::BandwidthUnitInterval]);
    }

    #[test]
    fn comparison_winners() {
        let c = compare(&scenario(0.1, 1e-5)).unwrap();
        assert_eq!(c.winner, Winner::Tie);
        let c = compare(&scenario(0.1, 1e-4)).unwrap();
        assert_eq!(c.winner, Winner::Fdd);
        assert!(c.rate_ratio.unwrap() > 1.5);
        let c = compare(&scenario(0.01, 1e-5)).unwrap();
        assert_eq!(c.winner, Winner::Fdd);

        let c = compare(&scenario(0.1, 1e-5).with_gains(0.0, 0.0)).unwrap();
        assert_eq!(c.winner, Winner::Tie);
        assert_eq!(c.rate_ratio, None);
    }

    #[test]
    fn invalid_params_rejected() {
        let mut p = scenario(0.1, 1e-5);
        p.w0 = 0.0;
        assert!(solve_tdd(&p).is_err());
        assert!(solve_fdd(&p).is_err());
        assert!(compare(&p).is_err());
    }

    #[test]
    fn tie_tolerance() {
        assert_eq!(Winner::between(1.0, 1.0 + 5e-10), Winner::Tie);
        assert_eq!(Winner::between(1.0, 1.0 + 2e-9), Winner::Fdd);
        assert_eq!(Winner::between(1.0, 1.0 - 2e-9), Winner::Tdd);
        assert_eq!(Winner::between(0.0, 0.0), Winner::Tie);
    }
}
