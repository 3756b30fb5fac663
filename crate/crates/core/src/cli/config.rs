//! Run configuration: a flat TOML document whose keys carry their units.
//!
//! ```toml
//! sigma2_dbm     = -120.0      # or sigma2_watts, never both
//! p_max_watts    = 0.1
//! s_max_w_per_hz = 1e-5
//! w0_hz          = 1e4
//! t_frame_s      = 1e-3
//! h_gain         = 1e-6
//! g_gain         = 1e-6
//!
//! # sweep: either an explicit list ...
//! sweep_param  = "s_max"
//! sweep_values = [1e-5, 1e-4]
//! # ... or a range
//! # sweep_start = 1e-6
//! # sweep_stop = 1e-3
//! # sweep_n = 20
//! # sweep_spacing = "log"
//!
//! mc_channel = "exponential"   # or "deterministic"
//! mc_blocks  = 10000
//! mc_seed    = 42
//!
//! format = "table"             # table | csv | json
//! output = "out.csv"
//! ```

use std::fmt;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use super::CliError;
use crate::fading::{ChannelKind, ChannelModel};
use crate::model::{dbm_to_watts, SystemParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Table,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepParam {
    PMax,
    SMax,
    W0,
    Sigma2,
    HGain,
    GGain,
}

impl SweepParam {
    pub fn name(self) -> &'static str {
        match self {
            SweepParam::PMax => "p_max",
            SweepParam::SMax => "s_max",
            SweepParam::W0 => "w0",
            SweepParam::Sigma2 => "sigma2",
            SweepParam::HGain => "h_gain",
            SweepParam::GGain => "g_gain",
        }
    }

    /// Copy of `base` with this parameter set to `value`.
    pub fn apply(self, base: &SystemParams, value: f64) -> SystemParams {
        let mut p = *base;
        match self {
            SweepParam::PMax => p.p_max = value,
            SweepParam::SMax => p.s_max = value,
            SweepParam::W0 => p.w0 = value,
            SweepParam::Sigma2 => p.sigma2 = value,
            SweepParam::HGain => p.h_gain = value,
            SweepParam::GGain => p.g_gain = value,
        }
        p
    }
}

impl fmt::Display for SweepParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    Linear,
    Log,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub parameter: SweepParam,
    pub values: Vec<f64>,
}

impl SweepSpec {
    pub fn from_range(
        parameter: SweepParam,
        start: f64,
        stop: f64,
        n: usize,
        spacing: Spacing,
    ) -> Result<Self, String> {
        if n < 2 {
            return Err(format!("sweep_n must be >= 2, got {n}"));
        }
        if !(start > 0.0 && stop > 0.0 && start.is_finite() && stop.is_finite()) {
            return Err(format!(
                "sweep range must be positive and finite, got {start}..{stop}"
            ));
        }
        let last = (n - 1) as f64;
        let values = (0..n)
            .map(|i| {
                let t = i as f64 / last;
                match (i, spacing) {
                    (0, _) => start,
                    (i, _) if i == n - 1 => stop,
                    (_, Spacing::Linear) => start + (stop - start) * t,
                    (_, Spacing::Log) => (start.ln() + (stop.ln() - start.ln()) * t).exp(),
                }
            })
            .collect();
        Ok(Self { parameter, values })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloSpec {
    pub model: ChannelModel,
    pub n_blocks: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputSpec {
    pub format: OutputFormat,
    pub path: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub params: SystemParams,
    pub sweep: Option<SweepSpec>,
    pub montecarlo: Option<MonteCarloSpec>,
    pub output: OutputSpec,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    sigma2_dbm: Option<f64>,
    sigma2_watts: Option<f64>,
    p_max_watts: f64,
    s_max_w_per_hz: f64,
    w0_hz: f64,
    t_frame_s: f64,
    h_gain: f64,
    g_gain: f64,

    sweep_param: Option<SweepParam>,
    sweep_values: Option<Vec<f64>>,
    sweep_start: Option<f64>,
    sweep_stop: Option<f64>,
    sweep_n: Option<usize>,
    sweep_spacing: Option<Spacing>,

    mc_channel: Option<ChannelKind>,
    mc_blocks: Option<usize>,
    mc_seed: Option<u64>,

    format: Option<OutputFormat>,
    output: Option<PathBuf>,
}

/// 1-based line holding `key = ...`, if any.
fn line_of(text: &str, key: &str) -> Option<usize> {
    text.lines()
        .position(|line| {
            line.trim_start()
                .strip_prefix(key)
                .is_some_and(|rest| rest.trim_start().starts_with('='))
        })
        .map(|i| i + 1)
}

impl RunConfig {
    /// Parses a config document. `origin` names the source in diagnostics.
    pub fn parse(text: &str, origin: &str) -> Result<Self, CliError> {
        let raw: RawConfig = toml::from_str(text)
            .map_err(|e| CliError::Config(format!("{origin}: {}", e.to_string().trim_end())))?;

        let at = |key: &str, msg: String| -> CliError {
            match line_of(text, key) {
                Some(line) => CliError::Config(format!("{origin}:{line}: {msg}")),
                None => CliError::Config(format!("{origin}: {msg}")),
            }
        };

        let sigma2 = match (raw.sigma2_dbm, raw.sigma2_watts) {
            (Some(_), Some(_)) => {
                return Err(at(
                    "sigma2_watts",
                    "give exactly one of `sigma2_dbm` and `sigma2_watts`, not both".into(),
                ))
            }
            (None, None) => {
                return Err(CliError::Config(format!(
                    "{origin}: missing noise power: set `sigma2_dbm` or `sigma2_watts`"
                )))
            }
            (Some(dbm), None) => dbm_to_watts(dbm).map_err(|e| at("sigma2_dbm", e.to_string()))?,
            (None, Some(w)) => w,
        };

        let params = SystemParams {
            sigma2,
            p_max: raw.p_max_watts,
            s_max: raw.s_max_w_per_hz,
            w0: raw.w0_hz,
            t_frame: raw.t_frame_s,
            h_gain: raw.h_gain,
            g_gain: raw.g_gain,
        };
        params
            .validate()
            .map_err(|e| CliError::Infeasible(format!("{origin}: {e}")))?;

        let sweep = match raw.sweep_param {
            None => {
                let stray = [
                    ("sweep_values", raw.sweep_values.is_some()),
                    ("sweep_start", raw.sweep_start.is_some()),
                    ("sweep_stop", raw.sweep_stop.is_some()),
                    ("sweep_n", raw.sweep_n.is_some()),
                    ("sweep_spacing", raw.sweep_spacing.is_some()),
                ];
                if let Some((key, _)) = stray.iter().find(|(_, set)| *set) {
                    return Err(at(key, format!("`{key}` requires `sweep_param`")));
                }
                None
            }
            Some(parameter) => {
                let spec = match (
                    raw.sweep_values,
                    raw.sweep_start,
                    raw.sweep_stop,
                    raw.sweep_n,
                ) {
                    (Some(values), None, None, None) => {
                        if raw.sweep_spacing.is_some() {
                            return Err(at(
                                "sweep_spacing",
                                "`sweep_spacing` only applies to a sweep range".into(),
                            ));
                        }
                        SweepSpec { parameter, values }
                    }
                    (None, Some(start), Some(stop), Some(n)) => SweepSpec::from_range(
                        parameter,
                        start,
                        stop,
                        n,
                        raw.sweep_spacing.unwrap_or(Spacing::Linear),
                    )
                    .map_err(|msg| at("sweep_start", msg))?,
                    _ => {
                        return Err(at(
                            "sweep_param",
                            "sweep needs either `sweep_values` or all of `sweep_start`, `sweep_stop`, `sweep_n`".into(),
                        ))
                    }
                };
                if spec.values.is_empty() {
                    return Err(at("sweep_values", "`sweep_values` is empty".into()));
                }
                if let Some(bad) = spec.values.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
                    return Err(at(
                        "sweep_values",
                        format!("sweep values must be positive and finite, got {bad}"),
                    ));
                }
                Some(spec)
            }
        };

        let montecarlo = match (raw.mc_channel, raw.mc_blocks, raw.mc_seed) {
            (None, None, None) => None,
            (Some(kind), Some(n_blocks), seed) => {
                if n_blocks == 0 {
                    return Err(at("mc_blocks", "`mc_blocks` must be >= 1".into()));
                }
                let model = ChannelModel::new(kind, params.h_gain, params.g_gain)
                    .map_err(|e| CliError::Infeasible(format!("{origin}: {e}")))?;
                Some(MonteCarloSpec {
                    model,
                    n_blocks,
                    seed: seed.unwrap_or(0),
                })
            }
            (None, _, _) => {
                return Err(CliError::Config(format!(
                    "{origin}: Monte-Carlo settings need `mc_channel`"
                )))
            }
            (Some(_), None, _) => {
                return Err(at("mc_channel", "`mc_channel` requires `mc_blocks`".into()))
            }
        };

        Ok(Self {
            params,
            sweep,
            montecarlo,
            output: OutputSpec {
                format: raw.format.unwrap_or(OutputFormat::Table),
                path: raw.output,
            },
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const BASE: &str = "\
sigma2_dbm = -120.0
p_max_watts = 0.1
s_max_w_per_hz = 1e-5
w0_hz = 10000
t_frame_s = 1e-3
h_gain = 1e-6
g_gain = 1e-6
";

    fn parse(extra: &str) -> Result<RunConfig, CliError> {
        RunConfig::parse(&format!("{BASE}{extra}"), "test.toml")
    }

    #[test]
    fn parses_base() {
        let cfg = parse("").unwrap();
        assert!((cfg.params.sigma2 - 1e-15).abs() < 1e-27);
        assert_eq!(cfg.params.w0, 1e4);
        assert!(cfg.sweep.is_none() && cfg.montecarlo.is_none());
        assert_eq!(cfg.output.format, OutputFormat::Table);
    }

    #[test]
    fn watts_noise_key() {
        let text = BASE.replace("sigma2_dbm = -120.0", "sigma2_watts = 2e-15");
        let cfg = RunConfig::parse(&text, "x").unwrap();
        assert_eq!(cfg.params.sigma2, 2e-15);
    }

    #[test]
    fn both_noise_keys_rejected_with_line() {
        let err = parse("sigma2_watts = 1e-15\n").unwrap_err();
        assert_eq!(err.exit_code(), 1);
        assert!(err.to_string().contains("test.toml:8:"), "{err}");
    }

    #[test]
    fn missing_key_is_named() {
        let text = BASE.replace("w0_hz = 10000\n", "");
        let err = RunConfig::parse(&text, "x").unwrap_err();
        assert_eq!(err.exit_code(), 1);
        assert!(err.to_string().contains("w0_hz"), "{err}");
        assert!(err.to_string().contains("line"), "{err}");
    }

    #[test]
    fn unknown_key_rejected() {
        let err = parse("bandwidth = 3\n").unwrap_err();
        assert_eq!(err.exit_code(), 1);
        assert!(err.to_string().contains("bandwidth"), "{err}");
        assert!(err.to_string().contains("line 8"), "{err}");
    }

    #[test]
    fn zero_bandwidth_is_infeasible() {
        let text = BASE.replace("w0_hz = 10000", "w0_hz = 0");
        let err = RunConfig::parse(&text, "x").unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn sweep_list_and_range() {
        let cfg = parse("sweep_param = \"s_max\"\nsweep_values = [1e-5, 1e-4]\n").unwrap();
        let sweep = cfg.sweep.unwrap();
        assert_eq!(sweep.parameter, SweepParam::SMax);
        assert_eq!(sweep.values, vec![1e-5, 1e-4]);

        let cfg = parse(
            "sweep_param = \"p_max\"\nsweep_start = 1e-3\nsweep_stop = 1.0\nsweep_n = 4\nsweep_spacing = \"log\"\n",
        )
        .unwrap();
        let v = cfg.sweep.unwrap().values;
        assert_eq!(v.len(), 4);
        assert_eq!((v[0], v[3]), (1e-3, 1.0));
        assert!((v[1] - 1e-2).abs() < 1e-15 && (v[2] - 1e-1).abs() < 1e-14);

        let cfg = parse("sweep_param = \"w0\"\nsweep_start = 1.0\nsweep_stop = 3.0\nsweep_n = 3\n")
            .unwrap();
        assert_eq!(cfg.sweep.unwrap().values, vec![1.0, 2.0, 3.0]);
    }

    #[test]
    fn sweep_errors() {
        assert!(parse("sweep_param = \"s_max\"\n").is_err());
        assert!(parse("sweep_param = \"s_max\"\nsweep_values = [1.0, -1.0]\n").is_err());
        assert!(parse("sweep_param = \"bogus\"\nsweep_values = [1.0]\n").is_err());
        assert!(parse("sweep_values = [1.0]\n").is_err());
        assert!(parse(
            "sweep_param = \"s_max\"\nsweep_start = 1.0\nsweep_stop = 2.0\nsweep_n = 1\n"
        )
        .is_err());
    }

    #[test]
    fn montecarlo_section() {
        let cfg = parse("mc_channel = \"exponential\"\nmc_blocks = 100\nmc_seed = 9\n").unwrap();
        let mc = cfg.montecarlo.unwrap();
        assert_eq!(mc.model.kind, ChannelKind::Exponential);
        assert_eq!((mc.n_blocks, mc.seed), (100, 9));
        assert_eq!(mc.model.mean_h, 1e-6);

        assert!(parse("mc_blocks = 100\n").is_err());
        assert!(parse("mc_channel = \"deterministic\"\n").is_err());
        assert!(parse("mc_channel = \"deterministic\"\nmc_blocks = 0\n").is_err());
    }
}
