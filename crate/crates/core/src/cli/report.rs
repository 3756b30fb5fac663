//! Output documents and their table / CSV / JSON renderings.
//!
//! Machine formats carry full precision; numbers are written with the
//! shortest representation that round-trips, identically in CSV and JSON.
//! Tables round to three significant figures.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::config::{OutputFormat, SweepParam};
use crate::duplex::{Comparison, Constraint, FddSolution, TddSolution, Winner};
use crate::fading::{ChannelModel, MonteCarloReport};
use crate::model::SystemParams;

/// Exact CSV header of sweep output.
pub const SWEEP_CSV_HEADER: &str =
    "param,value,tau_star,rate_tdd_bps,beta_star,beta_cap,rate_fdd_bps,winner";

pub const SOLVE_CSV_HEADER: &str = "tau_star,p_d_tdd_watts,gamma_tdd,rate_tdd_bps,binding_tdd,\
beta_star,beta_cap,p_d_fdd_watts,gamma_fdd,rate_fdd_bps,binding_fdd,rate_ratio,winner";

pub const COMPARE_CSV_HEADER: &str = "rate_tdd_bps,rate_fdd_bps,rate_ratio,winner";

pub const MONTECARLO_CSV_HEADER: &str = "channel,n_blocks,seed,\
mean_rate_tdd_bps,p5_tdd_bps,p50_tdd_bps,p95_tdd_bps,\
mean_rate_fdd_bps,p5_fdd_bps,p50_fdd_bps,p95_fdd_bps";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRecord {
    pub rate_tdd: f64,
    pub rate_fdd: f64,
    pub rate_ratio: Option<f64>,
    pub winner: Winner,
}

impl From<&Comparison> for ComparisonRecord {
    fn from(c: &Comparison) -> Self {
        Self {
            rate_tdd: c.tdd.rate,
            rate_fdd: c.fdd.rate,
            rate_ratio: c.rate_ratio,
            winner: c.winner,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveDoc {
    pub params: SystemParams,
    pub tdd: TddSolution,
    pub fdd: FddSolution,
    pub comparison: ComparisonRecord,
}

impl SolveDoc {
    pub fn new(params: SystemParams, c: Comparison) -> Self {
        let comparison = ComparisonRecord::from(&c);
        Self {
            params,
            tdd: c.tdd,
            fdd: c.fdd,
            comparison,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareDoc {
    pub params: SystemParams,
    pub comparison: ComparisonRecord,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub param: SweepParam,
    pub value: f64,
    pub tdd: TddSolution,
    pub fdd: FddSolution,
    pub comparison: ComparisonRecord,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepDoc {
    pub params: SystemParams,
    pub sweep: Vec<ReportRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloDoc {
    pub params: SystemParams,
    pub channel: ChannelModel,
    pub montecarlo: MonteCarloReport,
}

/// Shortest round-trip form, matching serde_json.
fn num(x: f64) -> String {
    serde_json::to_string(&x).expect("finite float")
}

fn opt_num(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

fn labels(binding: &[Constraint]) -> String {
    binding
        .iter()
        .map(|c| c.label())
        .collect::<Vec<_>>()
        .join(";")
}

/// Rounds to three significant figures for display.
pub fn sig3(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let mag = x.abs();
    if !(1e-3..1e6).contains(&mag) {
        return format!("{x:.2e}");
    }
    let exp = mag.log10().floor() as i32;
    let decimals = (2 - exp).max(0) as usize;
    let scale = 10f64.powi(exp - 2);
    let rounded = (x / scale).round() * scale;
    format!("{rounded:.decimals$}")
}

fn kbps(rate: f64) -> String {
    format!("{} kbit/s", sig3(rate / 1e3))
}

fn to_json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("serializable document");
    s.push('\n');
    s
}

pub trait Render {
    fn table(&self) -> String;
    fn csv(&self) -> String;
    fn json(&self) -> String;

    fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Table => self.table(),
            OutputFormat::Csv => self.csv(),
            OutputFormat::Json => self.json(),
        }
    }
}

fn params_table(out: &mut String, p: &SystemParams) {
    let _ = writeln!(
        out,
        "noise {} W | p_max {} W | s_max {} W/Hz | w0 {} Hz | T {} s | h {} | g {}",
        sig3(p.sigma2),
        sig3(p.p_max),
        sig3(p.s_max),
        sig3(p.w0),
        sig3(p.t_frame),
        sig3(p.h_gain),
        sig3(p.g_gain)
    );
}

fn comparison_table(out: &mut String, c: &ComparisonRecord) {
    let ratio = c.rate_ratio.map(sig3).unwrap_or_else(|| "n/a".into());
    let _ = writeln!(
        out,
        "winner: {} (FDD/TDD rate ratio {ratio})",
        c.winner.label()
    );
}

impl Render for SolveDoc {
    fn table(&self) -> String {
        let mut out = String::new();
        params_table(&mut out, &self.params);
        let t = &self.tdd;
        let f = &self.fdd;
        let _ = writeln!(
            out,
            "scheme  fraction      p_d (W)  gamma   rate           binding"
        );
        let _ = writeln!(
            out,
            "TDD     tau*={:<7} {:<8} {:<7} {:<14} {}",
            sig3(t.tau_star),
            sig3(t.p_d),
            sig3(t.gamma),
            kbps(t.rate),
            labels(&t.binding)
        );
        let _ = writeln!(
            out,
            "FDD     beta*={:<6} {:<8} {:<7} {:<14} {} (beta cap {})",
            sig3(f.beta_star),
            sig3(f.p_d),
            sig3(f.gamma),
            kbps(f.rate),
            labels(&f.binding),
            sig3(f.beta_cap)
        );
        comparison_table(&mut out, &self.comparison);
        out
    }

    fn csv(&self) -> String {
        let t = &self.tdd;
        let f = &self.fdd;
        let row = [
            num(t.tau_star),
            num(t.p_d),
            num(t.gamma),
            num(t.rate),
            labels(&t.binding),
            num(f.beta_star),
            num(f.beta_cap),
            num(f.p_d),
            num(f.gamma),
            num(f.rate),
            labels(&f.binding),
            opt_num(self.comparison.rate_ratio),
            self.comparison.winner.label().to_string(),
        ];
        format!("{SOLVE_CSV_HEADER}\n{}\n", row.join(","))
    }

    fn json(&self) -> String {
        to_json(self)
    }
}

impl Render for CompareDoc {
    fn table(&self) -> String {
        let mut out = String::new();
        params_table(&mut out, &self.params);
        let _ = writeln!(
            out,
            "TDD {} | FDD {}",
            kbps(self.comparison.rate_tdd),
            kbps(self.comparison.rate_fdd)
        );
        comparison_table(&mut out, &self.comparison);
        out
    }

    fn csv(&self) -> String {
        let c = &self.comparison;
        format!(
            "{COMPARE_CSV_HEADER}\n{},{},{},{}\n",
            num(c.rate_tdd),
            num(c.rate_fdd),
            opt_num(c.rate_ratio),
            c.winner.label()
        )
    }

    fn json(&self) -> String {
        to_json(self)
    }
}

impl Render for SweepDoc {
    fn table(&self) -> String {
        let mut out = String::new();
        params_table(&mut out, &self.params);
        let _ = writeln!(
            out,
            "{:<8} {:<10} {:<7} {:<14} {:<7} {:<8} {:<14} winner",
            "param", "value", "tau*", "TDD rate", "beta*", "beta cap", "FDD rate"
        );
        for r in &self.sweep {
            let _ = writeln!(
                out,
                "{:<8} {:<10} {:<7} {:<14} {:<7} {:<8} {:<14} {}",
                r.param.name(),
                sig3(r.value),
                sig3(r.tdd.tau_star),
                kbps(r.tdd.rate),
                sig3(r.fdd.beta_star),
                sig3(r.fdd.beta_cap),
                kbps(r.fdd.rate),
                r.comparison.winner.label()
            );
        }
        out
    }

    fn csv(&self) -> String {
        let mut out = String::from(SWEEP_CSV_HEADER);
        out.push('\n');
        for r in &self.sweep {
            let row = [
                r.param.name().to_string(),
                num(r.value),
                num(r.tdd.tau_star),
                num(r.tdd.rate),
                num(r.fdd.beta_star),
                num(r.fdd.beta_cap),
                num(r.fdd.rate),
                r.comparison.winner.label().to_string(),
            ];
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    fn json(&self) -> String {
        to_json(self)
    }
}

fn channel_label(model: &ChannelModel) -> &'static str {
    match model.kind {
        crate::fading::ChannelKind::Deterministic => "deterministic",
        crate::fading::ChannelKind::Exponential => "exponential",
    }
}

impl Render for MonteCarloDoc {
    fn table(&self) -> String {
        let mut out = String::new();
        params_table(&mut out, &self.params);
        let m = &self.montecarlo;
        let _ = writeln!(
            out,
            "{} channel, {} blocks, seed {}",
            channel_label(&self.channel),
            m.n_blocks,
            m.seed
        );
        let _ = writeln!(
            out,
            "scheme  mean           p5             p50            p95"
        );
        for (name, mean, q) in [
            ("TDD", m.mean_rate_tdd, &m.quantiles_tdd),
            ("FDD", m.mean_rate_fdd, &m.quantiles_fdd),
        ] {
            let _ = writeln!(
                out,
                "{name:<7} {:<14} {:<14} {:<14} {}",
                kbps(mean),
                kbps(q.p5),
                kbps(q.p50),
                kbps(q.p95)
            );
        }
        out
    }

    fn csv(&self) -> String {
        let m = &self.montecarlo;
        let row = [
            channel_label(&self.channel).to_string(),
            m.n_blocks.to_string(),
            m.seed.to_string(),
            num(m.mean_rate_tdd),
            num(m.quantiles_tdd.p5),
            num(m.quantiles_tdd.p50),
            num(m.quantiles_tdd.p95),
            num(m.mean_rate_fdd),
            num(m.quantiles_fdd.p5),
            num(m.quantiles_fdd.p50),
            num(m.quantiles_fdd.p95),
        ];
        format!("{MONTECARLO_CSV_HEADER}\n{}\n", row.join(","))
    }

    fn json(&self) -> String {
        to_json(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_significant_figures() {
        assert_eq!(sig3(38.306), "38.3");
        assert_eq!(sig3(0.268_267), "0.268");
        assert_eq!(sig3(0.1), "0.100");
        assert_eq!(sig3(1000.0), "1000");
        assert_eq!(sig3(38_306.0), "38300");
        assert_eq!(sig3(17.649), "17.6");
        assert_eq!(sig3(0.0), "0");
        assert_eq!(sig3(1e-15), "1.00e-15");
    }

    #[test]
    fn numbers_round_trip() {
        for x in [1e-15, 0.1, 38_306.461_998_544_58, 1.0 / 3.0] {
            assert_eq!(num(x).parse::<f64>().unwrap(), x);
        }
    }
}
