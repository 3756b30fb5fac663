//! Command-line driver: loads a config, runs one command, renders the result.

pub mod config;
pub mod report;

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use thiserror::Error;

pub use config::{MonteCarloSpec, OutputFormat, OutputSpec, RunConfig, SweepParam, SweepSpec};
pub use report::{
    CompareDoc, ComparisonRecord, MonteCarloDoc, Render, ReportRow, SolveDoc, SweepDoc,
    SWEEP_CSV_HEADER,
};

use crate::duplex::{compare_with, SolveOptions};
use crate::fading::monte_carlo;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("infeasible parameters: {0}")]
    Infeasible(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    /// Process exit status: 1 for config and i/o problems, 2 for infeasible parameters.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Io(_) => 1,
            CliError::Infeasible(_) => 2,
        }
    }
}

impl From<crate::Error> for CliError {
    fn from(e: crate::Error) -> Self {
        CliError::Infeasible(e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Solve,
    Sweep,
    Compare,
    MonteCarlo,
}

/// Command-line values that take precedence over the config file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub format: Option<OutputFormat>,
    pub output: Option<PathBuf>,
    pub seed: Option<u64>,
    pub tol: Option<f64>,
}

pub fn load_config(path: &Path) -> Result<RunConfig, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    RunConfig::parse(&text, &path.display().to_string())
}

fn solve_options(tol: Option<f64>) -> Result<SolveOptions, CliError> {
    match tol {
        None => Ok(SolveOptions::default()),
        Some(tol) if tol.is_finite() && tol > 0.0 => Ok(SolveOptions { tol }),
        Some(tol) => Err(CliError::Config(format!(
            "--tol must be finite and > 0, got {tol}"
        ))),
    }
}

pub fn run_solve(cfg: &RunConfig, opts: &SolveOptions) -> Result<SolveDoc, CliError> {
    let comparison = compare_with(&cfg.params, opts)?;
    Ok(SolveDoc::new(cfg.params, comparison))
}

pub fn run_compare(cfg: &RunConfig, opts: &SolveOptions) -> Result<CompareDoc, CliError> {
    let comparison = compare_with(&cfg.params, opts)?;
    Ok(CompareDoc {
        params: cfg.params,
        comparison: ComparisonRecord::from(&comparison),
    })
}

pub fn run_sweep(cfg: &RunConfig, opts: &SolveOptions) -> Result<SweepDoc, CliError> {
    let sweep = cfg.sweep.as_ref().ok_or_else(|| {
        CliError::Config("sweep needs `sweep_param` and sweep values in the config".into())
    })?;
    let rows = sweep
        .values
        .par_iter()
        .map(|&value| {
            let params = sweep.parameter.apply(&cfg.params, value);
            let c = compare_with(&params, opts)?;
            let comparison = ComparisonRecord::from(&c);
            Ok(ReportRow {
                param: sweep.parameter,
                value,
                tdd: c.tdd,
                fdd: c.fdd,
                comparison,
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(SweepDoc {
        params: cfg.params,
        sweep: rows,
    })
}

pub fn run_montecarlo(cfg: &RunConfig, opts: &SolveOptions) -> Result<MonteCarloDoc, CliError> {
    let mc = cfg.montecarlo.as_ref().ok_or_else(|| {
        CliError::Config("montecarlo needs `mc_channel` and `mc_blocks` in the config".into())
    })?;
    let report = monte_carlo(&cfg.params, &mc.model, mc.n_blocks, mc.seed, opts)?;
    Ok(MonteCarloDoc {
        params: cfg.params,
        channel: mc.model,
        montecarlo: report,
    })
}

/// Runs `command` on an already parsed config and renders it.
pub fn render(command: Command, cfg: &RunConfig, tol: Option<f64>) -> Result<String, CliError> {
    let opts = solve_options(tol)?;
    let format = cfg.output.format;
    Ok(match command {
        Command::Solve => run_solve(cfg, &opts)?.render(format),
        Command::Compare => run_compare(cfg, &opts)?.render(format),
        Command::Sweep => run_sweep(cfg, &opts)?.render(format),
        Command::MonteCarlo => run_montecarlo(cfg, &opts)?.render(format),
    })
}

/// Loads the config at `path`, applies overrides, runs `command`, and writes
/// the output to the configured path or returns it for stdout.
pub fn execute(
    command: Command,
    path: &Path,
    overrides: &Overrides,
) -> Result<Option<String>, CliError> {
    let mut cfg = load_config(path)?;
    if let Some(format) = overrides.format {
        cfg.output.format = format;
    }
    if let Some(output) = &overrides.output {
        cfg.output.path = Some(output.clone());
    }
    if let (Some(seed), Some(mc)) = (overrides.seed, cfg.montecarlo.as_mut()) {
        mc.seed = seed;
    }
    let text = render(command, &cfg, overrides.tol)?;
    match &cfg.output.path {
        Some(out) => {
            std::fs::write(out, text)
                .map_err(|e| CliError::Io(format!("{}: {e}", out.display())))?;
            Ok(None)
        }
        None => Ok(Some(text)),
    }
}
