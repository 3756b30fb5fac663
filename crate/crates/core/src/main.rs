use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use wpcn::cli::{execute, Command, OutputFormat, Overrides};

/// Optimal TDD/FDD resource splits for a wireless-powered uplink.
#[derive(Parser)]
#[command(name = "wpcn", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    /// Output format.
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Monte-Carlo seed, overriding `mc_seed`.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Optimizer tolerance on the resource fraction.
    #[arg(long, global = true)]
    tol: Option<f64>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Solve both schemes and compare them.
    Solve { config: PathBuf },
    /// Solve both schemes along one swept parameter.
    Sweep { config: PathBuf },
    /// Report only the TDD/FDD comparison.
    Compare { config: PathBuf },
    /// Re-optimize both schemes over random fading blocks.
    Montecarlo { config: PathBuf },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let (command, config) = match cli.command {
        Cmd::Solve { config } => (Command::Solve, config),
        Cmd::Sweep { config } => (Command::Sweep, config),
        Cmd::Compare { config } => (Command::Compare, config),
        Cmd::Montecarlo { config } => (Command::MonteCarlo, config),
    };
    let overrides = Overrides {
        format: cli.format,
        output: cli.output,
        seed: cli.seed,
        tol: cli.tol,
    };
    match execute(command, &config, &overrides) {
        Ok(Some(text)) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Ok(None) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("wpcn: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
