//! Command-line front end: experiment configuration, run orchestration and
//! persistence of plot-ready results.
//!
//! Exit codes: 0 success, 2 configuration error, 3 runtime blow-up,
//! 4 verification-suite failure.

pub mod commands;
pub mod config;
pub mod manifest;

use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_BLOWUP: i32 = 3;
pub const EXIT_SUITE: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "hypwave", version, about = "Spectral lab for the defocusing cubic wave equation on hyperbolic 3-space")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Configuration file (flat `key = value` lines).
    #[arg(long)]
    pub config: PathBuf,
    /// Output directory (default: $HYPWAVE_OUT or ./out).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Max parallel runs for sweeps.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    /// Seed override (takes precedence over the config).
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Integrate the cubic wave equation and write a diagnostic time series.
    Solve(CommonArgs),
    /// Run the frequency-truncation experiment (growth ledger + report).
    Truncation(CommonArgs),
    /// Tabulate a Morawetz weight family and validate its conditions.
    Weights(commands::weights::WeightsArgs),
    /// Run the functional-inequality verification suite.
    Inequalities(CommonArgs),
    /// Classify (and optionally probe) a Strichartz exponent triple.
    Strichartz(commands::strichartz::StrichartzArgs),
}

/// Resolve the output root: --out, then HYPWAVE_OUT, then ./out.
pub fn output_root(flag: &Option<PathBuf>) -> PathBuf {
    if let Some(dir) = flag {
        return dir.clone();
    }
    if let Ok(env_dir) = std::env::var("HYPWAVE_OUT") {
        if !env_dir.is_empty() {
            return PathBuf::from(env_dir);
        }
    }
    PathBuf::from("out")
}

/// Run a parsed command line, returning the process exit code.
pub fn run(cli: Cli) -> i32 {
    let outcome = match cli.command {
        Command::Solve(args) => commands::solve::run(&args),
        Command::Truncation(args) => commands::truncation::run(&args),
        Command::Weights(args) => commands::weights::run(&args),
        Command::Inequalities(args) => commands::inequalities::run(&args),
        Command::Strichartz(args) => commands::strichartz::run(&args),
    };
    match outcome {
        Ok(()) => EXIT_OK,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            failure.exit_code
        }
    }
}

/// A command failure carrying its exit code.
pub struct Failure {
    pub exit_code: i32,
    pub message: String,
}

impl Failure {
    pub fn config(message: impl Into<String>) -> Self {
        Failure {
            exit_code: EXIT_CONFIG,
            message: message.into(),
        }
    }

    pub fn suite(message: impl Into<String>) -> Self {
        Failure {
            exit_code: EXIT_SUITE,
            message: message.into(),
        }
    }

    pub fn from_core(err: hypwave_core::Error) -> Self {
        let exit_code = match err {
            hypwave_core::Error::BlowUp { .. } => EXIT_BLOWUP,
            _ => EXIT_CONFIG,
        };
        Failure {
            exit_code,
            message: err.to_string(),
        }
    }

    pub fn io(err: std::io::Error) -> Self {
        Failure {
            exit_code: EXIT_CONFIG,
            message: format!("i/o: {err}"),
        }
    }
}
