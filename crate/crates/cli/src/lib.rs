//! Command-line driver: reads scenario and bound-check configs, runs them on
//! the core library and writes CSV results.
//!
//! Exit codes: 0 success, 1 a bound was violated or a claim not confirmed,
//! 2 configuration or output error, 3 infeasible model parameters.

mod commands;
pub mod config;
pub mod error;
mod output;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use error::{CliError, CliResult};

#[derive(Debug, Parser)]
#[command(name = "mvbandit", version, about = "Mean-variance bandit experiments")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Config file (TOML).
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Output directory, created if absent.
    #[arg(long, value_name = "DIR")]
    pub out: Option<PathBuf>,
    /// Root seed; overrides any seed in the config file.
    #[arg(long, env = "MVBANDIT_SEED", value_name = "U64")]
    pub seed: Option<u64>,
    /// Replication count override.
    #[arg(long, value_name = "N")]
    pub replications: Option<u64>,
    /// Worker threads; 0 or absent uses all available cores.
    #[arg(long, value_name = "N")]
    pub jobs: Option<usize>,
    /// Overwrite existing result files.
    #[arg(long)]
    pub force: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run every scenario in a catalog and write `<name>_regret.csv`.
    Simulate(CommonArgs),
    /// As `simulate`, plus a fit of proxy regret against ln T in `<name>_fit.csv`.
    RegretCurve(CommonArgs),
    /// Check tail, stopping-time and pull-count bounds by Monte Carlo.
    VerifyBounds(CommonArgs),
    /// Two-step adaptive policy against the best single arm.
    Counterexample {
        #[command(flatten)]
        common: CommonArgs,
        /// Switch arms when the first reward is at least this value.
        #[arg(long, default_value_t = mvbandit_core::experiments::DEFAULT_THRESHOLD, allow_negative_numbers = true)]
        threshold: f64,
    },
    /// Regret scaling on worst-case instance pairs; writes `minimax.csv`.
    Minimax(CommonArgs),
    /// Write the built-in scenarios to `catalog.toml`.
    Catalog(CommonArgs),
}

/// Runs a parsed command, writing human-readable progress to `stdout`.
pub fn run(cli: Cli, stdout: &mut dyn Write) -> CliResult<()> {
    match cli.command {
        Command::Simulate(c) => commands::simulate(&c, false, stdout),
        Command::RegretCurve(c) => commands::simulate(&c, true, stdout),
        Command::VerifyBounds(c) => commands::verify_bounds(&c, stdout),
        Command::Counterexample { common, threshold } => {
            commands::counterexample(&common, threshold, stdout)
        }
        Command::Minimax(c) => commands::minimax(&c, stdout),
        Command::Catalog(c) => commands::catalog(&c, stdout),
    }
}
