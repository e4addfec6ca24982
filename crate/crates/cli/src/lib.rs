//! Batch command-line frontend for `midhankel`.
//!
//! Exit status: 0 on success, 1 on invalid input, 2 when a verification
//! check fails.

pub mod battery;
pub mod commands;
pub mod config;
mod table;

use clap::{Parser, Subcommand};

use crate::battery::ExactMoments;
use crate::config::{Flags, RunConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_VERIFICATION: i32 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error(transparent)]
    Core(#[from] midhankel::Error),
    #[error("output: {0}")]
    Output(String),
}

#[derive(Debug, Parser)]
#[command(name = "midhankel", version, about = "Hankel operators on the Fock space, computed exactly")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub flags: Flags,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Table of ||H e_n||^2 for the symbol z^s
    Norms,
    /// Boundedness and compactness verdicts for a polynomial symbol
    Classify,
    /// Minimal-norm solution of dbar^N u = f
    SolveDbar,
    /// Run the invariant battery
    Verify,
    /// Projection of zbar^s z^n onto the polyanalytic space
    Project,
}

/// Rendered output and exit status of one run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub warnings: Vec<String>,
    pub code: i32,
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let cfg = RunConfig::resolve(&cli.flags)?;
    run_command(cli.command, &cfg)
}

pub fn run_command(command: Command, cfg: &RunConfig) -> Result<Outcome, CliError> {
    match command {
        Command::Norms => commands::norms(cfg),
        Command::Classify => commands::classify_symbol(cfg),
        Command::SolveDbar => commands::solve_dbar(cfg),
        Command::Verify => commands::verify(cfg, &ExactMoments),
        Command::Project => commands::project(cfg),
    }
}
