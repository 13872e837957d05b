//! `racsim`: exact evaluation, advantage scans, the classical oracle and
//! Monte Carlo play of random access codes.
//!
//! Exit status: 0 success, 1 failed verification or I/O error, 2 invalid
//! arguments, 3 oracle search too large for the budget.

mod commands;
mod render;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use racsim_core::RacError;

#[derive(Debug, Parser)]
#[command(name = "racsim", version, about = "Random access code simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Exact success probabilities of one protocol
    Exact(ProtocolArgs),
    /// r_max(d) staircase and success probabilities over a range of d
    Scan(ScanArgs),
    /// Exhaustive search for the optimal classical code, or evaluation of a table
    Oracle(OracleArgs),
    /// Monte Carlo estimate of a protocol's average success
    Simulate(SimulateArgs),
    /// Cross-check every closed form against enumeration
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Task {
    /// [(2,d)→1] quantum code in dimension d
    Full,
    /// [(2,d)→1] quantum code in dimension d' < d
    Restricted,
    /// classical code: majority/identity, or a table given by --strategy
    Classical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Variant {
    /// gate X and Z separately (same as `independent`)
    Canonical,
    Independent,
    /// apply X^x1 Z^x2 only when both dits fit
    Literal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct ProtocolArgs {
    #[arg(long, value_enum, default_value = "full")]
    pub task: Task,
    /// alphabet size
    #[arg(long)]
    pub d: Option<usize>,
    /// quantum dimension for the restricted task (default d - r_max(d))
    #[arg(long)]
    pub dprime: Option<usize>,
    #[arg(long, value_enum, default_value = "canonical")]
    pub variant: Variant,
    /// string length for the classical task
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    /// strategy table file for the classical task
    #[arg(long)]
    pub strategy: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct ScanArgs {
    #[arg(long, default_value_t = 2)]
    pub dmin: usize,
    #[arg(long, default_value_t = 50)]
    pub dmax: usize,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct OracleArgs {
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    #[arg(long)]
    pub d: Option<usize>,
    /// only search D_1 up to message relabeling
    #[arg(long)]
    pub symmetry: bool,
    /// raise the search budget (implies --symmetry)
    #[arg(long)]
    pub allow_large: bool,
    /// evaluate the strategy table in this file instead of searching
    #[arg(long, value_name = "PATH")]
    pub evaluate: Option<PathBuf>,
    /// write the witness strategy table to this file
    #[arg(long, value_name = "PATH")]
    pub export: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub protocol: ProtocolArgs,
    #[arg(long, default_value_t = 1_000_000)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// largest d for enumeration cross-checks
    #[arg(long, default_value_t = 32)]
    pub dmax: usize,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

/// Invalid argument combination caught after parsing.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct UsageError(pub String);

/// Verification finished but some check failed.
#[derive(Debug, thiserror::Error)]
#[error("{0} verification check(s) failed")]
pub struct VerifyFailed(pub usize);

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<UsageError>().is_some() {
        return 2;
    }
    match err.downcast_ref::<RacError>() {
        Some(RacError::InfeasibleSize { .. }) => 3,
        Some(_) => 2,
        None => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Exact(a) => commands::exact(&a),
        Command::Scan(a) => commands::scan(&a),
        Command::Oracle(a) => commands::oracle(&a),
        Command::Simulate(a) => commands::simulate(&a),
        Command::Verify(a) => verify::run(&a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            if err.downcast_ref::<VerifyFailed>().is_none() {
                eprintln!("error: {err:#}");
            }
            ExitCode::from(exit_code(&err))
        }
    }
}
