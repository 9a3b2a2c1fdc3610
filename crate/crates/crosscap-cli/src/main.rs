//! `crosscap` — exact knot invariants and concordance-crosscap obstructions
//! for the twist families and (2,q) cables, on the command line.
//!
//! Three subcommands: `classify` one knot, `search` an n-range of a family
//! (CSV/JSON reports, deterministic under any `--jobs` value), and
//! `selftest` for the embedded verification suites. Exit codes: 0 success,
//! 1 internal or suite failure, 2 usage error; panics never escape to the
//! shell.

mod classify;
mod record;
mod search;
mod selftest;

use clap::{Parser, Subcommand, ValueEnum};
use std::process::ExitCode;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Text,
}

/// Failures split by whose fault they are: bad invocations exit 2,
/// everything else (IO, serialization, suite failures) exits 1. A closed
/// stdout (`crosscap ... | head`) is a normal stop, not a failure.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Internal(String),
    Pipe,
}

impl From<crosscap_core::knotmodel::KnotModelError> for CliError {
    fn from(e: crosscap_core::knotmodel::KnotModelError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<crosscap_core::familysearch::SearchError> for CliError {
    fn from(e: crosscap_core::familysearch::SearchError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            return CliError::Pipe;
        }
        CliError::Internal(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Internal(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        if e.io_error_kind() == Some(std::io::ErrorKind::BrokenPipe) {
            return CliError::Pipe;
        }
        CliError::Internal(e.to_string())
    }
}

#[derive(Parser)]
#[command(
    name = "crosscap",
    version,
    about = "Exact knot invariants and concordance-crosscap obstructions for twist families"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify one knot: invariants, obstruction verdict, crosscap bounds
    Classify(classify::ClassifyArgs),
    /// Sweep an n-range of a family into a CSV/JSON report
    Search(search::SearchArgs),
    /// Run the embedded verification suites
    Selftest(selftest::SelftestArgs),
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Classify(args) => classify::run(&args),
        Command::Search(args) => search::run(&args),
        Command::Selftest(args) => selftest::run(&args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| run(cli))) {
        Ok(Ok(())) | Ok(Err(CliError::Pipe)) => ExitCode::SUCCESS,
        Ok(Err(CliError::Usage(msg))) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Ok(Err(CliError::Internal(msg))) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(_) => {
            // The default panic hook has already written details to stderr.
            eprintln!("error: internal panic");
            ExitCode::from(1)
        }
    }
}
