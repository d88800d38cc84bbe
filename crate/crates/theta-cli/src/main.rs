//! `theta` — exact and asymptotic evaluation of the theta splitting
//! function from the command line.
//!
//! Θ is defined by Θ(1) = 0 and Θ(s+1) = 1 + s·Θ(s). The binary exposes
//!
//! * `exact` — exact integer evaluation, optionally cross-checked
//!   against the closed-form identities;
//! * `approx` — the asymptotic approximant s^s·√s·e^(−s)·C together
//!   with the series constant C and its rigorous truncation bound;
//! * `table` — side-by-side exact/approximant distribution table in
//!   plain, CSV or JSON form;
//! * `verify` — the full invariant suite plus a discrepancy report
//!   covering the places where computed values depart from tabulated
//!   or claimed ones.
//!
//! Every command is deterministic: identical arguments produce
//! identical output bytes. Exit codes: 0 on success, 1 when a
//! computation or invariant check fails, 2 on invalid arguments, flags,
//! environment, or an unusable output path. The `THETA_PRECISION`
//! environment variable overrides the default working precision
//! (50 decimal digits) wherever no `--precision` flag applies.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "theta",
    version,
    about = "Exact and asymptotic evaluation of the theta splitting function",
    long_about = "Exact and asymptotic evaluation of the theta splitting function\n\
                  defined by theta(1) = 0, theta(s+1) = 1 + s*theta(s)."
)]
struct Cli {
    /// Significant digits in human-readable numeric output.
    #[arg(long, global = true, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..=100))]
    digits: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate theta(s) exactly as a decimal integer.
    Exact {
        /// Argument s >= 1.
        s: u64,
        /// Also cross-check the value against the closed-form
        /// identities (factorial-ratio sum, falling-factorial sum,
        /// floor(e*s!) - s!) and print a pass/fail line per identity.
        #[arg(long)]
        identity_check: bool,
    },
    /// Evaluate the asymptotic approximant s^s*sqrt(s)*e^(-s)*C.
    Approx {
        /// Argument s >= 1.
        s: u64,
        /// Working precision in decimal digits (15-100). Defaults to
        /// the THETA_PRECISION environment variable, or 50.
        #[arg(long)]
        precision: Option<u64>,
        /// Absolute tail-bound target for the series constant C.
        #[arg(long, default_value = "1e-30")]
        tolerance: String,
    },
    /// Emit the exact/approximant distribution table for s = 1..max.
    Table {
        /// Largest s in the table (2-1000).
        #[arg(long, default_value_t = 15)]
        max: u64,
        /// Output format.
        #[arg(long, value_enum, default_value_t = OutputFormat::Plain)]
        format: OutputFormat,
        /// Write the table to this file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the invariant suite and print the discrepancy report.
    Verify {
        /// Upper end of the checked range (>= 15).
        #[arg(long = "s-max", default_value_t = 200)]
        s_max: u64,
        /// Relative tolerance for the product evaluations; the
        /// agreement gates scale with it (10x for the product oracle,
        /// 100x for the summed-product reduction).
        #[arg(long, default_value = "1e-10")]
        tolerance: String,
    },
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    /// Aligned human-readable columns at --digits precision.
    Plain,
    /// Comma-separated values, full-precision numbers.
    Csv,
    /// JSON array of row objects, full-precision numbers as strings.
    Json,
}

/// Command failure carrying its exit code: usage problems exit 2,
/// computation or invariant failures exit 1.
#[derive(Debug)]
enum CliError {
    Usage(String),
    Failure(String),
}

impl From<theta_core::Error> for CliError {
    fn from(e: theta_core::Error) -> Self {
        match e {
            theta_core::Error::InvalidArgument(_) => CliError::Usage(e.to_string()),
            other => CliError::Failure(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
