mod cmd;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use swsurg_core::Error;

/// Tracks Seiberg-Witten basic classes through blow-ups and fiber sums.
#[derive(Debug, Parser)]
#[command(name = "swsurg", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a manifold file against all invariants.
    Validate { file: PathBuf },

    /// Blow up one or more points, optionally on a named surface.
    Blowup {
        file: PathBuf,
        /// Surface whose proper transform replaces it.
        #[arg(long)]
        on: Option<String>,
        /// Number of points to blow up.
        #[arg(long, default_value_t = 1)]
        times: usize,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
        #[arg(long)]
        report: Option<PathBuf>,
    },

    /// Connected sum along surfaces given as FILE:SURFACE.
    Fibersum {
        first: String,
        second: String,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
        #[arg(long)]
        report: Option<PathBuf>,
    },

    /// Moduli space on Σ×S¹ for a given genus and pairing c·Σ.
    Moduli {
        #[arg(long)]
        genus: u32,
        #[arg(long, allow_hyphen_values = true)]
        pairing: String,
    },

    /// Expected dimension of the moduli space for a characteristic class.
    Dimension {
        file: PathBuf,
        /// Comma-separated coordinates.
        #[arg(long, allow_hyphen_values = true)]
        class: String,
    },

    /// Human-readable summary and audit of a manifold file.
    Report { file: PathBuf },
}

/// Exit status for each error kind.
pub fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Invalid(_) | Error::Rejected(_) | Error::DimensionMismatch { .. } | Error::Inconsistency(_) => 1,
        Error::HypothesisNotMet(_) | Error::Unsupported(_) => 2,
        Error::Parse { .. } | Error::Io(_) => 3,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match cmd::run(&cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("swsurg: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
