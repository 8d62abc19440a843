// SPDX-License-Identifier: Apache-2.0

//! `ucg`: spectra, walk evolution, revival detection and theorem checks for
//! unitary Cayley graphs.
//!
//! Exit codes: 0 success, 1 negative result (no revival detected, or a
//! theorem check failed), 2 invalid input or I/O failure.

mod commands;
mod output;
mod range;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use crate::range::NRange;

#[derive(Debug, Parser)]
#[command(name = "ucg", version, about = "Quantum walks on unitary Cayley graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Eigenvalues and eigenvalue classes.
    Spectrum {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Evolution matrix U(t) as JSON, or |U(t)[v][u]|^2 over a time grid as CSV.
    Evolve {
        #[arg(long)]
        n: usize,
        /// Time, e.g. `1.5`, `pi/2`, `2*pi/3`. Required for JSON output.
        #[arg(long)]
        t: Option<String>,
        /// Start vertex for the CSV profile.
        #[arg(long, default_value_t = 0)]
        u: usize,
        #[arg(long, default_value_t = 512)]
        grid: usize,
        /// Use the matrix exponential instead of the spectral synthesis.
        #[arg(long)]
        oracle: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Certificate for revival from u to v at time t.
    Detect {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        u: usize,
        #[arg(long)]
        v: usize,
        #[arg(long)]
        t: String,
        #[arg(long, default_value_t = ucg::detect::DEFAULT_TOL)]
        tol: f64,
    },
    /// Search [0, 2 pi) for revival times of every pair (0, v).
    Scan {
        /// Single `n` or inclusive range `a..b`.
        #[arg(long)]
        n: NRange,
        #[arg(long, default_value_t = 4096)]
        grid: usize,
        #[arg(long, default_value_t = ucg::detect::DEFAULT_TOL)]
        tol: f64,
        /// File for a single n, directory for a range.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Emit the CSV profile (t, |alpha|^2, |beta|^2, residual) of one pair
        /// instead of reports.
        #[arg(long)]
        emit_profile: bool,
        /// Target vertex for --emit-profile; defaults to n/2 (or 1 for odd n).
        #[arg(long)]
        v: Option<usize>,
    },
    /// Check the revival theorems over a range of n.
    Verify {
        #[arg(long)]
        n: NRange,
        #[arg(long, default_value_t = ucg::detect::DEFAULT_TOL)]
        tol: f64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}
