//! `bargmann` — multivariate traces of Gaussian states from the shell.
//!
//! Subcommands:
//! - `compute`  — evaluate tr(ρ₁ρ₂…ρₙ) for states described in a JSON file
//! - `regions`  — emit permissible-value region curves as CSV
//! - `validate` — run the numeric cross-check battery
//!
//! Results go to stdout, logs to stderr. Exit codes: 0 success, 2 input
//! problems, 3 ill-conditioned systems, 4 unphysical states (1 for a
//! failed validation battery).

use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

mod compute;
mod regions_cmd;
mod validate;

#[derive(Parser)]
#[command(name = "bargmann", version, about = "Multivariate traces of bosonic Gaussian states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the multivariate trace of the states in a JSON input file.
    Compute {
        /// Path to the input file (see README for the state schema).
        input: PathBuf,
        /// Repeat a single input state this many times (trace power).
        #[arg(long)]
        power: Option<usize>,
        /// Cross-check against the truncated Fock-space oracle when all
        /// states are recognized one-mode families.
        #[arg(long)]
        oracle_check: bool,
        /// Starting Fock truncation for the oracle (adaptively doubled).
        #[arg(long, default_value_t = 60)]
        fock_truncation: usize,
        /// Include numerical diagnostics in the output.
        #[arg(long)]
        emit_diagnostics: bool,
    },
    /// Sample region curves and write one CSV per (n, curve).
    Regions {
        /// Curve orders to emit (repeatable); defaults to 3, 6, 10, 40.
        #[arg(long = "n", value_name = "N")]
        orders: Vec<usize>,
        /// Samples per curve.
        #[arg(long, default_value_t = 1000)]
        resolution: usize,
        /// Output directory.
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Run the cross-check battery and report machine-readable results.
    Validate {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of random cases per randomized check (0 = empty report).
        #[arg(long, default_value_t = 50)]
        cases: usize,
        /// Absolute tolerance for the engine-vs-oracle check.
        #[arg(long, default_value_t = 1e-6)]
        tolerance: f64,
        /// Test hook: perturb one covariance entry to force a failure.
        #[arg(long, hide = true)]
        inject_perturbation: Option<f64>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Compute { input, power, oracle_check, fock_truncation, emit_diagnostics } => {
            compute::run(&input, power, oracle_check, fock_truncation, emit_diagnostics)
        }
        Command::Regions { orders, resolution, out } => regions_cmd::run(&orders, resolution, &out),
        Command::Validate { seed, cases, tolerance, inject_perturbation } => {
            validate::run(seed, cases, tolerance, inject_perturbation)
        }
    }
}

/// 17 significant digits: guaranteed to re-parse to the same double.
pub(crate) fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub(crate) fn fmt_complex(z: num_complex::Complex64) -> String {
    format!("[{},{}]", fmt_f64(z.re), fmt_f64(z.im))
}
