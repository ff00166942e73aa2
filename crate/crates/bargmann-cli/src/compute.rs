//! `compute`: evaluate the trace of the state tuple in an input file.

use std::path::Path;
use std::process::ExitCode;

use num_complex::Complex64;
use serde::Deserialize;

use bargmann::fock::{oracle_invariant, OracleOptions};
use bargmann::invariant::{bargmann_invariant, BranchNote, EngineError, InvariantResult};
use bargmann::state::{StateError, StateSpec};

use crate::{fmt_complex, fmt_f64};

/// Input file: either a bare list of state specs or a wrapped request
/// with file-borne options.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum ComputeInput {
    Wrapped {
        states: Vec<StateSpec>,
        #[serde(default)]
        options: FileOptions,
    },
    Bare(Vec<StateSpec>),
}

#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct FileOptions {
    emit_diagnostics: bool,
    oracle_check: bool,
    fock_truncation: Option<usize>,
}

const EXIT_PARSE: u8 = 2;
const EXIT_ILL_CONDITIONED: u8 = 3;
const EXIT_UNPHYSICAL: u8 = 4;

fn state_error_exit(e: &StateError) -> u8 {
    match e {
        StateError::NotSymmetric { .. }
        | StateError::NotPositiveDefinite(_)
        | StateError::Unphysical { .. }
        | StateError::NegativeOccupation(_) => EXIT_UNPHYSICAL,
        _ => EXIT_PARSE,
    }
}

fn fail(code: u8, msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(code)
}

pub fn run(
    input: &Path,
    power: Option<usize>,
    oracle_check_flag: bool,
    fock_truncation_flag: usize,
    emit_diagnostics_flag: bool,
) -> ExitCode {
    let text = match std::fs::read_to_string(input) {
        Ok(t) => t,
        Err(e) => return fail(EXIT_PARSE, format!("cannot read {}: {e}", input.display())),
    };
    let parsed: ComputeInput = match serde_json::from_str(&text) {
        Ok(p) => p,
        Err(e) => return fail(EXIT_PARSE, format!("invalid input JSON: {e}")),
    };
    let (mut specs, file_options) = match parsed {
        ComputeInput::Wrapped { states, options } => (states, options),
        ComputeInput::Bare(states) => (states, FileOptions::default()),
    };
    let emit_diagnostics = emit_diagnostics_flag || file_options.emit_diagnostics;
    let oracle_check = oracle_check_flag || file_options.oracle_check;
    let truncation = file_options.fock_truncation.unwrap_or(fock_truncation_flag);

    if specs.is_empty() {
        return fail(EXIT_PARSE, "input contains no states");
    }
    if let Some(k) = power {
        if specs.len() != 1 {
            return fail(EXIT_PARSE, "--power expects exactly one input state");
        }
        if k == 0 {
            return fail(EXIT_PARSE, "--power must be at least 1");
        }
        specs = vec![specs[0].clone(); k];
    }

    let states: Vec<_> = match specs.iter().map(|s| s.build()).collect::<Result<_, _>>() {
        Ok(v) => v,
        Err(e) => return fail(state_error_exit(&e), e),
    };

    let result = if states.len() == 1 {
        // tr ρ = 1: the trivial single-state invariant.
        InvariantResult {
            value: Complex64::new(1.0, 0.0),
            det_m: Complex64::new(1.0, 0.0),
            arg_det_m: 0.0,
            log_abs_det: 0.0,
            log_magnitude: 0.0,
            condition_estimate: 1.0,
            branch_note: BranchNote::Principal0To2Pi,
        }
    } else {
        match bargmann_invariant(&states) {
            Ok(r) => r,
            Err(e @ EngineError::IllConditioned { .. }) => {
                return fail(EXIT_ILL_CONDITIONED, e);
            }
            Err(e @ EngineError::Singular) => return fail(EXIT_ILL_CONDITIONED, e),
            Err(e @ EngineError::RealPartNotPositive(_)) => return fail(EXIT_UNPHYSICAL, e),
            Err(EngineError::State(e)) => return fail(state_error_exit(&e), e),
            Err(e) => return fail(EXIT_PARSE, e),
        }
    };

    let mut fields: Vec<(String, String)> = vec![
        ("value".into(), fmt_complex(result.value)),
        ("det_M".into(), fmt_complex(result.det_m)),
        ("n".into(), states.len().to_string()),
        ("m".into(), states[0].modes().to_string()),
    ];
    if emit_diagnostics {
        fields.push(("arg_det_M".into(), fmt_f64(result.arg_det_m)));
        fields.push(("log_abs_det_M".into(), fmt_f64(result.log_abs_det)));
        fields.push(("log_magnitude".into(), fmt_f64(result.log_magnitude)));
        fields.push(("condition_estimate".into(), fmt_f64(result.condition_estimate)));
        let branch = match result.branch_note {
            BranchNote::Principal0To2Pi => "principal_0_2pi",
            BranchNote::AnalyticContinued => "analytic_continued",
        };
        fields.push(("branch_note".into(), format!("\"{branch}\"")));
    }

    if oracle_check {
        let options = OracleOptions { truncation, ..OracleOptions::default() };
        match oracle_invariant(&specs, options) {
            Ok((oracle, used_truncation, tail)) => {
                let defect = (result.value - oracle).norm();
                let mut darg = result.value.arg() - oracle.arg();
                while darg > std::f64::consts::PI {
                    darg -= std::f64::consts::TAU;
                }
                while darg < -std::f64::consts::PI {
                    darg += std::f64::consts::TAU;
                }
                let branch_suspect = oracle.norm() > 1e-12 && darg.abs() > 1e-4;
                fields.push(("oracle".into(), fmt_complex(oracle)));
                fields.push(("oracle_defect".into(), fmt_f64(defect)));
                fields.push(("oracle_truncation".into(), used_truncation.to_string()));
                fields.push(("oracle_tail_mass".into(), fmt_f64(tail)));
                fields.push(("branch_suspect".into(), branch_suspect.to_string()));
            }
            Err(e) => {
                eprintln!("note: oracle check unavailable: {e}");
            }
        }
    }

    let body: Vec<String> = fields.into_iter().map(|(k, v)| format!("\"{k}\":{v}")).collect();
    println!("{{{}}}", body.join(","));
    ExitCode::SUCCESS
}
