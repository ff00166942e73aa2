//! `validate`: the numeric cross-check battery, machine-readable.
//!
//! Every check is deterministic in the seed; two runs with identical
//! arguments produce byte-identical reports.

use std::f64::consts::TAU;
use std::process::ExitCode;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use bargmann::fock::{oracle_invariant, OracleOptions};
use bargmann::invariant::{
    assemble_m, bargmann_invariant, gaussian_integral_check, overlap, thermal_block_det_check,
    trace_power_det, trace_power_symplectic,
};
use bargmann::linalg::ComplexLu;
use bargmann::regions::{
    check_inequalities, coherent_ring_invariant, coherent_ring_states, squeezed_ring_det,
    squeezed_ring_invariant, squeezed_ring_states,
};
use bargmann::state::{make_squeezed_coherent, random_state_with, GaussianState, StateSpec};

use crate::fmt_f64;

struct CheckResult {
    name: &'static str,
    cases: usize,
    max_defect: f64,
    tolerance: f64,
}

impl CheckResult {
    fn pass(&self) -> bool {
        self.max_defect <= self.tolerance
    }
}

fn rng_for(seed: u64, check: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(check))
}

fn random_tuple(rng: &mut ChaCha8Rng, n: usize) -> (Vec<GaussianState>, Vec<StateSpec>) {
    let mut states = Vec::with_capacity(n);
    let mut specs = Vec::with_capacity(n);
    for _ in 0..n {
        let zeta = Complex64::from_polar(rng.random_range(0.0..1.0), rng.random_range(0.0..TAU));
        let alpha = Complex64::from_polar(rng.random_range(0.0..1.0), rng.random_range(0.0..TAU));
        states.push(make_squeezed_coherent(zeta, alpha));
        specs.push(StateSpec::SqueezedCoherent {
            zeta: [zeta.re, zeta.im],
            alpha: [alpha.re, alpha.im],
        });
    }
    (states, specs)
}

fn check_pair_overlap(seed: u64, cases: usize) -> CheckResult {
    let mut rng = rng_for(seed, 1);
    let mut max_defect = 0.0_f64;
    for _ in 0..cases {
        let a = random_state_with(1, 1.0, 1.0, &mut rng);
        let b = random_state_with(1, 1.0, 1.0, &mut rng);
        let engine = bargmann_invariant(&[a.clone(), b.clone()]).unwrap().value;
        let formula = overlap(&a, &b).unwrap();
        max_defect = max_defect.max((engine - Complex64::from(formula)).norm() / formula);
    }
    CheckResult { name: "pair_overlap_identity", cases, max_defect, tolerance: 1e-10 }
}

fn check_fock_oracle(seed: u64, cases: usize, tol: f64, inject: Option<f64>) -> CheckResult {
    let mut rng = rng_for(seed, 2);
    let mut max_defect = 0.0_f64;
    for case in 0..cases {
        let n = 2 + case % 4;
        let (mut states, specs) = random_tuple(&mut rng, n);
        if let Some(eps) = inject {
            let mut cov = states[0].cov().clone();
            cov[(0, 0)] += eps;
            states[0] = GaussianState::from_parts(states[0].mean().clone(), cov)
                .expect("diagonal bump keeps the state physical");
        }
        let engine = bargmann_invariant(&states).unwrap().value;
        let (oracle, _, _) = oracle_invariant(&specs, OracleOptions::default()).unwrap();
        max_defect = max_defect.max((engine - oracle).norm());
    }
    CheckResult { name: "engine_vs_fock_oracle", cases, max_defect, tolerance: tol }
}

fn check_trace_power_routes(seed: u64, cases: usize) -> CheckResult {
    let mut rng = rng_for(seed, 3);
    let mut max_defect = 0.0_f64;
    for case in 0..cases {
        let modes = 1 + case % 3;
        let n = 2 + case % 9;
        let s = random_state_with(modes, 1.0, 10.0, &mut rng);
        let det_route = trace_power_det(&s, n).unwrap().value.re;
        let sym_route = trace_power_symplectic(&s, n).unwrap();
        max_defect = max_defect.max((det_route - sym_route).abs() / sym_route.abs());
    }
    CheckResult { name: "trace_power_routes", cases, max_defect, tolerance: 1e-9 }
}

fn check_coherent_ring() -> (CheckResult, usize) {
    let mut max_defect = 0.0_f64;
    let mut count = 0;
    for n in 3..=8usize {
        for &alpha in &[0.3, 0.7, 1.0] {
            for &zeta in &[0.0, 0.6, 1.0] {
                let closed = coherent_ring_invariant(n, alpha, zeta);
                for &phi in &[0.0, 2.1] {
                    let engine =
                        bargmann_invariant(&coherent_ring_states(n, alpha, zeta, phi)).unwrap().value;
                    max_defect = max_defect.max((engine - closed).norm() / closed.norm());
                    count += 1;
                }
            }
        }
    }
    (CheckResult { name: "coherent_ring_closed_form", cases: count, max_defect, tolerance: 1e-9 }, count)
}

fn check_squeezed_ring() -> (CheckResult, CheckResult) {
    let mut max_value = 0.0_f64;
    let mut max_det = 0.0_f64;
    let mut count = 0;
    for n in 2..=8usize {
        for &zeta in &[0.0, 0.25, 0.5, 0.75, 1.0] {
            let result = bargmann_invariant(&squeezed_ring_states(n, zeta)).unwrap();
            let closed = squeezed_ring_invariant(n, zeta);
            max_value = max_value.max((result.value - closed).norm() / closed.norm());
            let det_closed = squeezed_ring_det(n, zeta);
            max_det = max_det.max((result.det_m - det_closed).norm() / det_closed.norm());
            count += 1;
        }
    }
    (
        CheckResult { name: "squeezed_ring_values", cases: count, max_defect: max_value, tolerance: 1e-9 },
        CheckResult { name: "squeezed_ring_determinants", cases: count, max_defect: max_det, tolerance: 1e-8 },
    )
}

fn check_determinant_identities(seed: u64) -> CheckResult {
    let mut rng = rng_for(seed, 6);
    let mut max_defect = 0.0_f64;
    let mut count = 0;
    for n in 2..=10usize {
        for _ in 0..3 {
            let zeta =
                Complex64::from_polar(rng.random_range(0.0..1.2), rng.random_range(0.0..TAU));
            let s = bargmann::state::make_squeezed(zeta);
            let block = assemble_m(&vec![s; n]).unwrap();
            let lu = ComplexLu::factor(block.data().clone());
            let want = 4f64.powi(n as i32 - 1);
            max_defect = max_defect.max((lu.det() - Complex64::from(want)).norm() / want);
            count += 1;
        }
    }
    let mut nu = 1.0;
    while nu <= 10.0 {
        for n in 2..=12usize {
            let (_, _, defect) = thermal_block_det_check(nu, n);
            max_defect = max_defect.max(defect);
            count += 1;
        }
        nu += 1.0;
    }
    CheckResult { name: "determinant_identities", cases: count, max_defect, tolerance: 1e-9 }
}

fn check_region_inequalities() -> CheckResult {
    let mut max_defect = 0.0_f64;
    let mut count = 0;
    for n in 3..=40usize {
        let report = check_inequalities(n, 10_000);
        let worst = report
            .en_within_bn
            .max_violation
            .max(report.fn_within_en.max_violation)
            .max(report.en_within_bn.gap_at_zero.abs())
            .max(report.fn_within_en.gap_at_zero.abs());
        // strictness away from zero folded in as a violation
        let strict = (1e-12 - report.en_within_bn.min_interior_gap)
            .max(1e-12 - report.fn_within_en.min_interior_gap)
            .max(0.0);
        max_defect = max_defect.max(worst).max(strict);
        count += 1;
    }
    CheckResult { name: "region_inequalities", cases: count, max_defect, tolerance: 1e-12 }
}

fn check_symmetries(seed: u64, cases: usize) -> CheckResult {
    let mut rng = rng_for(seed, 8);
    let mut max_defect = 0.0_f64;
    for case in 0..cases {
        let n = 2 + case % 4;
        let states: Vec<_> = (0..n).map(|_| random_state_with(1, 0.9, 0.8, &mut rng)).collect();
        let base = bargmann_invariant(&states).unwrap().value;
        let scale = base.norm().max(1e-12);
        let mut rotated = states.clone();
        rotated.rotate_left(1);
        let cyc = bargmann_invariant(&rotated).unwrap().value;
        max_defect = max_defect.max((base - cyc).norm() / scale);
        let conjugated: Vec<_> = states.iter().map(|s| s.conjugate()).collect();
        let conj = bargmann_invariant(&conjugated).unwrap().value;
        max_defect = max_defect.max((base.conj() - conj).norm() / scale);
        let mut reversed = states;
        reversed.reverse();
        let rev = bargmann_invariant(&reversed).unwrap().value;
        max_defect = max_defect.max((base.conj() - rev).norm() / scale);
    }
    CheckResult { name: "algebraic_symmetries", cases, max_defect, tolerance: 1e-9 }
}

fn check_gaussian_integral(seed: u64, cases: usize) -> CheckResult {
    let mut rng = rng_for(seed, 9);
    let cases = cases.min(20);
    let mut max_defect = 0.0_f64;
    for case in 0..cases {
        let d = 1 + case % 2;
        let a = DMatrix::from_fn(d, d, |_, _| rng.random_range(-1.0..1.0));
        let cmat = &a * a.transpose() + DMatrix::identity(d, d) * 0.25;
        let mut q = DMatrix::from_fn(d, d, |i, j| Complex64::new(cmat[(i, j)], 0.0));
        for i in 0..d {
            for j in i..d {
                let im = rng.random_range(-0.8..0.8);
                q[(i, j)].im += im;
                if i != j {
                    q[(j, i)].im += im;
                }
            }
        }
        let l = DVector::from_fn(d, |_, _| {
            Complex64::new(rng.random_range(-0.7..0.7), rng.random_range(-0.7..0.7))
        });
        let check = gaussian_integral_check(&q, &l).unwrap();
        max_defect = max_defect.max(check.defect);
    }
    CheckResult { name: "gaussian_integral_quadrature", cases, max_defect, tolerance: 1e-6 }
}

pub fn run(seed: u64, cases: usize, tolerance: f64, inject: Option<f64>) -> ExitCode {
    let mut checks: Vec<CheckResult> = Vec::new();
    if cases > 0 {
        checks.push(check_pair_overlap(seed, cases));
        checks.push(check_fock_oracle(seed, cases, tolerance, inject));
        checks.push(check_trace_power_routes(seed, cases));
        let (ring, _) = check_coherent_ring();
        checks.push(ring);
        let (sq_vals, sq_dets) = check_squeezed_ring();
        checks.push(sq_vals);
        checks.push(sq_dets);
        checks.push(check_determinant_identities(seed));
        checks.push(check_region_inequalities());
        checks.push(check_symmetries(seed, cases));
        checks.push(check_gaussian_integral(seed, cases));
    }
    let all_pass = checks.iter().all(|c| c.pass());
    let rows: Vec<String> = checks
        .iter()
        .map(|c| {
            format!(
                "{{\"name\":\"{}\",\"cases\":{},\"max_defect\":{},\"tolerance\":{},\"pass\":{}}}",
                c.name,
                c.cases,
                fmt_f64(c.max_defect),
                fmt_f64(c.tolerance),
                c.pass()
            )
        })
        .collect();
    println!(
        "{{\"seed\":{seed},\"cases\":{cases},\"tolerance\":{},\"checks\":[{}],\"pass\":{all_pass}}}",
        fmt_f64(tolerance),
        rows.join(",")
    );
    for c in &checks {
        eprintln!(
            "{} {} (max defect {:.3e}, tolerance {:.0e}, {} cases)",
            if c.pass() { "PASS" } else { "FAIL" },
            c.name,
            c.max_defect,
            c.tolerance,
            c.cases
        );
    }
    if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
