//! The multivariate-trace engine.
//!
//! For ordered `m`-mode Gaussian states `ρ₁ … ρₙ` (`n ≥ 2`) the trace
//! `tr(ρ₁ρ₂…ρₙ)` equals
//!
//! ```text
//! 2^{m(n-1)} · exp(−½ Λᵀ M⁻¹ Λ) / √(det M)
//! ```
//!
//! where `M` is an `(n−1)×(n−1)` block matrix built from the covariances
//! (`V⁽ⁿ⁾+V⁽ʲ⁾` on the diagonal, `V⁽ⁿ⁾±iΩ` off it) and `Λ` stacks the mean
//! differences `X̄⁽ʲ⁾−X̄⁽ⁿ⁾`. The quadratic form is evaluated by a linear
//! solve with one step of iterative refinement — never through an explicit
//! inverse — and the determinant in log form.
//!
//! # The square-root branch
//!
//! `√(det M)` is *not* taken on a fixed cut of the determinant value.
//! The value demanded by the underlying Gaussian integral is the one
//! continued from the positive-definite case, and its argument can wind
//! outside any principal interval once several strongly squeezed states
//! are multiplied. [`linalg::log_det_continued`] tracks that winding
//! through the Ω-conjugated form of `M`, whose real part is positive
//! definite for physical inputs. The naive prescription — normalize
//! `arg det M` into `[0, 2π)` and halve — is exposed as [`sqrt_branch`]
//! and recorded in the diagnostics: [`InvariantResult::branch_note`] says
//! whether the continued branch coincided with it ([`BranchNote::Principal0To2Pi`])
//! or differed by a half turn ([`BranchNote::AnalyticContinued`]).

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use std::f64::consts::TAU;
use thiserror::Error;

use crate::linalg::{self, ComplexLu};
use crate::quadrature;
use crate::state::{GaussianState, StateError};
use crate::symplectic::{block_diag_copies, symplectic_eigenvalues, symplectic_form};

/// Condition-number ceiling; above it the engine refuses to report a value.
pub const CONDITION_LIMIT: f64 = 1e14;

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("need at least two states, got {0}")]
    TooFewStates(usize),
    #[error("states have mixed mode counts")]
    MixedModes,
    #[error("block matrix is numerically singular")]
    Singular,
    #[error(
        "block matrix is ill-conditioned (condition estimate {condition_estimate:.3e}); \
         det magnitude exp({log_abs_det:.3e}), solve residual {residual:.3e}"
    )]
    IllConditioned {
        condition_estimate: f64,
        det_m: Complex64,
        arg_det_m: f64,
        log_abs_det: f64,
        residual: f64,
    },
    #[error("square root of zero is outside the branch domain")]
    SqrtOfZero,
    #[error("quadratic-form matrix must have positive-definite real part (min eigenvalue {0:.3e})")]
    RealPartNotPositive(f64),
    #[error("trace power came out non-real (|Im|/|value| = {0:.3e})")]
    NonRealTracePower(f64),
    #[error("dimension {0} not supported for quadrature (max 3)")]
    QuadratureDimension(usize),
    #[error(transparent)]
    State(#[from] StateError),
}

impl From<linalg::LinalgError> for EngineError {
    fn from(e: linalg::LinalgError) -> Self {
        match e {
            linalg::LinalgError::Singular => EngineError::Singular,
            linalg::LinalgError::RealPartNotPositive(x) => EngineError::RealPartNotPositive(x),
        }
    }
}

/// Which square root of `det M` the reported value corresponds to,
/// relative to the `[0, 2π)` prescription of [`sqrt_branch`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BranchNote {
    /// The continued branch agrees with halving `arg det M ∈ [0, 2π)`.
    Principal0To2Pi,
    /// The continued branch is the other sheet: the naive prescription
    /// would have flipped the sign of the result.
    AnalyticContinued,
}

/// Value of a multivariate trace together with numerical diagnostics.
#[derive(Debug, Clone)]
pub struct InvariantResult {
    pub value: Complex64,
    /// Determinant of the block matrix (may overflow for huge systems;
    /// `log_abs_det` + `arg_det_m` stay finite).
    pub det_m: Complex64,
    /// Argument of `det M` normalized into `[0, 2π)`.
    pub arg_det_m: f64,
    /// `ln |det M|`.
    pub log_abs_det: f64,
    /// `ln |value|` (−∞ when the value underflows).
    pub log_magnitude: f64,
    /// 1-norm condition estimate of the solve with `M`.
    pub condition_estimate: f64,
    pub branch_note: BranchNote,
}

/// The assembled block matrix `M`, kept with its shape parameters.
#[derive(Debug, Clone)]
pub struct BlockMatrixM {
    n: usize,
    m: usize,
    data: DMatrix<Complex64>,
}

impl BlockMatrixM {
    pub fn states(&self) -> usize {
        self.n
    }

    pub fn modes(&self) -> usize {
        self.m
    }

    pub fn data(&self) -> &DMatrix<Complex64> {
        &self.data
    }

    /// `max |M − Mᵀ|` — `M` is complex symmetric by construction.
    pub fn symmetry_defect(&self) -> f64 {
        let d = &self.data - self.data.transpose();
        d.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// The Ω-conjugated form `M′ = (⊕Ω) M (⊕Ωᵀ)` whose real part is
    /// positive definite for physical inputs.
    pub fn omega_conjugated(&self) -> DMatrix<Complex64> {
        let omega = symplectic_form(self.m).expect("m >= 1").matrix().clone();
        let f = block_diag_copies(&omega, self.n - 1);
        let fc = linalg::complexify(&f);
        &fc * &self.data * fc.transpose()
    }

    /// Minimum eigenvalue of `Re M′`.
    pub fn re_conjugated_min_eig(&self) -> f64 {
        let mp = self.omega_conjugated();
        let re = mp.map(|z| z.re);
        linalg::symmetric_eigenvalues(&re)[0]
    }
}

fn check_tuple(states: &[GaussianState]) -> Result<(usize, usize), EngineError> {
    if states.len() < 2 {
        return Err(EngineError::TooFewStates(states.len()));
    }
    let m = states[0].modes();
    if states.iter().any(|s| s.modes() != m) {
        return Err(EngineError::MixedModes);
    }
    Ok((states.len(), m))
}

/// Assemble `M`: diagonal block `(j,j)` is `V⁽ⁿ⁾+V⁽ʲ⁾`, block `(j,k)` is
/// `V⁽ⁿ⁾+iΩ` above the diagonal and `V⁽ⁿ⁾−iΩ` below it.
#[allow(clippy::needless_range_loop)]
pub fn assemble_m(states: &[GaussianState]) -> Result<BlockMatrixM, EngineError> {
    let (n, m) = check_tuple(states)?;
    let b = 2 * m;
    let dim = b * (n - 1);
    let omega = symplectic_form(m)?.matrix().clone();
    let v_last = states[n - 1].cov();
    let mut data = DMatrix::zeros(dim, dim);
    for j in 0..n - 1 {
        for k in 0..n - 1 {
            let mut block = data.view_mut((b * j, b * k), (b, b));
            if j == k {
                let vj = states[j].cov();
                for r in 0..b {
                    for c in 0..b {
                        block[(r, c)] = Complex64::new(v_last[(r, c)] + vj[(r, c)], 0.0);
                    }
                }
            } else {
                let sign = if j < k { 1.0 } else { -1.0 };
                for r in 0..b {
                    for c in 0..b {
                        block[(r, c)] = Complex64::new(v_last[(r, c)], sign * omega[(r, c)]);
                    }
                }
            }
        }
    }
    Ok(BlockMatrixM { n, m, data })
}

/// Stack the mean differences `X̄⁽ʲ⁾ − X̄⁽ⁿ⁾`, `j = 1 … n−1`.
pub fn assemble_lambda(states: &[GaussianState]) -> Result<DVector<Complex64>, EngineError> {
    let (n, m) = check_tuple(states)?;
    let b = 2 * m;
    let last = states[n - 1].mean();
    let mut lambda = DVector::zeros(b * (n - 1));
    for j in 0..n - 1 {
        let mj = states[j].mean();
        for r in 0..b {
            lambda[b * j + r] = Complex64::new(mj[r] - last[r], 0.0);
        }
    }
    Ok(lambda)
}

/// Square root on the branch defined by normalizing `arg z` into `[0, 2π)`
/// and halving: the result's argument lies in `[0, π)`. Discontinuous just
/// below the positive real axis — see the module docs for why the engine
/// itself tracks the continued branch instead.
pub fn sqrt_branch(z: Complex64) -> Result<Complex64, EngineError> {
    if z.re == 0.0 && z.im == 0.0 {
        return Err(EngineError::SqrtOfZero);
    }
    let theta = linalg::wrap_to_tau(z.arg());
    Ok(Complex64::from_polar(z.norm().sqrt(), 0.5 * theta))
}

struct DetDiagnostics {
    log_abs_det: f64,
    arg_continued: f64,
    arg_wrapped: f64,
    det: Complex64,
    branch_note: BranchNote,
}

fn determinant_diagnostics(block: &BlockMatrixM) -> Result<DetDiagnostics, EngineError> {
    let (log_abs_det, arg_continued) = linalg::log_det_continued(&block.omega_conjugated())?;
    let arg_wrapped = linalg::wrap_to_tau(arg_continued);
    // The two candidate square roots differ by e^{iπ}; the continued branch
    // halves `arg_continued`, the naive one halves `arg_wrapped`. Compare
    // the two directions, treating determinants within rounding of the
    // positive real axis (the naive branch's cut) as consistent.
    let delta = 0.5 * (arg_continued - arg_wrapped);
    let dist = delta.rem_euclid(TAU).min(TAU - delta.rem_euclid(TAU));
    let on_cut = arg_wrapped.min(TAU - arg_wrapped) < 1e-9;
    let branch_note = if dist < std::f64::consts::FRAC_PI_2 || on_cut {
        BranchNote::Principal0To2Pi
    } else {
        BranchNote::AnalyticContinued
    };
    Ok(DetDiagnostics {
        log_abs_det,
        arg_continued,
        arg_wrapped,
        det: Complex64::from_polar(log_abs_det.exp(), arg_wrapped),
        branch_note,
    })
}

fn invariant_core(states: &[GaussianState]) -> Result<InvariantResult, EngineError> {
    let (n, m) = check_tuple(states)?;
    let block = assemble_m(states)?;
    let lambda = assemble_lambda(states)?;
    let det = determinant_diagnostics(&block)?;

    let lu = ComplexLu::factor(block.data().clone());
    if lu.is_singular() {
        return Err(EngineError::Singular);
    }
    let condition_estimate = lu.condest_symmetric(block.data());
    let (x, residual) = lu.solve_refined(block.data(), &lambda)?;
    if condition_estimate > CONDITION_LIMIT {
        return Err(EngineError::IllConditioned {
            condition_estimate,
            det_m: det.det,
            arg_det_m: det.arg_wrapped,
            log_abs_det: det.log_abs_det,
            residual,
        });
    }
    let quad = lambda.dot(&x); // bilinear: Λ is real

    let log_magnitude =
        (m * (n - 1)) as f64 * 2f64.ln() - 0.5 * quad.re - 0.5 * det.log_abs_det;
    let phase = -0.5 * quad.im - 0.5 * det.arg_continued;
    let value = Complex64::from_polar(log_magnitude.exp(), phase);

    Ok(InvariantResult {
        value,
        det_m: det.det,
        arg_det_m: det.arg_wrapped,
        log_abs_det: det.log_abs_det,
        log_magnitude,
        condition_estimate,
        branch_note: det.branch_note,
    })
}

/// The multivariate trace `tr(ρ₁ρ₂…ρₙ)` of an ordered tuple, `n ≥ 2`.
pub fn bargmann_invariant(states: &[GaussianState]) -> Result<InvariantResult, EngineError> {
    invariant_core(states)
}

/// Two-state trace `tr(ρ₁ρ₂)` through the closed overlap formula
/// `2^m exp(−½ ΔᵀW⁻¹Δ)/√det W`, `W = V⁽¹⁾+V⁽²⁾`. Always in `(0, 1]` for
/// physical states.
pub fn overlap(a: &GaussianState, b: &GaussianState) -> Result<f64, EngineError> {
    if a.modes() != b.modes() {
        return Err(EngineError::MixedModes);
    }
    let m = a.modes();
    let w = a.cov() + b.cov();
    let chol = w.clone().cholesky().ok_or(EngineError::Singular)?;
    let log_det: f64 = (0..w.nrows()).map(|i| chol.l()[(i, i)].ln()).sum::<f64>() * 2.0;
    let delta = a.mean() - b.mean();
    let x = chol.solve(&delta);
    let quad = delta.dot(&x);
    Ok((m as f64 * 2f64.ln() - 0.5 * quad - 0.5 * log_det).exp())
}

/// `tr(ρⁿ)` through the determinant route (all states equal in the block
/// matrix). The result must be real positive; an imaginary fraction above
/// `1e−9` is an error.
pub fn trace_power_det(state: &GaussianState, n: usize) -> Result<InvariantResult, EngineError> {
    if n < 2 {
        return Err(EngineError::TooFewStates(n));
    }
    let states = vec![state.clone(); n];
    let mut result = invariant_core(&states)?;
    let norm = result.value.norm();
    if norm > 0.0 {
        let frac = result.value.im.abs() / norm;
        if frac > 1e-9 {
            return Err(EngineError::NonRealTracePower(frac));
        }
    }
    result.value = Complex64::new(result.value.re, 0.0);
    Ok(result)
}

/// `tr(ρⁿ)` through the symplectic spectrum:
/// `∏ₖ 2ⁿ / [(νₖ+1)ⁿ − (νₖ−1)ⁿ]`.
pub fn trace_power_symplectic(state: &GaussianState, n: usize) -> Result<f64, EngineError> {
    if n < 2 {
        return Err(EngineError::TooFewStates(n));
    }
    let nu = symplectic_eigenvalues(state.cov())?;
    let p = n as i32;
    Ok(nu
        .iter()
        .map(|&v| 2f64.powi(p) / ((v + 1.0).powi(p) - (v - 1.0).powi(p)))
        .product())
}

/// Determinant identity for the per-mode reduced block of the trace-power
/// system: the `(n−1)×(n−1)` matrix with `2ν` on the diagonal, `ν−1` above
/// and `ν+1` below has determinant `[(ν+1)ⁿ − (ν−1)ⁿ]/2`.
/// Returns `(lhs, rhs, relative defect)`.
pub fn thermal_block_det_check(nu: f64, n: usize) -> (f64, f64, f64) {
    assert!(n >= 2, "need n >= 2");
    let dim = n - 1;
    let mat = DMatrix::from_fn(dim, dim, |i, j| {
        if i == j {
            2.0 * nu
        } else if i < j {
            nu - 1.0
        } else {
            nu + 1.0
        }
    });
    let lhs = mat.determinant();
    let rhs = 0.5 * ((nu + 1.0).powi(n as i32) - (nu - 1.0).powi(n as i32));
    let defect = (lhs - rhs).abs() / rhs.abs().max(f64::MIN_POSITIVE);
    (lhs, rhs, defect)
}

/// Numeric-vs-closed-form check of the Gaussian integral
/// `∫ exp(−½ XᵀQX + LᵀX) dX = √((2π)ᵈ / det Q) · exp(½ LᵀQ⁻¹L)`
/// for complex symmetric `Q` with positive-definite real part, `d ≤ 3`.
#[derive(Debug, Clone)]
pub struct GaussianIntegralCheck {
    pub numeric: Complex64,
    pub closed_form: Complex64,
    pub defect: f64,
}

pub fn gaussian_integral_check(
    q: &DMatrix<Complex64>,
    l: &DVector<Complex64>,
) -> Result<GaussianIntegralCheck, EngineError> {
    let d = q.nrows();
    if d == 0 || d > 3 || q.ncols() != d {
        return Err(EngineError::QuadratureDimension(d));
    }
    if l.len() != d {
        return Err(EngineError::State(StateError::VectorLength { len: l.len(), dim: d }));
    }

    let (log_abs_det, arg_det) = linalg::log_det_continued(q)?;
    let lu = ComplexLu::factor(q.clone());
    let x = lu.solve(l)?;
    let quad = l.dot(&x);
    let log_mag = 0.5 * (d as f64) * (2.0 * std::f64::consts::PI).ln() - 0.5 * log_abs_det
        + 0.5 * quad.re;
    let phase = -0.5 * arg_det + 0.5 * quad.im;
    let closed_form = Complex64::from_polar(log_mag.exp(), phase);

    // Truncation box: center on the maximum of the |integrand| weight and
    // extend until the Gaussian envelope has decayed to ~e^{-45}.
    let c = q.map(|z| z.re);
    let lambda_min = linalg::symmetric_eigenvalues(&c)[0];
    let re_l = l.map(|z| z.re);
    let center = c
        .clone()
        .cholesky()
        .map(|ch| ch.solve(&re_l))
        .unwrap_or_else(|| DVector::zeros(d));
    let half_width = (2.0 * 45.0 / lambda_min).sqrt();
    let lo: Vec<f64> = (0..d).map(|i| center[i] - half_width).collect();
    let hi: Vec<f64> = (0..d).map(|i| center[i] + half_width).collect();

    let f = |p: &[f64]| -> Complex64 {
        let mut s = Complex64::new(0.0, 0.0);
        for i in 0..d {
            s += l[i] * p[i];
            for j in 0..d {
                s -= 0.5 * q[(i, j)] * p[i] * p[j];
            }
        }
        s.exp()
    };
    let tol = if d <= 2 { 1e-9 } else { 1e-7 } * closed_form.norm().max(1e-3);
    let numeric = quadrature::integrate_box(&f, &lo, &hi, tol);
    let defect = (numeric - closed_form).norm() / closed_form.norm().max(f64::MIN_POSITIVE);
    Ok(GaussianIntegralCheck { numeric, closed_form, defect })
}
