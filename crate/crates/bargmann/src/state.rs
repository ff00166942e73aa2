//! Gaussian states: construction, physicality validation, and JSON specs.
//!
//! A state is the pair `(X̄, V)` with `X̄ ∈ ℝ^{2m}` and `V` real symmetric
//! satisfying the uncertainty principle `V + iΩ ⪰ 0` (which implies
//! `V ≻ 0`). All constructors here produce the `q = a + a†` convention in
//! which the vacuum covariance is the identity; see the crate docs if your
//! covariances come from a `V_vac = I/2` library.
//!
//! Validation is tolerance-banded: pure states sit exactly on the boundary
//! of the uncertainty inequality, so round-trip constructions routinely
//! graze it. States within `tol` pass, states within `10·tol` are accepted
//! with [`ValidationStatus::Marginal`] (query [`GaussianState::boundary_clamped`]),
//! and anything worse is rejected.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::hermitian_eigenvalues;
use crate::symplectic::{block_diag_copies, direct_sum, random_symplectic, symplectic_form};

#[derive(Debug, Error)]
pub enum StateError {
    #[error("mode count must be at least 1")]
    ZeroModes,
    #[error("covariance must be square with even dimension, got {rows}x{cols}")]
    BadShape { rows: usize, cols: usize },
    #[error("mean length {len} does not match covariance dimension {dim}")]
    MeanLength { len: usize, dim: usize },
    #[error("covariance is not symmetric (defect {defect:.3e}, tolerance {tol:.3e})")]
    NotSymmetric { defect: f64, tol: f64 },
    #[error("covariance is not positive definite (min eigenvalue {0:.3e})")]
    NotPositiveDefinite(f64),
    #[error("uncertainty principle violated (min eigenvalue of V+iΩ is {min_eig:.3e}, tolerance {tol:.3e})")]
    Unphysical { min_eig: f64, tol: f64 },
    #[error("thermal occupation must be nonnegative, got {0}")]
    NegativeOccupation(f64),
    #[error("tensor spec needs at least one part")]
    EmptyTensor,
    #[error("vector length {len} does not match 2m = {dim}")]
    VectorLength { len: usize, dim: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValidationStatus {
    Pass,
    /// Outside tolerance but within 10× of it: accepted with a warning flag.
    Marginal,
    Fail,
}

/// Outcome of the physicality checks on `(X̄, V)`.
#[derive(Debug, Clone, Copy)]
pub struct ValidationReport {
    /// `max |V − Vᵀ|`.
    pub symmetry_defect: f64,
    /// Minimum eigenvalue of the Hermitian matrix `V + iΩ`.
    pub min_eig_uncertainty: f64,
    /// Minimum eigenvalue of `V`.
    pub min_eig_cov: f64,
    /// Physicality tolerance the report was evaluated against.
    pub tol: f64,
    pub status: ValidationStatus,
}

impl ValidationReport {
    pub fn passes(&self) -> bool {
        self.status == ValidationStatus::Pass
    }

    pub fn accepted(&self) -> bool {
        self.status != ValidationStatus::Fail
    }
}

/// Default physicality tolerance, scaled to the covariance magnitude.
pub fn default_tol_phys(cov: &DMatrix<f64>) -> f64 {
    1e-9 * (1.0 + cov.amax())
}

/// An `m`-mode Gaussian state `(X̄, V)`. Immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianState {
    modes: usize,
    mean: DVector<f64>,
    cov: DMatrix<f64>,
    clamped: bool,
}

impl GaussianState {
    /// Build a state from raw parts, validating shape and physicality at
    /// the default tolerance.
    pub fn from_parts(mean: DVector<f64>, cov: DMatrix<f64>) -> Result<Self, StateError> {
        let report = validate_parts(&mean, &cov, default_tol_phys(&cov))?;
        match report.status {
            ValidationStatus::Fail => Err(report_to_error(&report, &cov)),
            status => Ok(GaussianState {
                modes: cov.nrows() / 2,
                mean,
                cov,
                clamped: status == ValidationStatus::Marginal,
            }),
        }
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn mean(&self) -> &DVector<f64> {
        &self.mean
    }

    pub fn cov(&self) -> &DMatrix<f64> {
        &self.cov
    }

    /// True when construction only passed the 10× marginal band.
    pub fn boundary_clamped(&self) -> bool {
        self.clamped
    }

    /// Re-run the physicality checks at tolerance `tol`.
    pub fn validate(&self, tol: f64) -> ValidationReport {
        validate_parts(&self.mean, &self.cov, tol).expect("constructed state has valid shape")
    }

    /// Purity test via `|det V − 1| ≤ 1e−8 · 2^{2m}`.
    pub fn is_pure(&self) -> bool {
        (self.cov.determinant() - 1.0).abs() <= 1e-8 * 2f64.powi(2 * self.modes as i32)
    }

    /// Complex conjugate in the Fock basis: `X̄ → (⊕Z) X̄`,
    /// `V → (⊕Z) V (⊕Z)` with `Z = diag(1, −1)`. An involution.
    pub fn conjugate(&self) -> Self {
        let sign = |i: usize| if i.is_multiple_of(2) { 1.0 } else { -1.0 };
        let mean = DVector::from_fn(self.mean.len(), |i, _| sign(i) * self.mean[i]);
        let cov = DMatrix::from_fn(self.cov.nrows(), self.cov.ncols(), |i, j| {
            sign(i) * sign(j) * self.cov[(i, j)]
        });
        GaussianState { modes: self.modes, mean, cov, clamped: self.clamped }
    }

    /// Tensor product: modes add, means concatenate, covariances direct-sum.
    pub fn tensor(&self, other: &Self) -> Self {
        let mean = DVector::from_iterator(
            self.mean.len() + other.mean.len(),
            self.mean.iter().chain(other.mean.iter()).cloned(),
        );
        GaussianState {
            modes: self.modes + other.modes,
            mean,
            cov: direct_sum(&self.cov, &other.cov),
            clamped: self.clamped || other.clamped,
        }
    }

    /// Characteristic function `χ(ξ) = exp[−½ ξᵀ(ΩVΩᵀ)ξ − i(ΩX̄)ᵀξ]`.
    /// `|χ| ≤ 1` for physical states, with `χ(0) = 1`.
    pub fn characteristic_function(&self, xi: &DVector<f64>) -> Result<Complex64, StateError> {
        let dim = 2 * self.modes;
        if xi.len() != dim {
            return Err(StateError::VectorLength { len: xi.len(), dim });
        }
        let om = symplectic_form(self.modes)?.matrix().clone();
        let oxi = om.transpose() * xi; // Ωᵀξ
        let quad = (&oxi.transpose() * &self.cov * &oxi)[(0, 0)];
        let lin = (om * &self.mean).dot(xi);
        Ok(Complex64::new(-0.5 * quad, -lin).exp())
    }
}

fn report_to_error(report: &ValidationReport, cov: &DMatrix<f64>) -> StateError {
    let tol_sym = 1e-12 * (1.0 + cov.amax());
    if report.symmetry_defect > 10.0 * tol_sym {
        StateError::NotSymmetric { defect: report.symmetry_defect, tol: tol_sym }
    } else if report.min_eig_uncertainty < -10.0 * report.tol {
        StateError::Unphysical { min_eig: report.min_eig_uncertainty, tol: report.tol }
    } else {
        StateError::NotPositiveDefinite(report.min_eig_cov)
    }
}

/// Validate raw `(X̄, V)` at tolerance `tol`. Shape problems are errors;
/// physicality problems are reported in the returned status.
pub fn validate_parts(
    mean: &DVector<f64>,
    cov: &DMatrix<f64>,
    tol: f64,
) -> Result<ValidationReport, StateError> {
    let dim = cov.nrows();
    if cov.ncols() != dim || dim == 0 || !dim.is_multiple_of(2) {
        return Err(StateError::BadShape { rows: cov.nrows(), cols: cov.ncols() });
    }
    if mean.len() != dim {
        return Err(StateError::MeanLength { len: mean.len(), dim });
    }
    let m = dim / 2;
    let symmetry_defect = (cov - cov.transpose()).amax();
    let tol_sym = 1e-12 * (1.0 + cov.amax());

    let min_eig_cov = SymmetricEigen::new(cov.clone())
        .eigenvalues
        .iter()
        .cloned()
        .fold(f64::INFINITY, f64::min);

    let om = symplectic_form(m)?.matrix().clone();
    let herm = DMatrix::from_fn(dim, dim, |i, j| Complex64::new(cov[(i, j)], om[(i, j)]));
    let min_eig_uncertainty = hermitian_eigenvalues(&herm)[0];

    let band = |defect_ok: bool, marginal_ok: bool| -> ValidationStatus {
        if defect_ok {
            ValidationStatus::Pass
        } else if marginal_ok {
            ValidationStatus::Marginal
        } else {
            ValidationStatus::Fail
        }
    };
    let sym = band(symmetry_defect <= tol_sym, symmetry_defect <= 10.0 * tol_sym);
    let unc = band(min_eig_uncertainty >= -tol, min_eig_uncertainty >= -10.0 * tol);
    let pd = band(min_eig_cov > -tol, min_eig_cov > -10.0 * tol);

    let status = [sym, unc, pd]
        .into_iter()
        .max_by_key(|s| match s {
            ValidationStatus::Pass => 0,
            ValidationStatus::Marginal => 1,
            ValidationStatus::Fail => 2,
        })
        .unwrap();

    Ok(ValidationReport { symmetry_defect, min_eig_uncertainty, min_eig_cov, tol, status })
}

/// Validate an already-constructed state at tolerance `tol`.
pub fn validate_state(state: &GaussianState, tol: f64) -> ValidationReport {
    state.validate(tol)
}

/// One-mode squeezed coherent state `|ζ, α⟩`: mean `2(Re α, Im α)` and the
/// unit-determinant covariance determined by `ζ = |ζ| e^{iφ}`.
pub fn make_squeezed_coherent(zeta: Complex64, alpha: Complex64) -> GaussianState {
    let r = zeta.norm();
    let phi = if r == 0.0 { 0.0 } else { zeta.arg() };
    let (ch, sh) = ((2.0 * r).cosh(), (2.0 * r).sinh());
    let cov = DMatrix::from_row_slice(
        2,
        2,
        &[
            ch + phi.cos() * sh,
            phi.sin() * sh,
            phi.sin() * sh,
            ch - phi.cos() * sh,
        ],
    );
    let mean = DVector::from_vec(vec![2.0 * alpha.re, 2.0 * alpha.im]);
    GaussianState { modes: 1, mean, cov, clamped: false }
}

/// Glauber coherent state `|α⟩`.
pub fn make_coherent(alpha: Complex64) -> GaussianState {
    make_squeezed_coherent(Complex64::new(0.0, 0.0), alpha)
}

/// Squeezed vacuum `|ζ⟩`.
pub fn make_squeezed(zeta: Complex64) -> GaussianState {
    make_squeezed_coherent(zeta, Complex64::new(0.0, 0.0))
}

/// The vacuum: zero mean, identity covariance.
pub fn make_vacuum() -> GaussianState {
    make_squeezed_coherent(Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0))
}

/// One-mode thermal state with mean occupation `nbar ≥ 0`:
/// `V = (2 n̄ + 1) I₂`.
pub fn make_thermal(nbar: f64) -> Result<GaussianState, StateError> {
    if nbar.is_nan() || nbar < 0.0 {
        return Err(StateError::NegativeOccupation(nbar));
    }
    Ok(GaussianState {
        modes: 1,
        mean: DVector::zeros(2),
        cov: DMatrix::identity(2, 2) * (2.0 * nbar + 1.0),
        clamped: false,
    })
}

/// Deterministic random `modes`-mode state: `V = S (⊕ νₖ I₂) Sᵀ` with
/// `νₖ` uniform in `[1, 1 + 2·max_nbar]` and `S = exp(ΩH)` for random
/// symmetric `H` with `‖H‖_F ≤ max_squeeze`; means uniform in `[−2, 2]`.
pub fn random_state(modes: usize, seed: u64, max_squeeze: f64, max_nbar: f64) -> GaussianState {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_state_with(modes, max_squeeze, max_nbar, &mut rng)
}

/// As [`random_state`] but drawing from a caller-supplied generator, for
/// building many states from one stream.
pub fn random_state_with<R: Rng>(
    modes: usize,
    max_squeeze: f64,
    max_nbar: f64,
    rng: &mut R,
) -> GaussianState {
    let dim = 2 * modes;
    let mut thermal = DMatrix::zeros(dim, dim);
    for k in 0..modes {
        let nu = if max_nbar > 0.0 { 1.0 + rng.random_range(0.0..(2.0 * max_nbar)) } else { 1.0 };
        thermal[(2 * k, 2 * k)] = nu;
        thermal[(2 * k + 1, 2 * k + 1)] = nu;
    }
    let s = random_symplectic(modes, max_squeeze, rng);
    let mut cov = &s * thermal * s.transpose();
    cov = (&cov + cov.transpose()) * 0.5;
    let mean = DVector::from_fn(dim, |_, _| rng.random_range(-2.0..2.0));
    GaussianState::from_parts(mean, cov).expect("congruence of a thermal form stays physical")
}

/// `Z ⊕ Z ⊕ …` sign matrix used by conjugation; exposed for tests.
pub fn conjugation_signs(modes: usize) -> DMatrix<f64> {
    block_diag_copies(&DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0]), modes)
}

/// Serializable state description used by the CLI and file interfaces.
///
/// ```json
/// {"type":"coherent","alpha":[re,im]}
/// {"type":"squeezed_coherent","zeta":[re,im],"alpha":[re,im]}
/// {"type":"squeezed","zeta":[re,im]}
/// {"type":"thermal","nbar":0.5}
/// {"type":"vacuum"}
/// {"type":"explicit","mean":[...],"cov":[[...],...]}
/// {"type":"tensor","parts":[...]}
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum StateSpec {
    Coherent { alpha: [f64; 2] },
    SqueezedCoherent { zeta: [f64; 2], alpha: [f64; 2] },
    Squeezed { zeta: [f64; 2] },
    Thermal { nbar: f64 },
    Vacuum,
    Explicit { mean: Vec<f64>, cov: Vec<Vec<f64>> },
    Tensor { parts: Vec<StateSpec> },
}

impl StateSpec {
    pub fn build(&self) -> Result<GaussianState, StateError> {
        match self {
            StateSpec::Coherent { alpha } => Ok(make_coherent(Complex64::new(alpha[0], alpha[1]))),
            StateSpec::SqueezedCoherent { zeta, alpha } => Ok(make_squeezed_coherent(
                Complex64::new(zeta[0], zeta[1]),
                Complex64::new(alpha[0], alpha[1]),
            )),
            StateSpec::Squeezed { zeta } => Ok(make_squeezed(Complex64::new(zeta[0], zeta[1]))),
            StateSpec::Thermal { nbar } => make_thermal(*nbar),
            StateSpec::Vacuum => Ok(make_vacuum()),
            StateSpec::Explicit { mean, cov } => {
                let rows = cov.len();
                let cols = cov.first().map_or(0, |r| r.len());
                if rows == 0 || cov.iter().any(|r| r.len() != cols) {
                    return Err(StateError::BadShape { rows, cols });
                }
                let m = DMatrix::from_fn(rows, cols, |i, j| cov[i][j]);
                GaussianState::from_parts(DVector::from_vec(mean.clone()), m)
            }
            StateSpec::Tensor { parts } => {
                let mut iter = parts.iter();
                let first = iter.next().ok_or(StateError::EmptyTensor)?.build()?;
                iter.try_fold(first, |acc, p| Ok(acc.tensor(&p.build()?)))
            }
        }
    }
}
