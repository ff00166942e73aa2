//! The symplectic form, symplectic spectra, and random symplectic matrices.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rand::Rng;

use crate::linalg::hermitian_eigenvalues;
use crate::state::StateError;

/// The `2m × 2m` symplectic form `Ω = ⊕ₖ ω`, `ω = [[0, 1], [−1, 0]]`,
/// encoding `[X̂ⱼ, X̂ₖ] = 2i Ωⱼₖ` in the `q = a + a†` convention.
#[derive(Debug, Clone, PartialEq)]
pub struct SymplecticForm {
    modes: usize,
    matrix: DMatrix<f64>,
}

impl SymplecticForm {
    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }
}

/// The one-mode block `ω`.
pub fn omega() -> DMatrix<f64> {
    DMatrix::from_row_slice(2, 2, &[0.0, 1.0, -1.0, 0.0])
}

/// Build `Ω` for `modes ≥ 1`.
pub fn symplectic_form(modes: usize) -> Result<SymplecticForm, StateError> {
    if modes == 0 {
        return Err(StateError::ZeroModes);
    }
    Ok(SymplecticForm { modes, matrix: block_diag_copies(&omega(), modes) })
}

/// Direct sum of two square matrices.
pub fn direct_sum(a: &DMatrix<f64>, b: &DMatrix<f64>) -> DMatrix<f64> {
    let (na, nb) = (a.nrows(), b.nrows());
    let mut out = DMatrix::zeros(na + nb, na + nb);
    out.view_mut((0, 0), (na, na)).copy_from(a);
    out.view_mut((na, na), (nb, nb)).copy_from(b);
    out
}

/// `n`-fold direct sum of one block.
pub fn block_diag_copies(block: &DMatrix<f64>, n: usize) -> DMatrix<f64> {
    let b = block.nrows();
    let mut out = DMatrix::zeros(b * n, b * n);
    for k in 0..n {
        out.view_mut((b * k, b * k), (b, b)).copy_from(block);
    }
    out
}

/// Symplectic eigenvalues `ν₁ ≤ ν₂ ≤ … ≤ νₘ` of a positive-definite
/// covariance matrix.
///
/// Computed as the positive half of the spectrum of the Hermitian matrix
/// `i V^{1/2} Ω V^{1/2}`, which shares its eigenvalues with `iΩV`; the
/// raw spectrum is `{±νₖ}` and the paired absolute values are averaged.
/// Physical states have all `νₖ ≥ 1`.
pub fn symplectic_eigenvalues(v: &DMatrix<f64>) -> Result<Vec<f64>, StateError> {
    let dim = v.nrows();
    if v.ncols() != dim || dim == 0 || !dim.is_multiple_of(2) {
        return Err(StateError::BadShape { rows: v.nrows(), cols: v.ncols() });
    }
    let m = dim / 2;
    let eig = SymmetricEigen::new(v.clone());
    let min_eig = eig.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min);
    if min_eig <= 0.0 {
        return Err(StateError::NotPositiveDefinite(min_eig));
    }
    let r = &eig.eigenvectors;
    let sqrt_v = r * DMatrix::from_diagonal(&eig.eigenvalues.map(f64::sqrt)) * r.transpose();
    let omega_big = symplectic_form(m)?.matrix().clone();
    let w = &sqrt_v * omega_big * &sqrt_v;
    // i·W is Hermitian for antisymmetric real W.
    let k = DMatrix::from_fn(dim, dim, |i, j| Complex64::new(0.0, w[(i, j)]));
    let spectrum = hermitian_eigenvalues(&k);
    let mut abs: Vec<f64> = spectrum.iter().map(|x| x.abs()).collect();
    abs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let scale = 1.0 + abs[dim - 1];
    let nu = (0..m)
        .map(|k| {
            debug_assert!(
                (abs[2 * k + 1] - abs[2 * k]).abs() <= 1e-8 * scale,
                "±ν pairing split beyond tolerance: {} vs {}",
                abs[2 * k],
                abs[2 * k + 1]
            );
            0.5 * (abs[2 * k] + abs[2 * k + 1])
        })
        .collect();
    Ok(nu)
}

/// Random symplectic `S = exp(ΩH)` with `H` symmetric and `‖H‖_F` drawn
/// uniformly from `[0, max_squeeze]`.
pub fn random_symplectic<R: Rng>(modes: usize, max_squeeze: f64, rng: &mut R) -> DMatrix<f64> {
    let dim = 2 * modes;
    let mut h = DMatrix::zeros(dim, dim);
    for i in 0..dim {
        for j in i..dim {
            let x: f64 = rng.random_range(-1.0..1.0);
            h[(i, j)] = x;
            h[(j, i)] = x;
        }
    }
    let norm = h.norm();
    if norm > 0.0 && max_squeeze > 0.0 {
        let target: f64 = rng.random_range(0.0..max_squeeze);
        h *= target / norm;
    } else {
        h.fill(0.0);
    }
    let omega_big = block_diag_copies(&omega(), modes);
    (omega_big * h).exp()
}
