//! Complex linear-algebra primitives shared by the trace engine.
//!
//! The determinant of the engine's block matrix is kept in log form
//! (`ln|det|` plus an accumulated argument) so that large systems cannot
//! overflow, and its square root is taken on the branch reached by
//! continuous deformation from the positive-definite case — the branch on
//! which the underlying Gaussian integral converges. The raw argument can
//! wind several times around the origin for strongly squeezed inputs, so
//! no fixed cut of the final determinant value would do.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LinalgError {
    #[error("matrix is numerically singular")]
    Singular,
    #[error("matrix real part is not positive definite (min eigenvalue {0:.3e})")]
    RealPartNotPositive(f64),
}

/// Pivoted LU factorization of a complex matrix with the determinant held
/// as `(ln|det|, arg)` accumulated from the pivots.
pub struct ComplexLu {
    lu: nalgebra::LU<Complex64, nalgebra::Dyn, nalgebra::Dyn>,
    log_abs_det: f64,
    /// Sum of pivot arguments plus permutation parity; reduced to a
    /// principal interval only by the caller.
    arg_det: f64,
    singular: bool,
}

impl ComplexLu {
    pub fn factor(m: DMatrix<Complex64>) -> Self {
        let n = m.nrows();
        let lu = m.lu();
        let mut log_abs_det = 0.0;
        let mut arg_det = 0.0;
        let mut singular = false;
        let u = lu.u();
        for i in 0..n {
            let p = u[(i, i)];
            if p.norm() == 0.0 {
                singular = true;
                break;
            }
            log_abs_det += p.norm().ln();
            arg_det += p.arg();
        }
        let parity: f64 = lu.p().determinant();
        if parity < 0.0 {
            arg_det += std::f64::consts::PI;
        }
        ComplexLu { lu, log_abs_det, arg_det, singular }
    }

    pub fn is_singular(&self) -> bool {
        self.singular
    }

    /// `ln|det|` of the factored matrix.
    pub fn log_abs_det(&self) -> f64 {
        self.log_abs_det
    }

    /// Argument of the determinant normalized into `[0, 2π)`.
    pub fn arg_det(&self) -> f64 {
        wrap_to_tau(self.arg_det)
    }

    /// Determinant as a plain complex number (may overflow to ∞ for very
    /// large systems; the log form above does not).
    pub fn det(&self) -> Complex64 {
        Complex64::from_polar(self.log_abs_det.exp(), self.arg_det)
    }

    pub fn solve(&self, b: &DVector<Complex64>) -> Result<DVector<Complex64>, LinalgError> {
        if self.singular {
            return Err(LinalgError::Singular);
        }
        self.lu.solve(b).ok_or(LinalgError::Singular)
    }

    /// Solve `a x = b` with one step of iterative refinement.
    /// Returns the solution and the final residual norm `‖a x − b‖₂`.
    pub fn solve_refined(
        &self,
        a: &DMatrix<Complex64>,
        b: &DVector<Complex64>,
    ) -> Result<(DVector<Complex64>, f64), LinalgError> {
        let mut x = self.solve(b)?;
        let r = b - a * &x;
        let dx = self.solve(&r)?;
        x += dx;
        let residual = (b - a * &x).norm();
        Ok((x, residual))
    }

    /// 1-norm condition estimate `‖a‖₁ · est(‖a⁻¹‖₁)` for a **complex
    /// symmetric** matrix, by Hager's power iteration on `a⁻¹`.
    ///
    /// Symmetry is what makes the adjoint solve cheap here:
    /// `aᴴ y = c  ⇔  a ȳ = c̄` when `a = aᵀ`.
    pub fn condest_symmetric(&self, a: &DMatrix<Complex64>) -> f64 {
        if self.singular {
            return f64::INFINITY;
        }
        let n = a.nrows();
        if n == 0 {
            return 1.0;
        }
        let norm_a = one_norm(a);
        let mut x = DVector::from_element(n, Complex64::new(1.0 / n as f64, 0.0));
        let mut est = 0.0_f64;
        for _ in 0..5 {
            let y = match self.solve(&x) {
                Ok(y) => y,
                Err(_) => return f64::INFINITY,
            };
            let y_norm1: f64 = y.iter().map(|z| z.norm()).sum();
            if y_norm1 <= est {
                break;
            }
            est = y_norm1;
            // ξ = sign(y), then z = a⁻ᴴ ξ via the symmetry trick.
            let xi = DVector::from_iterator(
                n,
                y.iter().map(|z| {
                    if z.norm() == 0.0 {
                        Complex64::new(1.0, 0.0)
                    } else {
                        z / z.norm()
                    }
                }),
            );
            let z = match self.solve(&xi.map(|c| c.conj())) {
                Ok(z) => z.map(|c| c.conj()),
                Err(_) => return f64::INFINITY,
            };
            let (j, zmax) = z
                .iter()
                .enumerate()
                .map(|(j, c)| (j, c.norm()))
                .fold((0, 0.0), |acc, it| if it.1 > acc.1 { it } else { acc });
            // Converged when the new direction offers no growth.
            let zx: f64 = z.iter().zip(x.iter()).map(|(a, b)| (a.conj() * b).re).sum();
            if zmax <= zx.abs() {
                break;
            }
            x = DVector::from_element(n, Complex64::new(0.0, 0.0));
            x[j] = Complex64::new(1.0, 0.0);
        }
        norm_a * est
    }
}

/// Normalize an angle into `[0, 2π)`. `rem_euclid` alone can round a tiny
/// negative input up to exactly 2π, stepping outside the half-open range.
pub fn wrap_to_tau(angle: f64) -> f64 {
    let out = angle.rem_euclid(std::f64::consts::TAU);
    if out >= std::f64::consts::TAU {
        0.0
    } else {
        out
    }
}

/// Maximum absolute column sum.
pub fn one_norm(a: &DMatrix<Complex64>) -> f64 {
    (0..a.ncols())
        .map(|j| a.column(j).iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// `ln|det|` and the *continued* argument of `det` for a complex symmetric
/// matrix whose real part is positive definite.
///
/// Writes `a = C + iD` with `C ≻ 0` and factors
/// `det a = det C · ∏ (1 + i μⱼ)` where `μⱼ` are the (real) eigenvalues of
/// `C^{-1/2} D C^{-1/2}`. Each factor stays in the right half-plane, so the
/// accumulated argument `Σ atan μⱼ` is the one reached by deforming `D → 0`
/// — the branch on which `∫ exp(−½ xᵀ a x) dx` converges. The result can
/// lie outside `(−π, π]`.
pub fn log_det_continued(a: &DMatrix<Complex64>) -> Result<(f64, f64), LinalgError> {
    let n = a.nrows();
    let c = a.map(|z| z.re);
    let d = a.map(|z| z.im);
    let eig_c = SymmetricEigen::new(c);
    let mut log_abs = 0.0;
    for &ci in eig_c.eigenvalues.iter() {
        if ci <= 0.0 {
            return Err(LinalgError::RealPartNotPositive(
                eig_c.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min),
            ));
        }
        log_abs += ci.ln();
    }
    // C^{-1/2} from the spectral factors of C.
    let r = &eig_c.eigenvectors;
    let inv_sqrt = DMatrix::from_diagonal(&eig_c.eigenvalues.map(|v| 1.0 / v.sqrt()));
    let c_inv_sqrt = r * inv_sqrt * r.transpose();
    let mut k = &c_inv_sqrt * d * &c_inv_sqrt;
    // Symmetrize against rounding before the symmetric eigensolve.
    k = (&k + k.transpose()) * 0.5;
    let mu = SymmetricEigen::new(k).eigenvalues;
    let mut arg = 0.0;
    for &m in mu.iter() {
        log_abs += 0.5 * (1.0 + m * m).ln();
        arg += m.atan();
    }
    let _ = n;
    Ok((log_abs, arg))
}

/// Eigenvalues of a Hermitian matrix, sorted ascending.
pub fn hermitian_eigenvalues(a: &DMatrix<Complex64>) -> Vec<f64> {
    let eig = SymmetricEigen::new(a.clone());
    let mut v: Vec<f64> = eig.eigenvalues.iter().cloned().collect();
    v.sort_by(|x, y| x.partial_cmp(y).unwrap());
    v
}

/// Eigenvalues of a real symmetric matrix, sorted ascending.
pub fn symmetric_eigenvalues(a: &DMatrix<f64>) -> Vec<f64> {
    let eig = SymmetricEigen::new(a.clone());
    let mut v: Vec<f64> = eig.eigenvalues.iter().cloned().collect();
    v.sort_by(|x, y| x.partial_cmp(y).unwrap());
    v
}

/// Promote a real matrix to a complex one.
pub fn complexify(a: &DMatrix<f64>) -> DMatrix<Complex64> {
    a.map(|x| Complex64::new(x, 0.0))
}
