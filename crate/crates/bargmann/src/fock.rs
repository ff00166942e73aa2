//! Truncated Fock-space oracle.
//!
//! Everything here is deliberately brute force: states are built as
//! explicit vectors or density matrices in the number basis `{|l⟩}` at a
//! finite truncation `N`, and multivariate traces are evaluated by plain
//! matrix products. The only purpose is to cross-validate the covariance
//! engine on an independent path, so clarity beats cleverness throughout.
//!
//! Displacement is the matrix exponential of `α a† − α* a`, built at a
//! padded truncation and cut back to `N` so that the retained block is
//! unitary to high accuracy. Truncation error is tracked as `tail_mass`,
//! the probability weight lost beyond level `N − 1`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use thiserror::Error;

use crate::state::StateSpec;

/// Hard ceiling for adaptive truncation growth.
pub const MAX_TRUNCATION: usize = 512;
/// Hard ceiling on the total dimension of Kronecker-product oracles.
pub const MAX_PRODUCT_DIM: usize = 4096;

#[derive(Debug, Error)]
pub enum FockError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("empty state list")]
    Empty,
    #[error("total dimension {0} exceeds the product-state cap {1}")]
    DimensionCap(usize, usize),
    #[error("state family not representable by the one-mode oracle")]
    Unsupported,
}

/// A truncated Fock-space state: either a pure vector or a density matrix,
/// with the estimated probability weight lost to truncation.
#[derive(Debug, Clone)]
pub struct FockState {
    kind: FockKind,
    tail_mass: f64,
}

#[derive(Debug, Clone)]
pub enum FockKind {
    Pure(DVector<Complex64>),
    Density(DMatrix<Complex64>),
}

impl FockState {
    pub fn dim(&self) -> usize {
        match &self.kind {
            FockKind::Pure(v) => v.len(),
            FockKind::Density(d) => d.nrows(),
        }
    }

    pub fn tail_mass(&self) -> f64 {
        self.tail_mass
    }

    pub fn kind(&self) -> &FockKind {
        &self.kind
    }

    pub fn as_vector(&self) -> Option<&DVector<Complex64>> {
        match &self.kind {
            FockKind::Pure(v) => Some(v),
            FockKind::Density(_) => None,
        }
    }

    /// Density-matrix form (projector for pure states).
    pub fn density(&self) -> DMatrix<Complex64> {
        match &self.kind {
            FockKind::Pure(v) => v * v.adjoint(),
            FockKind::Density(d) => d.clone(),
        }
    }

    /// Trace of the retained block (norm² for pure states).
    pub fn retained_mass(&self) -> f64 {
        match &self.kind {
            FockKind::Pure(v) => v.norm_squared(),
            FockKind::Density(d) => d.diagonal().iter().map(|z| z.re).sum(),
        }
    }
}

/// Coherent state `|α⟩` truncated to `N` levels:
/// amplitudes `e^{−|α|²/2} αˡ/√(l!)`.
pub fn coherent_vector(alpha: Complex64, n: usize) -> FockState {
    assert!(n >= 1);
    let mut v = DVector::zeros(n);
    let mut amp = Complex64::new((-0.5 * alpha.norm_sqr()).exp(), 0.0);
    for l in 0..n {
        v[l] = amp;
        amp = amp * alpha / ((l + 1) as f64).sqrt();
    }
    let tail = (1.0 - v.norm_squared()).max(0.0);
    FockState { kind: FockKind::Pure(v), tail_mass: tail }
}

/// Squeezed vacuum `|ζ⟩` truncated to `N` levels: only even levels are
/// populated, with `(e^{iφ} tanh|ζ|)ˡ √((2l)!)/(2ˡ l!)` under the
/// `1/√cosh|ζ|` prefactor, `φ = arg ζ`.
///
/// The sign of the even-level phase factor is fixed by consistency with
/// the covariance convention of [`crate::state::make_squeezed`]: real
/// `ζ > 0` anti-squeezes `q` (variance `e^{2ζ}`), so `⟨a²⟩ > 0` and the
/// amplitudes carry `+e^{iφ}`. The analytic overlap [`squeezed_overlap`]
/// is unaffected — the sign cancels in every bra-ket pair.
pub fn squeezed_vector(zeta: Complex64, n: usize) -> FockState {
    assert!(n >= 1);
    let r = zeta.norm();
    let mut v = DVector::zeros(n);
    if r == 0.0 {
        v[0] = Complex64::new(1.0, 0.0);
        return FockState { kind: FockKind::Pure(v), tail_mass: 0.0 };
    }
    let factor = Complex64::from_polar(r.tanh(), zeta.arg());
    let mut amp = Complex64::new(1.0 / r.cosh().sqrt(), 0.0);
    let mut l = 0usize;
    loop {
        let level = 2 * l;
        if level >= n {
            break;
        }
        v[level] = amp;
        // ratio from |2l⟩ to |2(l+1)⟩
        let lr = l as f64;
        amp = amp * factor * ((2.0 * lr + 2.0) * (2.0 * lr + 1.0)).sqrt() / (2.0 * (lr + 1.0));
        l += 1;
    }
    let tail = (1.0 - v.norm_squared()).max(0.0);
    FockState { kind: FockKind::Pure(v), tail_mass: tail }
}

fn annihilation(n: usize) -> DMatrix<Complex64> {
    DMatrix::from_fn(n, n, |i, j| {
        if j == i + 1 {
            Complex64::new((j as f64).sqrt(), 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

fn displacement_pad(alpha: Complex64) -> usize {
    (8.0 * alpha.norm()).ceil() as usize + 8
}

/// Displacement operator `exp(α a† − α* a)` on the retained `N × N` block,
/// built at truncation `N + pad` and cut back. The padding makes the
/// retained entries match the infinite-dimensional operator to ~1e−8 for
/// `|α| ≤ 2`; columns near the truncation edge still lose mass to the
/// discarded levels, as any finite block of a displacement must.
pub fn displacement_matrix(alpha: Complex64, n: usize) -> DMatrix<Complex64> {
    assert!(n >= 1);
    let padded = n + displacement_pad(alpha);
    let a = annihilation(padded);
    let gen = a.adjoint() * alpha - &a * alpha.conj();
    let exp = gen.exp();
    exp.view((0, 0), (n, n)).into_owned()
}

/// Apply `exp(α a† − α* a)` to a vector without forming the matrix: the
/// generator couples only adjacent levels, so scaled Taylor steps are
/// exact to machine precision at `O(steps · terms · N)` cost.
fn displace_apply(alpha: Complex64, v: &DVector<Complex64>) -> DVector<Complex64> {
    let n = v.len();
    let apply_gen = |u: &DVector<Complex64>| -> DVector<Complex64> {
        DVector::from_fn(n, |k, _| {
            let mut out = Complex64::new(0.0, 0.0);
            if k >= 1 {
                out += alpha * (k as f64).sqrt() * u[k - 1];
            }
            if k + 1 < n {
                out -= alpha.conj() * ((k + 1) as f64).sqrt() * u[k + 1];
            }
            out
        })
    };
    let gen_norm = 2.0 * alpha.norm() * (n as f64).sqrt();
    let steps = (2.0 * gen_norm).ceil().max(1.0) as usize;
    let inv = 1.0 / steps as f64;
    let mut out = v.clone();
    for _ in 0..steps {
        let mut term = out.clone();
        let mut acc = out;
        for k in 1..40 {
            term = apply_gen(&term) * Complex64::new(inv / k as f64, 0.0);
            acc += &term;
            if term.norm() < 1e-18 * acc.norm() {
                break;
            }
        }
        out = acc;
    }
    out
}

/// Squeezed coherent state `D(α)|ζ⟩` at truncation `N`, computed at padded
/// truncation and cut.
pub fn squeezed_coherent_vector(zeta: Complex64, alpha: Complex64, n: usize) -> FockState {
    assert!(n >= 1);
    let padded = n + displacement_pad(alpha);
    let sq = squeezed_vector(zeta, padded);
    let full = displace_apply(alpha, sq.as_vector().expect("squeezed_vector is pure"));
    let v = full.rows(0, n).into_owned();
    let tail = (1.0 - v.norm_squared()).max(0.0);
    FockState { kind: FockKind::Pure(v), tail_mass: tail }
}

/// Thermal state at occupation `n̄`: diagonal density
/// `p_l = n̄ˡ/(n̄+1)^{l+1}`, with exact geometric tail `(n̄/(n̄+1))^N`.
pub fn thermal_density(nbar: f64, n: usize) -> FockState {
    assert!(n >= 1);
    assert!(nbar >= 0.0);
    let mut d = DMatrix::zeros(n, n);
    if nbar == 0.0 {
        d[(0, 0)] = Complex64::new(1.0, 0.0);
        return FockState { kind: FockKind::Density(d), tail_mass: 0.0 };
    }
    let ratio = nbar / (nbar + 1.0);
    let mut p = 1.0 / (nbar + 1.0);
    for l in 0..n {
        d[(l, l)] = Complex64::new(p, 0.0);
        p *= ratio;
    }
    FockState { kind: FockKind::Density(d), tail_mass: ratio.powi(n as i32) }
}

/// Brute-force multivariate trace `tr(ρ₁ρ₂…ρₙ)` by sequential matrix
/// products — `O(n·N³)`, exactly cyclic by construction.
pub fn multivariate_trace_fock(states: &[FockState]) -> Result<Complex64, FockError> {
    if states.is_empty() {
        return Err(FockError::Empty);
    }
    let n = states[0].dim();
    for s in states {
        if s.dim() != n {
            return Err(FockError::DimensionMismatch(n, s.dim()));
        }
    }
    let mut product = states[0].density();
    for s in &states[1..] {
        product *= s.density();
    }
    Ok(product.diagonal().sum())
}

/// Analytic coherent overlap `⟨α₁|α₂⟩ = exp[α₁*α₂ − ½(|α₁|²+|α₂|²)]`.
pub fn coherent_overlap(a1: Complex64, a2: Complex64) -> Complex64 {
    (a1.conj() * a2 - 0.5 * (a1.norm_sqr() + a2.norm_sqr())).exp()
}

/// Analytic squeezed-vacuum overlap
/// `⟨ζ₁|ζ₂⟩ = [cosh|ζ₁| cosh|ζ₂| − e^{i(φ₂−φ₁)} sinh|ζ₁| sinh|ζ₂|]^{−1/2}`.
///
/// The radicand has strictly positive real part, so the continued square
/// root is the ordinary principal one.
pub fn squeezed_overlap(z1: Complex64, z2: Complex64) -> Complex64 {
    let (r1, r2) = (z1.norm(), z2.norm());
    let (p1, p2) = (z1.arg(), z2.arg());
    let radicand = Complex64::new(r1.cosh() * r2.cosh(), 0.0)
        - Complex64::from_polar(r1.sinh() * r2.sinh(), p2 - p1);
    1.0 / radicand.sqrt()
}

/// Oracle configuration: starting truncation and the adaptive tail target.
#[derive(Debug, Clone, Copy)]
pub struct OracleOptions {
    pub truncation: usize,
    pub tail_target: f64,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions { truncation: 60, tail_target: 1e-10 }
    }
}

/// Build the oracle density matrix for a recognized spec at truncation `n`.
/// Recognized: the one-mode families, and tensor products of them (via
/// Kronecker products) while the total dimension stays under
/// [`MAX_PRODUCT_DIM`].
pub fn density_for_spec(spec: &StateSpec, n: usize) -> Result<FockState, FockError> {
    match spec {
        StateSpec::Vacuum => Ok(coherent_vector(Complex64::new(0.0, 0.0), n)),
        StateSpec::Coherent { alpha } => Ok(coherent_vector(Complex64::new(alpha[0], alpha[1]), n)),
        StateSpec::Squeezed { zeta } => Ok(squeezed_vector(Complex64::new(zeta[0], zeta[1]), n)),
        StateSpec::SqueezedCoherent { zeta, alpha } => Ok(squeezed_coherent_vector(
            Complex64::new(zeta[0], zeta[1]),
            Complex64::new(alpha[0], alpha[1]),
            n,
        )),
        StateSpec::Thermal { nbar } => Ok(thermal_density(*nbar, n)),
        StateSpec::Tensor { parts } => {
            if parts.is_empty() {
                return Err(FockError::Empty);
            }
            let mut acc: Option<FockState> = None;
            let mut tail = 0.0;
            for p in parts {
                let st = density_for_spec(p, n)?;
                tail += st.tail_mass();
                acc = Some(match acc {
                    None => st,
                    Some(prev) => {
                        let total = prev
                            .dim()
                            .checked_mul(st.dim())
                            .ok_or(FockError::DimensionCap(usize::MAX, MAX_PRODUCT_DIM))?;
                        if total > MAX_PRODUCT_DIM {
                            return Err(FockError::DimensionCap(total, MAX_PRODUCT_DIM));
                        }
                        FockState {
                            kind: FockKind::Density(prev.density().kronecker(&st.density())),
                            tail_mass: 0.0,
                        }
                    }
                });
            }
            let mut out = acc.expect("non-empty parts");
            out.tail_mass = tail;
            Ok(out)
        }
        StateSpec::Explicit { .. } => Err(FockError::Unsupported),
    }
}

/// Adaptive oracle for a tuple of recognized specs: doubles the truncation
/// until every constituent's tail mass is below target (or the cap is
/// hit), then takes the brute-force trace.
///
/// Returns the trace, the truncation used, and the worst tail mass.
pub fn oracle_invariant(
    specs: &[StateSpec],
    options: OracleOptions,
) -> Result<(Complex64, usize, f64), FockError> {
    if specs.is_empty() {
        return Err(FockError::Empty);
    }
    let mut n = options.truncation.max(2);
    loop {
        let states: Result<Vec<FockState>, FockError> =
            specs.iter().map(|s| density_for_spec(s, n)).collect();
        let states = states?;
        let worst_tail = states.iter().map(|s| s.tail_mass()).fold(0.0, f64::max);
        if worst_tail < options.tail_target || n >= MAX_TRUNCATION {
            let value = multivariate_trace_fock(&states)?;
            return Ok((value, n, worst_tail));
        }
        n = (2 * n).min(MAX_TRUNCATION);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::TAU;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn coherent_vector_basics() {
        let vac = coherent_vector(c(0.0, 0.0), 8);
        assert_eq!(vac.as_vector().unwrap()[0], c(1.0, 0.0));
        assert_eq!(vac.tail_mass(), 0.0);

        let one = coherent_vector(c(1.0, 0.0), 40);
        assert_relative_eq!(one.as_vector().unwrap()[0].re, (-0.5f64).exp(), max_relative = 1e-14);
        assert!(one.tail_mass() < 1e-12);
    }

    #[test]
    fn coherent_inner_products_match_the_analytic_overlap() {
        let (a1, a2) = (c(0.7, -0.3), c(-0.4, 0.9));
        let v1 = coherent_vector(a1, 60);
        let v2 = coherent_vector(a2, 60);
        let truncated = v1.as_vector().unwrap().dotc(v2.as_vector().unwrap());
        let analytic = coherent_overlap(a1, a2);
        assert!((truncated - analytic).norm() < 1e-10);
        assert_relative_eq!(coherent_overlap(a1, a1).re, 1.0, epsilon = 1e-15);
        let apart = coherent_overlap(c(0.5, 0.0), c(-0.5, 0.0));
        assert_relative_eq!(apart.norm_sqr(), (-1.0f64).exp(), max_relative = 1e-14);
    }

    #[test]
    fn squeezed_vector_populates_even_levels_only() {
        let z = Complex64::from_polar(0.8, 0.6);
        let v = squeezed_vector(z, 41);
        let vec = v.as_vector().unwrap();
        for l in (1..41).step_by(2) {
            assert_eq!(vec[l], c(0.0, 0.0));
        }
        assert!(v.tail_mass() < 1e-6);
        let vac = squeezed_vector(c(0.0, 0.0), 6);
        assert_eq!(vac.as_vector().unwrap()[0], c(1.0, 0.0));
    }

    #[test]
    fn squeezed_inner_products_match_the_analytic_overlap() {
        for (z1, z2) in [
            (Complex64::from_polar(0.5, 0.3), Complex64::from_polar(0.9, -1.2)),
            (Complex64::from_polar(1.0, TAU / 3.0), Complex64::from_polar(1.0, 2.0 * TAU / 3.0)),
        ] {
            let v1 = squeezed_vector(z1, 80);
            let v2 = squeezed_vector(z2, 80);
            let truncated = v1.as_vector().unwrap().dotc(v2.as_vector().unwrap());
            let analytic = squeezed_overlap(z1, z2);
            assert!(
                (truncated - analytic).norm() < 1e-8,
                "z1={z1} z2={z2}: {truncated} vs {analytic}"
            );
        }
        assert_relative_eq!(squeezed_overlap(c(0.7, 0.2), c(0.7, 0.2)).re, 1.0, epsilon = 1e-14);
        // Antipodal pair: |⟨ζ|−ζ⟩|² = 1/cosh(2|ζ|).
        let z = Complex64::from_polar(0.65, 1.1);
        let ov = squeezed_overlap(z, -z);
        assert_relative_eq!(ov.norm_sqr(), 1.0 / (2.0 * 0.65f64).cosh(), max_relative = 1e-12);
    }

    #[test]
    fn displacement_matrix_contract() {
        let id = displacement_matrix(c(0.0, 0.0), 10);
        assert!((id.clone() - DMatrix::identity(10, 10)).norm() < 1e-14);

        for alpha in [c(0.6, -0.2), c(1.5, 1.0), c(2.0, 0.0)] {
            let n = 40;
            let d = displacement_matrix(alpha, n);
            // column 0 is the coherent vector
            let col0 = d.column(0).into_owned();
            let want = coherent_vector(alpha, n);
            let diff = (&col0 - want.as_vector().unwrap()).norm();
            assert!(diff < 1e-8, "column defect {diff} at alpha {alpha}");
            // retained entries are pad-converged: doubling the padding
            // moves nothing by more than 1e-8
            let padded = n + 2 * displacement_pad(alpha) + 20;
            let wide = {
                let a = annihilation(padded);
                (a.adjoint() * alpha - &a * alpha.conj()).exp()
            };
            let conv = (&d - wide.view((0, 0), (n, n)).into_owned())
                .iter()
                .map(|z| z.norm())
                .fold(0.0, f64::max);
            assert!(conv < 1e-8, "pad convergence {conv} at alpha {alpha}");
        }

        // D(α)·D(−α) = I holds on the sub-block whose columns keep their
        // mass below the truncation edge.
        let alpha = c(0.5, 0.3);
        let n = 40;
        let d = displacement_matrix(alpha, n);
        let dm = displacement_matrix(-alpha, n);
        let prod = &d * &dm;
        let q = n / 2;
        let defect = (0..q)
            .flat_map(|i| (0..q).map(move |j| (i, j)))
            .map(|(i, j)| {
                let want = if i == j { c(1.0, 0.0) } else { c(0.0, 0.0) };
                (prod[(i, j)] - want).norm()
            })
            .fold(0.0, f64::max);
        assert!(defect < 1e-8, "inverse-product defect {defect}");
    }

    #[test]
    fn vector_displacement_matches_the_dense_exponential() {
        let n = 50;
        let alpha = c(1.2, -0.7);
        let d = {
            let a = annihilation(n);
            (a.adjoint() * alpha - &a * alpha.conj()).exp()
        };
        let v = squeezed_vector(c(0.6, 0.4), n);
        let dense = &d * v.as_vector().unwrap();
        let fast = displace_apply(alpha, v.as_vector().unwrap());
        assert!((dense - fast).norm() < 1e-11);
    }

    #[test]
    fn squeezed_coherent_limits() {
        let n = 50;
        let alpha = c(0.8, 0.3);
        let zeta = Complex64::from_polar(0.7, -0.9);

        let coh_limit = squeezed_coherent_vector(c(0.0, 0.0), alpha, n);
        let coh = coherent_vector(alpha, n);
        assert!((coh_limit.as_vector().unwrap() - coh.as_vector().unwrap()).norm() < 1e-10);

        let sq_limit = squeezed_coherent_vector(zeta, c(0.0, 0.0), n);
        let sq = squeezed_vector(zeta, n);
        assert!((sq_limit.as_vector().unwrap() - sq.as_vector().unwrap()).norm() < 1e-10);

        let general = squeezed_coherent_vector(zeta, alpha, 80);
        assert!(general.retained_mass() > 1.0 - 1e-6);
        // purity of the projector
        let rho = general.density();
        let tr_rho2 = (&rho * &rho).diagonal().sum().re;
        assert!((tr_rho2 - 1.0).abs() < 1e-5);
    }

    #[test]
    fn thermal_density_contract() {
        let ground = thermal_density(0.0, 5);
        assert_eq!(ground.density()[(0, 0)], c(1.0, 0.0));
        assert_eq!(ground.tail_mass(), 0.0);

        let th = thermal_density(1.0, 200);
        let rho = th.density();
        let tr_rho2 = (&rho * &rho).diagonal().sum().re;
        assert!((tr_rho2 - 1.0 / 3.0).abs() < 1e-10);
        let ratio = rho[(5, 5)].re / rho[(4, 4)].re;
        assert_relative_eq!(ratio, 0.5, max_relative = 1e-12);
        assert_relative_eq!(th.tail_mass(), 0.5f64.powi(200), max_relative = 1e-10);
    }

    #[test]
    fn truncated_overlaps_converge_with_tail_mass() {
        // Cauchy–Schwarz bounds the truncation defect of any inner product
        // by the geometric mean of the tail masses; doubling N must shrink
        // it down to the rounding floor.
        let (a1, a2) = (c(0.9, 0.4), c(-0.3, 0.8));
        let analytic = coherent_overlap(a1, a2);
        let mut prev = f64::INFINITY;
        for n in [8usize, 16, 32, 64] {
            let v1 = coherent_vector(a1, n);
            let v2 = coherent_vector(a2, n);
            let got = v1.as_vector().unwrap().dotc(v2.as_vector().unwrap());
            let defect = (got - analytic).norm();
            assert!(defect <= prev + 1e-15, "defect grew at N={n}");
            assert!(defect <= (v1.tail_mass() * v2.tail_mass()).sqrt() + 1e-14);
            prev = defect;
        }

        let (z1, z2) = (Complex64::from_polar(0.7, 0.5), Complex64::from_polar(0.9, -1.0));
        let analytic = squeezed_overlap(z1, z2);
        let mut prev = f64::INFINITY;
        for n in [16usize, 32, 64, 128] {
            let v1 = squeezed_vector(z1, n);
            let v2 = squeezed_vector(z2, n);
            let got = v1.as_vector().unwrap().dotc(v2.as_vector().unwrap());
            let defect = (got - analytic).norm();
            assert!(defect <= prev + 1e-15, "defect grew at N={n}");
            assert!(defect <= (v1.tail_mass() * v2.tail_mass()).sqrt() + 1e-13);
            prev = defect;
        }

        let nbar = 1.0;
        let mut prev = f64::INFINITY;
        for n in [25usize, 50, 100, 200] {
            let th = thermal_density(nbar, n);
            let rho = th.density();
            let purity = (&rho * &rho).diagonal().sum().re;
            let defect = (purity - 1.0 / (2.0 * nbar + 1.0)).abs();
            assert!(defect <= prev + 1e-15, "defect grew at N={n}");
            assert!(defect <= th.tail_mass() + 1e-14);
            prev = defect;
        }
    }

    #[test]
    fn trace_of_vacuum_projectors_is_one() {
        let vac = coherent_vector(c(0.0, 0.0), 12);
        let got = multivariate_trace_fock(&[vac.clone(), vac.clone(), vac]).unwrap();
        assert_relative_eq!(got.re, 1.0, epsilon = 1e-13);
        assert_relative_eq!(got.im, 0.0, epsilon = 1e-14);
    }

    #[test]
    fn opposite_coherent_pair_trace() {
        let a = coherent_vector(c(0.5, 0.0), 40);
        let b = coherent_vector(c(-0.5, 0.0), 40);
        let got = multivariate_trace_fock(&[a, b]).unwrap();
        assert!((got.re - (-1.0f64).exp()).abs() < 1e-8);
        assert!(got.im.abs() < 1e-10);
    }

    #[test]
    fn coherent_ring_of_three_matches_the_closed_form() {
        let n = 3;
        let states: Vec<FockState> = (1..=n)
            .map(|j| coherent_vector(Complex64::from_polar(0.5, TAU * j as f64 / n as f64), 60))
            .collect();
        let got = multivariate_trace_fock(&states).unwrap();
        let want = Complex64::from_polar((-9.0f64 / 8.0).exp(), (9.0 / 8.0) / 3f64.sqrt());
        assert!((got - want).norm() < 1e-6, "got {got}, want {want}");
    }

    #[test]
    fn fock_trace_is_exactly_cyclic() {
        let states = [
            coherent_vector(c(0.4, 0.1), 30),
            squeezed_vector(c(0.3, -0.2), 30),
            thermal_density(0.5, 30),
        ];
        let base = multivariate_trace_fock(&states).unwrap();
        let rotated =
            multivariate_trace_fock(&[states[1].clone(), states[2].clone(), states[0].clone()])
                .unwrap();
        assert!((base - rotated).norm() < 1e-13);
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let a = coherent_vector(c(0.0, 0.0), 10);
        let b = coherent_vector(c(0.0, 0.0), 12);
        assert!(matches!(
            multivariate_trace_fock(&[a, b]),
            Err(FockError::DimensionMismatch(10, 12))
        ));
    }

    #[test]
    fn adaptive_oracle_reaches_its_tail_target() {
        let specs = vec![
            StateSpec::SqueezedCoherent { zeta: [1.0, 0.0], alpha: [0.5, 0.5] },
            StateSpec::SqueezedCoherent { zeta: [0.0, 1.0], alpha: [-0.5, 0.2] },
        ];
        let (value, n, tail) = oracle_invariant(&specs, OracleOptions::default()).unwrap();
        assert!(n > 60, "expected doubling, stayed at {n}");
        assert!(tail < 1e-10);
        assert!(value.norm() <= 1.0 + 1e-9);
    }

    #[test]
    fn tensor_specs_use_kronecker_products() {
        let spec = StateSpec::Tensor {
            parts: vec![StateSpec::Thermal { nbar: 1.0 }, StateSpec::Thermal { nbar: 2.0 }],
        };
        let rho = density_for_spec(&spec, 40).unwrap();
        assert_eq!(rho.dim(), 1600);
        let tr2 = {
            let d = rho.density();
            (&d * &d).diagonal().sum().re
        };
        assert!((tr2 - (1.0 / 3.0) * (1.0 / 5.0)).abs() < 1e-9);
        let too_big = density_for_spec(
            &StateSpec::Tensor {
                parts: vec![StateSpec::Vacuum, StateSpec::Vacuum, StateSpec::Vacuum],
            },
            60,
        );
        assert!(matches!(too_big, Err(FockError::DimensionCap(..))));
        // the cap sees through nesting
        let nested = density_for_spec(
            &StateSpec::Tensor {
                parts: vec![
                    StateSpec::Tensor { parts: vec![StateSpec::Vacuum, StateSpec::Vacuum] },
                    StateSpec::Vacuum,
                ],
            },
            60,
        );
        assert!(matches!(nested, Err(FockError::DimensionCap(..))));
    }
}
