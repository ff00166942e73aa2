//! Nested adaptive Simpson quadrature for complex-valued integrands on
//! boxes in up to three dimensions. Accuracy is driven by an absolute
//! tolerance per level; the usual 1/15 Richardson error estimate decides
//! refinement.

use num_complex::Complex64;

const MAX_DEPTH: u32 = 22;

fn simpson(fa: Complex64, fm: Complex64, fb: Complex64, h: f64) -> Complex64 {
    (fa + fm * 4.0 + fb) * (h / 6.0)
}

#[allow(clippy::too_many_arguments)]
fn adaptive_step(
    f: &dyn Fn(f64) -> Complex64,
    a: f64,
    b: f64,
    fa: Complex64,
    fm: Complex64,
    fb: Complex64,
    whole: Complex64,
    tol: f64,
    depth: u32,
) -> Complex64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(fa, flm, fm, m - a);
    let right = simpson(fm, frm, fb, b - m);
    let refined = left + right;
    let err = refined - whole;
    if depth >= MAX_DEPTH || err.norm() <= 15.0 * tol {
        return refined + err / 15.0;
    }
    adaptive_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1)
        + adaptive_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1)
}

/// Adaptive Simpson integral of `f` over `[a, b]` to absolute tolerance `tol`.
pub fn integrate_1d(f: &dyn Fn(f64) -> Complex64, a: f64, b: f64, tol: f64) -> Complex64 {
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = simpson(fa, fm, fb, b - a);
    adaptive_step(f, a, b, fa, fm, fb, whole, tol, 0)
}

/// Iterated integral of `f` over the box `[lo, hi]` (componentwise),
/// integrating the last coordinate innermost.
pub fn integrate_box(
    f: &dyn Fn(&[f64]) -> Complex64,
    lo: &[f64],
    hi: &[f64],
    tol: f64,
) -> Complex64 {
    assert_eq!(lo.len(), hi.len());
    assert!(!lo.is_empty() && lo.len() <= 3, "supported dimensions: 1..=3");
    let point = vec![0.0; lo.len()];
    nested(f, lo, hi, tol, 0, &point)
}

fn nested(
    f: &dyn Fn(&[f64]) -> Complex64,
    lo: &[f64],
    hi: &[f64],
    tol: f64,
    axis: usize,
    point: &[f64],
) -> Complex64 {
    let last = axis + 1 == lo.len();
    let width = hi[axis] - lo[axis];
    // Inner integrals must be tighter than the outer request since their
    // error accumulates over the outer width.
    let inner_tol = tol / (1.0 + width);
    let g = |x: f64| -> Complex64 {
        let mut p = point.to_vec();
        p[axis] = x;
        if last {
            f(&p)
        } else {
            nested(f, lo, hi, inner_tol, axis + 1, &p)
        }
    };
    integrate_1d(&g, lo[axis], hi[axis], tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn gaussian_in_one_dimension() {
        let f = |x: f64| Complex64::new((-0.5 * x * x).exp(), 0.0);
        let got = integrate_1d(&|x| f(x), -10.0, 10.0, 1e-10);
        assert_relative_eq!(got.re, (2.0 * PI).sqrt(), max_relative = 1e-9);
    }

    #[test]
    fn oscillatory_integrand() {
        // ∫ exp(ix) over [0, π] = 2i / ... = [sin x − i cos x]? Direct: (e^{iπ} − 1)/i = 2i.
        let got = integrate_1d(&|x| Complex64::new(0.0, x).exp(), 0.0, PI, 1e-10);
        assert_relative_eq!(got.re, 0.0, epsilon = 1e-9);
        assert_relative_eq!(got.im, 2.0, max_relative = 1e-9);
    }

    #[test]
    fn separable_two_dimensional_gaussian() {
        let f = |p: &[f64]| Complex64::new((-0.5 * (p[0] * p[0] + p[1] * p[1])).exp(), 0.0);
        let got = integrate_box(&f, &[-8.0, -8.0], &[8.0, 8.0], 1e-8);
        assert_relative_eq!(got.re, 2.0 * PI, max_relative = 1e-7);
    }
}
