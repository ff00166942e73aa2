//! Permissible-value region curves for multivariate traces.
//!
//! Three nested families in the unit disk, each parameterized by a polar
//! angle `θ`:
//!
//! - `bn_boundary` — boundary of the full permissible set over all states
//!   of any finite dimension: `r = cosⁿ(π/n)·secⁿ((π−θ)/n)`.
//! - `en_boundary` — boundary of the set realized by one-mode pure
//!   Gaussian states through the coherent-ring construction:
//!   `r = e^{−|θ| tan(π/n)}`.
//! - `fn_curve` — the curve traced by squeezed-ring tuples:
//!   `r = (cos((2θ+π)/n)·sec(π/n))^{n/2}` on `θ ∈ [0, (n−2)π/4)`.
//!
//! The ring families themselves are constructed here ([`coherent_ring_states`],
//! [`squeezed_ring_states`]) together with their closed-form invariants, so
//! callers can compare the engine against them directly. Curves can be
//! sampled uniformly and emitted as CSV (`curve,n,theta,r,re,im`, LF line
//! endings, 17 significant digits).

use num_complex::Complex64;
use std::f64::consts::{PI, TAU};
use std::io::{self, Write};

use crate::state::{make_squeezed, make_squeezed_coherent, GaussianState};

/// Curve identifiers used in file names and the CSV `curve` column.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveId {
    BnBoundary,
    EnBoundary,
    Fn,
    EnSpiral,
    UnitCircle,
}

impl CurveId {
    pub fn as_str(&self) -> &'static str {
        match self {
            CurveId::BnBoundary => "bn_boundary",
            CurveId::EnBoundary => "en_boundary",
            CurveId::Fn => "fn",
            CurveId::EnSpiral => "en_spiral",
            CurveId::UnitCircle => "unit_circle",
        }
    }
}

/// A sampled curve `{(θ, r)}` with its provenance.
#[derive(Debug, Clone)]
pub struct RegionCurve {
    pub n: usize,
    pub curve_id: CurveId,
    pub samples: Vec<(f64, f64)>,
    pub resolution: usize,
}

impl RegionCurve {
    /// Emit `curve,n,theta,r,re,im` rows at full double precision.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        w.write_all(b"curve,n,theta,r,re,im\n")?;
        for &(theta, r) in &self.samples {
            let z = Complex64::from_polar(r, theta);
            writeln!(
                w,
                "{},{},{:.16e},{:.16e},{:.16e},{:.16e}",
                self.curve_id.as_str(),
                self.n,
                theta,
                r,
                z.re,
                z.im
            )?;
        }
        Ok(())
    }
}

/// Boundary point of the full permissible set at angle `θ ∈ [0, 2π)`.
pub fn bn_boundary(n: usize, theta: f64) -> Complex64 {
    assert!(n >= 3, "curves are defined for n >= 3");
    let nf = n as f64;
    let r = (PI / nf).cos().powi(n as i32) / ((PI - theta) / nf).cos().powi(n as i32);
    Complex64::from_polar(r, theta)
}

/// Boundary point of the one-mode realizable set at angle `θ ∈ [−π, π]`:
/// `e^{iθ} e^{−θ g(θ) tan(π/n)}` with `g` the sign function.
pub fn en_boundary(n: usize, theta: f64) -> Complex64 {
    assert!(n >= 3, "curves are defined for n >= 3");
    let nf = n as f64;
    Complex64::from_polar((-theta.abs() * (PI / nf).tan()).exp(), theta)
}

/// Point of the unreduced logarithmic spiral `e^{iθ} e^{−θ tan(π/n)}`,
/// `θ ≥ 0` (winds indefinitely).
pub fn en_spiral(n: usize, theta: f64) -> Complex64 {
    assert!(n >= 3, "curves are defined for n >= 3");
    let nf = n as f64;
    Complex64::from_polar((-theta * (PI / nf).tan()).exp(), theta)
}

/// Upper end (exclusive) of the squeezed-ring curve's angular domain.
pub fn fn_theta_end(n: usize) -> f64 {
    (n as f64 - 2.0) * PI / 4.0
}

/// Squeezed-ring curve point at `θ ∈ [0, (n−2)π/4)`:
/// `e^{iθ} (cos((2θ+π)/n) sec(π/n))^{n/2}`. The radius strictly decreases
/// in `θ` and tends to zero at the open end of the domain.
pub fn fn_curve(n: usize, theta: f64) -> Complex64 {
    assert!(n >= 3, "curves are defined for n >= 3");
    let nf = n as f64;
    let base = ((2.0 * theta + PI) / nf).cos() / (PI / nf).cos();
    Complex64::from_polar(base.max(0.0).powf(0.5 * nf), theta)
}

/// The coherent-ring tuple: a common squeezing `|ζ|e^{iφ}` displaced to
/// the `n` amplitudes `|α|·e^{i 2πj/n}`, `j = 1…n`.
pub fn coherent_ring_states(
    n: usize,
    alpha_abs: f64,
    zeta_abs: f64,
    phi: f64,
) -> Vec<GaussianState> {
    assert!(n >= 2);
    let zeta = Complex64::from_polar(zeta_abs, phi);
    (1..=n)
        .map(|j| {
            let alpha = Complex64::from_polar(alpha_abs, TAU * j as f64 / n as f64);
            make_squeezed_coherent(zeta, alpha)
        })
        .collect()
}

/// Closed-form invariant of the coherent ring:
/// `exp{−2n|α|² sin²(π/n) [cosh(2|ζ|) − i cot(π/n)]}` — independent of the
/// squeezing phase `φ`.
pub fn coherent_ring_invariant(n: usize, alpha_abs: f64, zeta_abs: f64) -> Complex64 {
    assert!(n >= 3);
    let nf = n as f64;
    let x = 2.0 * nf * alpha_abs * alpha_abs * (PI / nf).sin().powi(2);
    let ch = (2.0 * zeta_abs).cosh();
    Complex64::new(-x * ch, x / (PI / nf).tan()).exp()
}

/// The squeezed-ring tuple: squeezings `|ζ|·e^{i 2πj/n}`, `j = 1…n`, all
/// with zero mean.
pub fn squeezed_ring_states(n: usize, zeta_abs: f64) -> Vec<GaussianState> {
    assert!(n >= 2);
    (1..=n)
        .map(|j| make_squeezed(Complex64::from_polar(zeta_abs, TAU * j as f64 / n as f64)))
        .collect()
}

/// Radicand `cosh²|ζ| − e^{i2π/n} sinh²|ζ|` of the squeezed-ring closed
/// form; always in the right half-plane.
fn squeezed_ring_radicand(n: usize, zeta_abs: f64) -> Complex64 {
    let (ch, sh) = (zeta_abs.cosh(), zeta_abs.sinh());
    Complex64::new(ch * ch, 0.0) - Complex64::from_polar(sh * sh, TAU / n as f64)
}

/// Closed-form invariant of the squeezed ring:
/// `[cosh²|ζ| − e^{i2π/n} sinh²|ζ|]^{−n/2}` with the square root continued
/// from the positive axis (the radicand never leaves the right half-plane).
pub fn squeezed_ring_invariant(n: usize, zeta_abs: f64) -> Complex64 {
    assert!(n >= 2);
    let root = squeezed_ring_radicand(n, zeta_abs).sqrt();
    root.powi(-(n as i32))
}

/// Closed form of the block-matrix determinant for the squeezed ring:
/// `4^{n−1} (cosh²|ζ| − e^{i2π/n} sinh²|ζ|)ⁿ`.
pub fn squeezed_ring_det(n: usize, zeta_abs: f64) -> Complex64 {
    assert!(n >= 2);
    4f64.powi(n as i32 - 1) * squeezed_ring_radicand(n, zeta_abs).powu(n as u32)
}

/// Angle on [`fn_curve`] reached by squeezing `|ζ|` in the squeezed ring,
/// from the polar split of the radicand: `θ = −(n/2)·arg(radicand)`.
pub fn fn_theta_for_zeta(n: usize, zeta_abs: f64) -> f64 {
    assert!(n >= 3);
    -(n as f64) * 0.5 * squeezed_ring_radicand(n, zeta_abs).arg()
}

/// Membership test for the one-mode realizable region: `z = t·e^{iθ}·
/// e^{−θg(θ)tan(π/n)}` with `t ∈ (0,1]`, i.e.
/// `0 < |z| ≤ e^{−|arg z| tan(π/n)}`. Zero is not a member.
pub fn membership_en(z: Complex64, n: usize) -> bool {
    assert!(n >= 3);
    let r = z.norm();
    if r == 0.0 {
        return false;
    }
    let theta = z.arg(); // (−π, π]
    r <= (-theta.abs() * (PI / n as f64).tan()).exp()
}

/// Grid slack summary for one inequality chain.
#[derive(Debug, Clone, Copy)]
pub struct GridGap {
    /// Most negative slack seen anywhere (0.0 when the inequality held
    /// everywhere).
    pub max_violation: f64,
    /// Smallest slack over interior grid points `θ > 0`.
    pub min_interior_gap: f64,
    /// Slack at `θ = 0` (equality is expected there).
    pub gap_at_zero: f64,
}

impl GridGap {
    /// Inequality holds within `tol` and is strict away from zero.
    pub fn passes(&self, tol: f64) -> bool {
        self.max_violation <= tol && self.min_interior_gap > tol && self.gap_at_zero.abs() <= tol
    }
}

/// Pointwise verification of the two radial orderings on `θ` grids:
/// the spiral radius under the `bn` radius on `[0, π]`, and the
/// squeezed-ring radius under the spiral radius on its domain.
#[derive(Debug, Clone, Copy)]
pub struct InequalityReport {
    pub n: usize,
    pub resolution: usize,
    pub en_within_bn: GridGap,
    pub fn_within_en: GridGap,
}

impl InequalityReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.en_within_bn.passes(tol) && self.fn_within_en.passes(tol)
    }
}

fn grid_gap(points: usize, theta_end: f64, gap: impl Fn(f64) -> f64) -> GridGap {
    let mut max_violation = 0.0_f64;
    let mut min_interior = f64::INFINITY;
    let mut at_zero = 0.0;
    for i in 0..points {
        let theta = theta_end * i as f64 / (points - 1) as f64;
        let g = gap(theta);
        if i == 0 {
            at_zero = g;
        } else {
            min_interior = min_interior.min(g);
        }
        if g < -max_violation {
            max_violation = -g;
        }
    }
    GridGap { max_violation, min_interior_gap: min_interior, gap_at_zero: at_zero }
}

/// Sweep both inequalities on `resolution`-point grids.
pub fn check_inequalities(n: usize, resolution: usize) -> InequalityReport {
    assert!(n >= 3 && resolution >= 2);
    let nf = n as f64;
    let tan = (PI / nf).tan();
    let en_within_bn = grid_gap(resolution, PI, |theta| {
        bn_boundary(n, theta).norm() - (-theta * tan).exp()
    });
    // The squeezed-ring curve exists on [0, (n−2)π/4); stop just short of
    // the open end, clipped at π.
    let theta_end = fn_theta_end(n).min(PI) * (1.0 - 1e-9);
    let fn_within_en = grid_gap(resolution, theta_end, |theta| {
        (-theta * tan).exp() - fn_curve(n, theta).norm()
    });
    InequalityReport { n, resolution, en_within_bn, fn_within_en }
}

/// Uniform samples of the unreduced spiral over `turns` full windings.
pub fn sample_spiral(n: usize, resolution: usize, turns: usize) -> RegionCurve {
    assert!(n >= 3 && resolution >= 2 && turns >= 1);
    let end = TAU * turns as f64;
    RegionCurve {
        n,
        curve_id: CurveId::EnSpiral,
        samples: (0..=resolution)
            .map(|i| {
                let theta = end * i as f64 / resolution as f64;
                (theta, en_spiral(n, theta).norm())
            })
            .collect(),
        resolution,
    }
}

/// Uniform samples of the unit circle plus the three region curves, each
/// over its declared domain (the squeezed-ring curve clipped to `θ ≤ π`
/// for plotting parity).
pub fn sample_curves(n: usize, resolution: usize) -> Vec<RegionCurve> {
    assert!(n >= 3 && resolution >= 2);
    let res = resolution;

    let unit = RegionCurve {
        n,
        curve_id: CurveId::UnitCircle,
        samples: (0..res).map(|i| (TAU * i as f64 / res as f64, 1.0)).collect(),
        resolution: res,
    };

    // θ ∈ [0, 2π), half-open
    let bn = RegionCurve {
        n,
        curve_id: CurveId::BnBoundary,
        samples: (0..res)
            .map(|i| {
                let theta = TAU * i as f64 / res as f64;
                (theta, bn_boundary(n, theta).norm())
            })
            .collect(),
        resolution: res,
    };

    // θ ∈ [−π, π], closed
    let en = RegionCurve {
        n,
        curve_id: CurveId::EnBoundary,
        samples: (0..=res)
            .map(|i| {
                let theta = -PI + TAU * i as f64 / res as f64;
                (theta, en_boundary(n, theta).norm())
            })
            .collect(),
        resolution: res,
    };

    // θ ∈ [0, end): half-open at the natural end, closed when clipped at π
    let natural_end = fn_theta_end(n);
    let clipped = natural_end > PI;
    let end = natural_end.min(PI);
    let fn_samples: Vec<(f64, f64)> = if clipped {
        (0..=res)
            .map(|i| {
                let theta = end * i as f64 / res as f64;
                (theta, fn_curve(n, theta).norm())
            })
            .collect()
    } else {
        (0..res)
            .map(|i| {
                let theta = end * i as f64 / res as f64;
                (theta, fn_curve(n, theta).norm())
            })
            .collect()
    };
    let fncurve = RegionCurve { n, curve_id: CurveId::Fn, samples: fn_samples, resolution: res };

    vec![unit, bn, en, fncurve]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::squeezed_overlap;
    use approx::assert_relative_eq;

    #[test]
    fn bn_boundary_pinned_points() {
        assert_relative_eq!(bn_boundary(5, 0.0).re, 1.0, epsilon = 1e-15);
        assert_relative_eq!(bn_boundary(5, 0.0).im, 0.0, epsilon = 1e-15);
        let b3 = bn_boundary(3, PI);
        assert_relative_eq!(b3.re, -0.125, epsilon = 1e-15);
        assert_relative_eq!(b3.im, 0.0, epsilon = 1e-12);
        let b4 = bn_boundary(4, PI);
        assert_relative_eq!(b4.re, -0.25, epsilon = 1e-14);
    }

    #[test]
    fn en_boundary_pinned_points_and_symmetry() {
        assert_relative_eq!(en_boundary(7, 0.0).re, 1.0, epsilon = 1e-15);
        let e4 = en_boundary(4, PI);
        assert_relative_eq!(e4.re, -(-PI).exp(), max_relative = 1e-14);
        assert_relative_eq!(e4.im, 0.0, epsilon = 1e-12);
        for theta in [0.3, 1.2, 2.9] {
            let plus = en_boundary(5, theta);
            let minus = en_boundary(5, -theta);
            assert_relative_eq!(plus.re, minus.re, max_relative = 1e-14);
            assert_relative_eq!(plus.im, -minus.im, max_relative = 1e-14);
        }
    }

    #[test]
    fn fn_curve_shape() {
        assert_relative_eq!(fn_curve(6, 0.0).re, 1.0, epsilon = 1e-15);
        let end = fn_theta_end(3);
        assert_relative_eq!(end, PI / 4.0, epsilon = 1e-15);
        assert!(fn_curve(3, end * 0.999999).norm() < 1e-3);
        let mut prev = f64::INFINITY;
        for i in 0..50 {
            let theta = end * i as f64 / 50.0;
            let r = fn_curve(3, theta).norm();
            assert!(r < prev);
            prev = r;
        }
    }

    #[test]
    fn coherent_ring_closed_form() {
        assert_relative_eq!(coherent_ring_invariant(4, 0.0, 0.7).re, 1.0, epsilon = 1e-15);
        let v = coherent_ring_invariant(3, 0.5, 0.0);
        let want = Complex64::from_polar((-9.0f64 / 8.0).exp(), (9.0 / 8.0) / 3f64.sqrt());
        assert_relative_eq!(v.re, want.re, max_relative = 1e-14);
        assert_relative_eq!(v.im, want.im, max_relative = 1e-14);
    }

    #[test]
    fn coherent_ring_polar_relation() {
        // r = exp(−θ·tan(π/n)·cosh(2|ζ|)) with θ = 2n|α|² sin(π/n)cos(π/n),
        // and the value's argument is θ itself (mod 2π).
        for (n, alpha, zeta) in [(3usize, 0.4, 0.3), (5, 0.8, 0.9), (8, 1.0, 0.2)] {
            let nf = n as f64;
            let v = coherent_ring_invariant(n, alpha, zeta);
            let theta = 2.0 * nf * alpha * alpha * (PI / nf).sin() * (PI / nf).cos();
            let want_r = (-theta * (PI / nf).tan() * (2.0 * zeta).cosh()).exp();
            assert_relative_eq!(v.norm(), want_r, max_relative = 1e-12);
            let arg_diff = (v.arg() - theta).rem_euclid(TAU);
            let dist = arg_diff.min(TAU - arg_diff);
            assert!(dist < 1e-12, "argument defect {dist} at n={n}");
        }
    }

    proptest::proptest! {
        #[test]
        fn scaled_boundary_points_are_members(
            n in 3usize..20,
            theta in -PI..PI,
            t in 1e-6..1.0f64,
        ) {
            let z = en_boundary(n, theta) * t;
            proptest::prop_assert!(membership_en(z, n));
            let outside = en_boundary(n, theta) * 1.001;
            proptest::prop_assert!(!membership_en(outside, n));
        }
    }

    #[test]
    fn squeezed_ring_closed_form() {
        assert_relative_eq!(squeezed_ring_invariant(5, 0.0).re, 1.0, epsilon = 1e-15);
        let z = 0.85;
        assert_relative_eq!(
            squeezed_ring_invariant(2, z).re,
            1.0 / (2.0 * z).cosh(),
            max_relative = 1e-13
        );
        assert_relative_eq!(squeezed_ring_invariant(2, z).im, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn squeezed_ring_matches_pairwise_overlap_product() {
        // tr(|ζ₁⟩⟨ζ₁|…|ζₙ⟩⟨ζₙ|) = ∏ⱼ ⟨ζⱼ|ζⱼ₊₁⟩ cyclically.
        for (n, zeta) in [(3usize, 0.6), (4, 1.0), (7, 0.35)] {
            let zs: Vec<Complex64> = (1..=n)
                .map(|j| Complex64::from_polar(zeta, TAU * j as f64 / n as f64))
                .collect();
            let mut product = Complex64::new(1.0, 0.0);
            for j in 0..n {
                product *= squeezed_overlap(zs[j], zs[(j + 1) % n]);
            }
            let closed = squeezed_ring_invariant(n, zeta);
            assert!(
                (product - closed).norm() < 1e-12 * closed.norm(),
                "n={n} zeta={zeta}: {product} vs {closed}"
            );
        }
    }

    #[test]
    fn squeezed_ring_lands_on_the_fn_curve() {
        for (n, zeta) in [(3usize, 0.4), (6, 0.8), (10, 1.0)] {
            let theta = fn_theta_for_zeta(n, zeta);
            assert!(theta >= 0.0 && theta < fn_theta_end(n));
            let on_curve = fn_curve(n, theta);
            let closed = squeezed_ring_invariant(n, zeta);
            assert!(
                (on_curve - closed).norm() <= 1e-9 * closed.norm().max(1e-12),
                "n={n} zeta={zeta}"
            );
        }
    }

    #[test]
    fn membership_examples() {
        assert!(membership_en(Complex64::new(1.0, 0.0), 4));
        assert!(!membership_en(Complex64::new(0.0, 0.0), 4));
        for theta in [-3.0, -1.0, 0.0, 0.5, 2.2, PI] {
            assert!(membership_en(en_boundary(5, theta), 5));
        }
        // Slightly outside the boundary radius is out.
        let out = en_boundary(5, 1.0) * 1.0001;
        assert!(!membership_en(out, 5));
        // The full permissible boundary pokes out of the one-mode region.
        assert!(!membership_en(bn_boundary(3, PI / 2.0), 3));
    }

    #[test]
    fn inequality_grids_hold_strictly() {
        for n in [3usize, 6, 17, 40] {
            let report = check_inequalities(n, 10_000);
            assert!(report.passes(1e-12), "n={n}: {report:?}");
            assert!(report.en_within_bn.gap_at_zero.abs() <= 1e-15);
            assert!(report.fn_within_en.gap_at_zero.abs() <= 1e-15);
            assert!(report.en_within_bn.min_interior_gap > 1e-10);
            assert!(report.fn_within_en.min_interior_gap > 1e-10);
        }
    }

    #[test]
    fn sampled_curves_stay_in_the_disk_and_order_radially() {
        for n in [3usize, 6, 10, 40] {
            let curves = sample_curves(n, 257);
            assert_eq!(curves.len(), 4);
            for c in &curves {
                for &(_, r) in &c.samples {
                    assert!(r <= 1.0 + 1e-12, "{:?} r={r}", c.curve_id);
                    assert!(r >= 0.0);
                }
            }
            // radial ordering fn ≤ en ≤ bn at shared angles
            let probe = fn_theta_end(n).min(PI) * 0.9;
            for i in 1..40 {
                let theta = probe * i as f64 / 40.0;
                let rf = fn_curve(n, theta).norm();
                let re_ = en_boundary(n, theta).norm();
                let rb = bn_boundary(n, theta).norm();
                assert!(rf <= re_ + 1e-12 && re_ <= rb + 1e-12);
            }
        }
    }

    #[test]
    fn sample_domains_match_the_declared_intervals() {
        let curves = sample_curves(3, 100);
        let bn = curves.iter().find(|c| c.curve_id == CurveId::BnBoundary).unwrap();
        assert_eq!(bn.samples.first().unwrap().0, 0.0);
        assert!(bn.samples.last().unwrap().0 < TAU);
        let en = curves.iter().find(|c| c.curve_id == CurveId::EnBoundary).unwrap();
        assert_relative_eq!(en.samples.first().unwrap().0, -PI, epsilon = 1e-15);
        assert_relative_eq!(en.samples.last().unwrap().0, PI, epsilon = 1e-12);
        let f = curves.iter().find(|c| c.curve_id == CurveId::Fn).unwrap();
        assert_eq!(f.samples.first().unwrap().0, 0.0);
        assert!(f.samples.last().unwrap().0 < fn_theta_end(3));
        // all curves share r = 1 at θ = 0
        for c in &curves {
            let at_zero = c.samples.iter().find(|(t, _)| t.abs() < 1e-12).unwrap();
            assert_relative_eq!(at_zero.1, 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn csv_rows_round_trip_at_full_precision() {
        let curves = sample_curves(3, 16);
        let mut buf = Vec::new();
        curves[1].write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("curve,n,theta,r,re,im\n"));
        assert!(!text.contains('\r'));
        for line in text.lines().skip(1) {
            let fields: Vec<&str> = line.split(',').collect();
            assert_eq!(fields.len(), 6);
            assert_eq!(fields[0], "bn_boundary");
            assert_eq!(fields[1], "3");
            let theta: f64 = fields[2].parse().unwrap();
            let r: f64 = fields[3].parse().unwrap();
            let re: f64 = fields[4].parse().unwrap();
            let im: f64 = fields[5].parse().unwrap();
            let z = Complex64::from_polar(r, theta);
            assert_eq!(re, z.re, "printed re must re-parse exactly");
            assert_eq!(im, z.im, "printed im must re-parse exactly");
        }
    }

    #[test]
    fn spiral_avoids_the_positive_real_gap() {
        // Dense spiral samples: any sample on the positive real axis lies
        // at 1 or at/below e^{−2π tan(π/n)} — never strictly between.
        for n in [3usize, 5, 9] {
            let tan = (PI / n as f64).tan();
            let lower = (-TAU * tan).exp();
            let spiral = sample_spiral(n, 200_000, 3);
            assert_eq!(spiral.curve_id, CurveId::EnSpiral);
            for &(theta, r) in &spiral.samples {
                let z = Complex64::from_polar(r, theta);
                if z.im.abs() < 1e-9 && z.re > 0.0 {
                    let inside_gap = z.re > lower + 1e-9 && z.re < 1.0 - 1e-9;
                    assert!(!inside_gap, "spiral hit the gap at n={n}, θ={theta}: {z}");
                }
            }
        }
    }

    #[test]
    fn boundary_radius_strictly_decreases() {
        for n in [3usize, 8, 25] {
            let mut prev = f64::INFINITY;
            for i in 0..100 {
                let theta = PI * (i + 1) as f64 / 100.0;
                let r = en_boundary(n, theta).norm();
                assert!(r < prev, "radius not decreasing at n={n}, θ={theta}");
                prev = r;
            }
        }
    }
}
