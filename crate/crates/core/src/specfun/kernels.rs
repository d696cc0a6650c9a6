//! The hard-edge Bessel kernel `J_alpha` and the bulk kernel `L_alpha`.
//!
//! Both kernels share the shape
//!
//! ```text
//!     F(a, b) = (A(a) B(b) - A(b) B(a)) / (2 (a - b))
//! ```
//!
//! with entire `A`, `B` built from the scaled Bessel part `g`:
//!
//! * entire `L*_alpha`: `A(z) = z g_{(alpha+1)/2}(z)`, `B(z) = g_{(alpha-1)/2}(z)`;
//! * entire `J*_alpha`: `A(a) = h(a)`, `B(a) = alpha h(a) + 2 a h'(a)` where
//!   `J_alpha(sqrt a) = a^{alpha/2} h(a)`.
//!
//! Near the diagonal the quotient is replaced by its expansion about the
//! midpoint `m` with `a = m + d`, `b = m - d`:
//!
//! ```text
//!     F = (A'B - AB')/2 + d^2 (A'''B - 3A''B' + 3A'B'' - AB''')/12 + O(d^4)
//! ```
//!
//! which is also how the diagonal values and the origin values are produced.

use num_complex::Complex64;

use super::bessel::{even_series_jet, g_real_jet, g_series, j_real, j_real_prime, BesselOrder, SERIES_RADIUS};
use super::zeros::bessel_j_zeros;
use crate::{Error, Result};
#[allow(unused_imports)] // inherent float methods shadow it whenever std is linked
use num_traits::Float;

type C = Complex64;
type Jet4 = [C; 4];

/// Unnormalized kernel or its entire normalization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelVariant {
    Raw,
    Entire,
}

/// Relative width of the band around the diagonal where the expansion is used.
pub const CONFLUENT_REL_TOL: f64 = 1e-4;

fn confluent_tol(scale: f64, cap: f64) -> f64 {
    CONFLUENT_REL_TOL * scale.min(cap).max(1.0)
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !alpha.is_finite() || alpha <= -1.0 {
        return Err(Error::domain("alpha must be finite and exceed -1"));
    }
    Ok(())
}

fn antisymmetric_quotient<F>(eval: F, a: C, b: C, tol: f64) -> C
where
    F: Fn(C) -> (Jet4, Jet4),
{
    let diff = a - b;
    if diff.norm() < tol {
        let m = 0.5 * (a + b);
        let d = 0.5 * diff;
        let (pa, pb) = eval(m);
        let lead = (pa[1] * pb[0] - pa[0] * pb[1]) * 0.5;
        let curv = pa[3] * pb[0] - 3.0 * pa[2] * pb[1] + 3.0 * pa[1] * pb[2] - pa[0] * pb[3];
        return lead + d * d * curv / 12.0;
    }
    let (aa, ba) = eval(a);
    let (ab, bb) = eval(b);
    (aa[0] * bb[0] - ab[0] * ba[0]) / (2.0 * diff)
}

fn lift(j: [f64; 5]) -> [C; 5] {
    j.map(|v| C::new(v, 0.0))
}

fn l_pair(gp: [C; 5], gm: [C; 5], z: C) -> (Jet4, Jet4) {
    let a = [z * gp[0], gp[0] + z * gp[1], 2.0 * gp[1] + z * gp[2], 3.0 * gp[2] + z * gp[3]];
    (a, [gm[0], gm[1], gm[2], gm[3]])
}

fn l_orders(alpha: f64) -> (f64, f64) {
    (0.5 * (alpha + 1.0), 0.5 * (alpha - 1.0))
}

/// Entire `L*_alpha(a, b)` for real arguments of any size.
pub fn kernel_l_entire_real(alpha: f64, a: f64, b: f64) -> Result<f64> {
    check_alpha(alpha)?;
    if !a.is_finite() || !b.is_finite() {
        return Err(Error::domain("kernel arguments must be finite"));
    }
    Ok(l_entire_real(alpha, a, b))
}

pub(crate) fn l_entire_real(alpha: f64, a: f64, b: f64) -> f64 {
    let (np, nm) = l_orders(alpha);
    let eval = |z: C| {
        let x = z.re;
        l_pair(lift(g_real_jet(np, x)), lift(g_real_jet(nm, x)), z)
    };
    let tol = confluent_tol(a.abs(), SERIES_RADIUS);
    antisymmetric_quotient(eval, C::new(a, 0.0), C::new(b, 0.0), tol).re
}

fn l_entire_complex(alpha: f64, a: C, b: C) -> Result<C> {
    if a.norm() > SERIES_RADIUS || b.norm() > SERIES_RADIUS {
        return Err(Error::UnsupportedRegime(alloc::format!(
            "complex kernel arguments must satisfy |z| <= {SERIES_RADIUS}"
        )));
    }
    let (np, nm) = l_orders(alpha);
    let eval = |z: C| l_pair(g_series(np, z), g_series(nm, z), z);
    let tol = confluent_tol(a.norm(), SERIES_RADIUS);
    Ok(antisymmetric_quotient(eval, a, b, tol))
}

/// Bulk kernel `L_alpha(a, b)` (raw, real arguments) or `L*_alpha(a, b)`.
///
/// The entire variant accepts complex arguments in the disc `|z| <= 12`
/// and real arguments of any size.
pub fn kernel_l(alpha: f64, a: C, b: C, variant: KernelVariant) -> Result<C> {
    check_alpha(alpha)?;
    match variant {
        KernelVariant::Raw => {
            if a.im != 0.0 || b.im != 0.0 {
                return Err(Error::domain("raw L_alpha is defined for real arguments only"));
            }
            Ok(C::new(l_raw_real(alpha, a.re, b.re), 0.0))
        }
        KernelVariant::Entire => {
            if a.im == 0.0 && b.im == 0.0 {
                kernel_l_entire_real(alpha, a.re, b.re).map(|v| C::new(v, 0.0))
            } else {
                l_entire_complex(alpha, a, b)
            }
        }
    }
}

/// Diagonal `L_alpha(a, a)` (raw) or `L*_alpha(a) = L_alpha(a, a) / a^alpha`.
pub fn kernel_l_diag(alpha: f64, a: C, variant: KernelVariant) -> Result<C> {
    check_alpha(alpha)?;
    match variant {
        KernelVariant::Entire => kernel_l(alpha, a, a, variant),
        KernelVariant::Raw => {
            if a.im != 0.0 {
                return Err(Error::domain("raw L_alpha is defined for real arguments only"));
            }
            let x = a.re.abs();
            if x == 0.0 {
                return Ok(C::new(zero_power(alpha) * l_entire_real(alpha, 0.0, 0.0), 0.0));
            }
            // (|a|/2) (J'_{nu+} J_{nu-} - J_{nu+} J'_{nu-})
            let (np, nm) = l_orders(alpha);
            let v = 0.5 * x * (j_real_prime(np, x) * j_real(nm, x) - j_real(np, x) * j_real_prime(nm, x));
            Ok(C::new(v, 0.0))
        }
    }
}

fn zero_power(alpha: f64) -> f64 {
    if alpha > 0.0 {
        0.0
    } else if alpha == 0.0 {
        1.0
    } else {
        f64::INFINITY
    }
}

fn half_power(x: f64, alpha: f64) -> f64 {
    if x == 0.0 {
        zero_power(alpha)
    } else {
        x.abs().powf(0.5 * alpha)
    }
}

fn l_raw_real(alpha: f64, a: f64, b: f64) -> f64 {
    if a == 0.0 || b == 0.0 || (a - b).abs() < confluent_tol(a.abs(), SERIES_RADIUS) {
        return half_power(a, alpha) * half_power(b, alpha) * l_entire_real(alpha, a, b);
    }
    let (np, nm) = l_orders(alpha);
    if a >= 0.0 && b >= 0.0 {
        (a * b).sqrt() / (2.0 * (a - b)) * (j_real(np, a) * j_real(nm, b) - j_real(np, b) * j_real(nm, a))
    } else if a >= 0.0 {
        let nb = -b;
        (a * nb).sqrt() / (2.0 * (a - b)) * (j_real(np, a) * j_real(nm, nb) + j_real(np, nb) * j_real(nm, a))
    } else {
        l_raw_real(alpha, -a, -b)
    }
}

fn j_pair_series(alpha: f64, a: C) -> (Jet4, Jet4) {
    let h = even_series_jet(alpha, a);
    let p = [h[0], h[1], h[2], h[3]];
    let two_a = 2.0 * a;
    let q = [
        alpha * h[0] + two_a * h[1],
        (alpha + 2.0) * h[1] + two_a * h[2],
        (alpha + 4.0) * h[2] + two_a * h[3],
        (alpha + 6.0) * h[3] + two_a * h[4],
    ];
    (p, q)
}

fn j_pair_sqrt(alpha: f64, s: C) -> (Jet4, Jet4) {
    let g = lift(g_real_jet(alpha, s.re));
    let p = [g[0], g[1], g[2], g[3]];
    let q = [
        alpha * g[0] + s * g[1],
        (alpha + 1.0) * g[1] + s * g[2],
        (alpha + 2.0) * g[2] + s * g[3],
        (alpha + 3.0) * g[3] + s * g[4],
    ];
    (p, q)
}

fn j_entire(alpha: f64, a: f64, b: f64) -> f64 {
    let r2 = SERIES_RADIUS * SERIES_RADIUS;
    if a.max(b) <= r2 {
        let tol = confluent_tol(a, r2);
        antisymmetric_quotient(|z| j_pair_series(alpha, z), C::new(a, 0.0), C::new(b, 0.0), tol).re
    } else {
        // in the variable s = sqrt(a): a - b = (s - t)(s + t), and s + t > 12 here
        let (s, t) = (a.sqrt(), b.sqrt());
        let tol = confluent_tol(s, SERIES_RADIUS);
        let f = antisymmetric_quotient(|z| j_pair_sqrt(alpha, z), C::new(s, 0.0), C::new(t, 0.0), tol);
        f.re / (s + t)
    }
}

/// Hard-edge Bessel kernel `J_alpha(a, b)` (raw, `a, b > 0`) or its entire
/// version `J*_alpha(a, b) = J_alpha(a, b) / (a b)^{alpha/2}` (`a, b >= 0`).
pub fn kernel_j(alpha: f64, a: f64, b: f64, variant: KernelVariant) -> Result<f64> {
    check_alpha(alpha)?;
    if !a.is_finite() || !b.is_finite() {
        return Err(Error::domain("kernel arguments must be finite"));
    }
    match variant {
        KernelVariant::Entire => {
            if a < 0.0 || b < 0.0 {
                return Err(Error::domain("entire J_alpha is evaluated for a, b >= 0"));
            }
            Ok(j_entire(alpha, a, b))
        }
        KernelVariant::Raw => {
            if a <= 0.0 || b <= 0.0 {
                return Err(Error::domain("raw J_alpha needs a, b > 0"));
            }
            if (a - b).abs() < confluent_tol(a, SERIES_RADIUS * SERIES_RADIUS) {
                return Ok((a * b).powf(0.5 * alpha) * j_entire(alpha, a, b));
            }
            let (s, t) = (a.sqrt(), b.sqrt());
            let num = j_real(alpha, s) * t * j_real_prime(alpha, t) - j_real(alpha, t) * s * j_real_prime(alpha, s);
            Ok(num / (2.0 * (a - b)))
        }
    }
}

/// Diagonal `J_alpha(a, a)` (raw) or `J*_alpha(a) = J_alpha(a, a) / a^alpha`.
pub fn kernel_j_diag(alpha: f64, a: f64, variant: KernelVariant) -> Result<f64> {
    kernel_j(alpha, a, a, variant)
}

/// Truncated cardinal series of `g = L*_alpha(center, .)` at `z`, sampled at
/// `+-j_k`, the first `truncation` positive zeros of `J_{(alpha-1)/2}`.
pub fn cardinal_series(alpha: f64, center: f64, z: f64, truncation: usize) -> Result<f64> {
    check_alpha(alpha)?;
    if truncation == 0 {
        return Err(Error::domain("cardinal series truncation must be positive"));
    }
    let order = BesselOrder::new(0.5 * (alpha - 1.0))?;
    let nodes = bessel_j_zeros(order, truncation)?;
    let mut sum = 0.0;
    // smallest contributions first
    for &jk in nodes.iter().rev() {
        for node in [jk, -jk] {
            let sample = l_entire_real(alpha, center, node);
            let basis = l_entire_real(alpha, node, z) / l_entire_real(alpha, node, node);
            sum += sample * basis;
        }
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::super::gamma::gamma_fn;
    use super::*;
    use core::f64::consts::PI;

    fn c(x: f64) -> C {
        C::new(x, 0.0)
    }

    fn l_star(alpha: f64, a: f64, b: f64) -> f64 {
        kernel_l_entire_real(alpha, a, b).unwrap()
    }

    fn l_origin(alpha: f64) -> f64 {
        2f64.powf(-(alpha + 1.0)) / (gamma_fn(0.5 * (alpha + 3.0)).unwrap() * gamma_fn(0.5 * (alpha + 1.0)).unwrap())
    }

    fn j_origin(alpha: f64) -> f64 {
        1.0 / (2f64.powf(2.0 * alpha + 2.0) * gamma_fn(alpha + 1.0).unwrap() * gamma_fn(alpha + 2.0).unwrap())
    }

    #[test]
    fn sinc_reduction_at_alpha_zero() {
        for &(a, b) in &[(0.3f64, -1.1f64), (5.0, 2.0), (-19.5, 20.0), (13.0, 12.5), (7.0, 7.00001)] {
            let want = (a - b).sin() / (PI * (a - b));
            assert!((l_star(0.0, a, b) - want).abs() < 1e-12, "({a}, {b})");
        }
    }

    #[test]
    fn origin_values() {
        for &alpha in &[-0.5, 0.0, 0.3, 1.0, 2.5] {
            let l0 = kernel_l_diag(alpha, c(0.0), KernelVariant::Entire).unwrap().re;
            assert!((l0 - l_origin(alpha)).abs() < 1e-14, "alpha = {alpha}");
            let j0 = kernel_j(alpha, 0.0, 0.0, KernelVariant::Entire).unwrap();
            assert!((j0 - j_origin(alpha)).abs() < 1e-14, "alpha = {alpha}");
        }
        assert!((l_origin(0.0) - 1.0 / PI).abs() < 1e-15);
        assert!((j_origin(0.0) - 0.25).abs() < 1e-15);
    }

    #[test]
    fn raw_and_entire_agree_off_the_origin() {
        for &alpha in &[-0.5, 0.3, 1.0, 2.5] {
            for &(a, b) in &[(0.7, 2.9), (1.5, -3.0), (-4.0, -0.25), (9.0, -11.0), (15.0, 3.0)] {
                let raw = kernel_l(alpha, c(a), c(b), KernelVariant::Raw).unwrap().re;
                let ent = l_star(alpha, a, b);
                let want = ent * a.abs().powf(alpha / 2.0) * b.abs().powf(alpha / 2.0);
                assert!((raw - want).abs() <= 1e-12 * want.abs().max(1e-3), "alpha {alpha} ({a},{b})");
            }
        }
    }

    #[test]
    fn raw_diagonal_matches_confluent_entire() {
        for &alpha in &[-0.5, 1.0, 2.5] {
            for &a in &[0.4, 3.3, -8.0, 20.0] {
                let raw = kernel_l_diag(alpha, c(a), KernelVariant::Raw).unwrap().re;
                let ent = kernel_l_diag(alpha, c(a), KernelVariant::Entire).unwrap().re;
                let want = ent * a.abs().powf(alpha);
                assert!((raw - want).abs() < 1e-11 * want.abs().max(1.0), "alpha {alpha} a {a}");
            }
        }
    }

    #[test]
    fn complex_entire_matches_real_on_the_axis() {
        let v = kernel_l(1.0, C::new(2.0, 1e-300), c(-3.0), KernelVariant::Entire).unwrap();
        assert!((v.re - l_star(1.0, 2.0, -3.0)).abs() < 1e-14);
        let v = kernel_l(1.0, C::new(2.0, 0.5), C::new(-1.0, 0.2), KernelVariant::Entire).unwrap();
        let w = kernel_l(1.0, C::new(-2.0, -0.5), C::new(1.0, -0.2), KernelVariant::Entire).unwrap();
        assert!((v - w).norm() < 1e-14);
        assert!(kernel_l(1.0, C::new(12.0, 1.0), c(0.0), KernelVariant::Entire).is_err());
        assert!(kernel_l(1.0, C::new(1.0, 1.0), c(0.0), KernelVariant::Raw).is_err());
    }

    #[test]
    fn bessel_kernel_confluent_matches_finite_difference_of_raw_formula() {
        // raw formula evaluated directly, outside the crate's confluent routing
        let alpha = 1.0;
        let raw = |a: f64, b: f64| {
            let (s, t) = (a.sqrt(), b.sqrt());
            (j_real(alpha, s) * t * j_real_prime(alpha, t) - j_real(alpha, t) * s * j_real_prime(alpha, s))
                / (2.0 * (a - b))
        };
        let h = 1e-5;
        let fd = 0.5 * (raw(2.0 + h, 2.0) + raw(2.0 - h, 2.0)) / 2.0;
        let ent = kernel_j(alpha, 2.0, 2.0, KernelVariant::Entire).unwrap();
        assert!(((ent - fd) / ent).abs() <= 1e-6);
    }

    #[test]
    fn bessel_kernel_symmetry_and_regimes() {
        for &(a, b) in &[(0.5, 3.0), (100.0, 150.0), (143.0, 145.0), (400.0, 2.0)] {
            let x = kernel_j(0.5, a, b, KernelVariant::Raw).unwrap();
            let y = kernel_j(0.5, b, a, KernelVariant::Raw).unwrap();
            assert_eq!(x, y);
            let e = kernel_j(0.5, a, b, KernelVariant::Entire).unwrap();
            assert!((e * (a * b).powf(0.25) - x).abs() < 1e-11);
        }
        // both sides of the a = 144 switch against 40-digit references
        let lo = kernel_j(1.5, 143.0, 143.0, KernelVariant::Entire).unwrap();
        let hi = kernel_j(1.5, 145.0, 145.0, KernelVariant::Entire).unwrap();
        assert!((lo / 7.442_307_413_457_436_3e-6 - 1.0).abs() < 1e-11);
        assert!((hi / 7.271_008_684_943_165_3e-6 - 1.0).abs() < 1e-11);
        let far = kernel_j(0.0, 400.0, 400.0, KernelVariant::Entire).unwrap();
        assert!((far / 8.090_976_246_297_275_7e-3 - 1.0).abs() < 1e-11);
        assert!(kernel_j(0.5, -1.0, 1.0, KernelVariant::Entire).is_err());
        assert!(kernel_j(0.5, 0.0, 1.0, KernelVariant::Raw).is_err());
        assert!(kernel_j(-1.0, 1.0, 1.0, KernelVariant::Raw).is_err());
    }

    #[test]
    fn large_argument_law() {
        for &alpha in &[-0.5, 0.3, 1.0, 2.5] {
            let mut prev = f64::INFINITY;
            for &a in &[50.0, 100.0, 200.0, 500.0] {
                let v = kernel_l_diag(alpha, c(a), KernelVariant::Entire).unwrap().re;
                let dev = (PI * a.powf(alpha) * v - 1.0).abs();
                assert!(dev <= 0.05, "alpha {alpha} a {a} dev {dev}");
                // the deviation oscillates; its envelope decays like 1/a
                assert!(dev <= prev.max(alpha.abs() / a) + 1e-12);
                prev = dev;
            }
        }
    }

    #[test]
    fn cardinal_series_reproduces_samples_and_converges() {
        let alpha = 1.0;
        let direct = l_star(alpha, 0.4, 0.4);
        let approx = cardinal_series(alpha, 0.4, 0.4, 200).unwrap();
        assert!((approx - direct).abs() < 1e-3);
        let e100 = (cardinal_series(alpha, 0.4, 1.7, 100).unwrap() - l_star(alpha, 0.4, 1.7)).abs();
        let e400 = (cardinal_series(alpha, 0.4, 1.7, 400).unwrap() - l_star(alpha, 0.4, 1.7)).abs();
        assert!(e400 <= e100);
        let nodes = bessel_j_zeros(BesselOrder::new(0.0).unwrap(), 5).unwrap();
        for &j in &nodes {
            let s = cardinal_series(alpha, 1.3, j, 5).unwrap();
            assert!((s - l_star(alpha, 1.3, j)).abs() < 1e-12);
        }
        assert!(cardinal_series(alpha, 0.0, 0.0, 0).is_err());
    }
}
