//! Equilibrium measures of finite unions of intervals and polynomial
//! inverse images `E_N = T_N^{-1}([-1, 1])`.
//!
//! On `K = [a_0, b_0] U ... U [a_{N-1}, b_{N-1}]` the equilibrium density is
//!
//! ```text
//!     omega(x) = |q(x)| / (pi sqrt|R(x)|),   R(x) = prod_j (x - a_j)(x - b_j)
//! ```
//!
//! with `q` monic of degree `N - 1` and `int_gap q / sqrt|R| = 0` on every gap.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::linalg::Matrix;
use crate::measure::{validate_intervals, Interval};
use crate::orthopoly::gauss_jacobi;
use crate::poly::{bisect, Polynomial};
use crate::{Error, Result};
#[allow(unused_imports)] // inherent float methods shadow it whenever std is linked
use num_traits::Float;

/// Largest number of bands accepted by [`equilibrium_density`].
pub const MAX_BANDS: usize = 8;

const CHEBYSHEV_POINTS: usize = 128;
const PUSHFORWARD_POINTS: usize = 48;
/// Critical values within this distance of `+-1` count as band touch points.
const TOUCH_TOL: f64 = 1e-12;

/// Sorted, non-overlapping bands; touching bands are allowed.
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalSystem {
    intervals: Vec<Interval>,
}

impl IntervalSystem {
    pub fn new(intervals: Vec<Interval>) -> Result<Self> {
        Ok(Self { intervals: validate_intervals(intervals)? })
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    /// Touching bands joined.
    pub fn merged(&self) -> Vec<Interval> {
        let mut out: Vec<Interval> = Vec::with_capacity(self.intervals.len());
        for iv in &self.intervals {
            match out.last_mut() {
                Some(last) if last.hi == iv.lo => last.hi = iv.hi,
                _ => out.push(*iv),
            }
        }
        out
    }
}

/// Equilibrium density of an interval system.
#[derive(Debug, Clone, PartialEq)]
pub struct EquilibriumDensity {
    system: IntervalSystem,
    bands: Vec<Interval>,
    gap_poly: Polynomial,
    scale: f64,
}

/// `int_l^r f(t) dt / sqrt((t - l)(r - t))` by `m`-point Gauss-Chebyshev.
fn chebyshev_integral(l: f64, r: f64, m: usize, f: impl Fn(f64) -> f64) -> f64 {
    let (c, h) = (0.5 * (l + r), 0.5 * (r - l));
    let mut s = 0.0;
    for i in 0..m {
        let theta = (2 * i + 1) as f64 * PI / (2 * m) as f64;
        s += f(c + h * theta.cos());
    }
    s * PI / m as f64
}

impl EquilibriumDensity {
    pub fn system(&self) -> &IntervalSystem {
        &self.system
    }

    /// Bands after joining touching intervals.
    pub fn bands(&self) -> &[Interval] {
        &self.bands
    }

    /// Monic gap polynomial `q`, one root per gap.
    pub fn gap_poly(&self) -> &Polynomial {
        &self.gap_poly
    }

    fn endpoints(&self) -> impl Iterator<Item = f64> + '_ {
        self.bands.iter().flat_map(|b| [b.lo, b.hi])
    }

    /// `sqrt|R(t)|` with the factors of the band `[l, r]` removed.
    fn reduced_root(&self, t: f64, l: f64, r: f64) -> f64 {
        let mut p = 1.0;
        for e in self.endpoints() {
            if e != l && e != r {
                p *= (t - e).abs();
            }
        }
        p.sqrt()
    }

    fn value_unchecked(&self, x: f64) -> f64 {
        let r: f64 = self.endpoints().map(|e| (x - e).abs()).product();
        self.gap_poly.eval(x).abs() / (PI * r.sqrt()) / self.scale
    }

    /// Total mass; 1 up to quadrature error.
    pub fn total(&self) -> f64 {
        self.bands
            .iter()
            .map(|b| {
                chebyshev_integral(b.lo, b.hi, CHEBYSHEV_POINTS, |t| {
                    self.gap_poly.eval(t).abs() / self.reduced_root(t, b.lo, b.hi)
                }) / PI
                    / self.scale
            })
            .sum()
    }
}

/// Solves the gap conditions for `q`.
pub fn equilibrium_density(system: &IntervalSystem) -> Result<EquilibriumDensity> {
    let bands = system.merged();
    let n = bands.len();
    if n > MAX_BANDS {
        return Err(Error::precondition(format!("at most {MAX_BANDS} bands are supported, got {n}")));
    }
    let hull_c = 0.5 * (bands[0].lo + bands[n - 1].hi);
    let hull_h = 0.5 * (bands[n - 1].hi - bands[0].lo);
    let mut eq = EquilibriumDensity {
        system: system.clone(),
        bands: bands.clone(),
        gap_poly: Polynomial::new(vec![1.0])?,
        scale: 1.0,
    };
    if n > 1 {
        // q(t) = h^{n-1} Q(u), u = (t - c)/h, Q monic: sum_k c_k I_jk = -I_{j,n-1}
        let m = n - 1;
        let mut mat = Matrix::zeros(m);
        let mut rhs = vec![0.0; m];
        for j in 0..m {
            let (l, r) = (bands[j].hi, bands[j + 1].lo);
            for k in 0..=m {
                let v = chebyshev_integral(l, r, CHEBYSHEV_POINTS, |t| {
                    ((t - hull_c) / hull_h).powi(k as i32) / eq.reduced_root(t, l, r)
                });
                if k < m {
                    mat.set(j, k, v);
                } else {
                    rhs[j] = -v;
                }
            }
        }
        let mut cu = mat.solve(&rhs)?;
        cu.push(1.0);
        // expand sum_k cu_k ((t - c)/h)^k and rescale to monic in t
        let mut ct = vec![0.0; n];
        let mut power = vec![1.0]; // coefficients of (t - c)^k
        for (k, &ck) in cu.iter().enumerate() {
            let f = ck / hull_h.powi(k as i32) * hull_h.powi(m as i32);
            for (i, &p) in power.iter().enumerate() {
                ct[i] += f * p;
            }
            let mut next = vec![0.0; power.len() + 1];
            for (i, &p) in power.iter().enumerate() {
                next[i + 1] += p;
                next[i] -= hull_c * p;
            }
            power = next;
        }
        ct[m] = 1.0;
        eq.gap_poly = Polynomial::new(ct)?;
        for j in 0..m {
            let (l, r) = (bands[j].hi, bands[j + 1].lo);
            let roots = eq.gap_poly.real_roots_in(l, r, 0.0);
            if roots.len() != 1 || roots[0] <= l || roots[0] >= r {
                return Err(Error::numeric(format!("gap polynomial has no single root in the gap ({l}, {r})")));
            }
        }
    }
    let total = eq.total();
    if !(total.is_finite() && total > 0.0) {
        return Err(Error::numeric("equilibrium density failed to normalize"));
    }
    eq.scale = total;
    Ok(eq)
}

/// `omega(x)` for `x` inside a band.
pub fn density_at_eq(eq: &EquilibriumDensity, x: f64) -> Result<f64> {
    if !eq.bands.iter().any(|b| x > b.lo && x < b.hi) {
        return Err(Error::domain(format!("{x} is not interior to a band")));
    }
    Ok(eq.value_unchecked(x))
}

/// `M(K, x0) = lim sqrt(2) pi |x - x0|^{1/2} omega(x)` at a band endpoint,
/// from the closed form with the vanishing factor of `R` cancelled.
pub fn edge_constant(eq: &EquilibriumDensity, x0: f64) -> Result<f64> {
    if !eq.endpoints().any(|e| e == x0) {
        return Err(Error::domain(format!("{x0} is not a band endpoint")));
    }
    let rest: f64 = eq.endpoints().filter(|&e| e != x0).map(|e| (x0 - e).abs()).product();
    Ok(2f64.sqrt() * eq.gap_poly.eval(x0).abs() / rest.sqrt() / eq.scale)
}

/// Polynomial with real simple zeros whose critical values satisfy `|T(c)| >= 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct AdmissiblePolynomial {
    poly: Polynomial,
    derivative: Polynomial,
    critical_points: Vec<f64>,
    bound: f64,
}

impl AdmissiblePolynomial {
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        let poly = Polynomial::new(coeffs)?;
        let n = poly.degree();
        if n == 0 {
            return Err(Error::Validation("T_N must have degree at least 1".into()));
        }
        let c = poly.coeffs();
        let lead = c[n].abs();
        // Cauchy bound for the roots of T and of T -+ 1
        let bound = 1.0 + c[..n].iter().map(|v| v.abs()).fold(c[0].abs() + 1.0, f64::max) / lead;
        let roots = poly.real_roots_in(-bound, bound, 0.0);
        if roots.len() != n {
            return Err(Error::Validation(format!(
                "zeros of T_N must be real and simple: found {} of {n} distinct real zeros",
                roots.len()
            )));
        }
        let derivative = poly.derivative();
        let critical_points = if n >= 2 { derivative.real_roots_in(-bound, bound, 0.0) } else { Vec::new() };
        if critical_points.len() != n - 1 {
            return Err(Error::Validation("critical points of T_N must be real and simple".into()));
        }
        for &cp in &critical_points {
            let v = poly.eval(cp);
            if v.abs() < 1.0 - TOUCH_TOL {
                return Err(Error::Validation(format!("critical value |T_N({cp})| = {} is below 1", v.abs())));
            }
        }
        Ok(Self { poly, derivative, critical_points, bound })
    }

    pub fn degree(&self) -> usize {
        self.poly.degree()
    }

    pub fn poly(&self) -> &Polynomial {
        &self.poly
    }

    pub fn critical_points(&self) -> &[f64] {
        &self.critical_points
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.poly.eval(x)
    }

    pub fn derivative_at(&self, x: f64) -> f64 {
        self.derivative.eval(x)
    }

    /// Band endpoints on each monotone piece, as `(lo, hi)`.
    fn bands(&self) -> Vec<(f64, f64)> {
        let mut knots = vec![-self.bound];
        knots.extend_from_slice(&self.critical_points);
        knots.push(self.bound);
        knots
            .windows(2)
            .map(|w| {
                let solve = |s: f64| {
                    for &edge in w {
                        if (self.poly.eval(edge) - s).abs() <= TOUCH_TOL {
                            return edge;
                        }
                    }
                    let f = |x: f64| self.poly.eval(x) - s;
                    bisect(f, w[0], w[1], f(w[0]))
                };
                let (u, v) = (solve(-1.0), solve(1.0));
                (u.min(v), u.max(v))
            })
            .collect()
    }
}

/// `T^{-1}([-1, 1])` as `N` bands; bands touch where a critical value is `+-1`.
pub fn inverse_image(t: &AdmissiblePolynomial) -> Result<IntervalSystem> {
    let mut bands = t.bands();
    // snap touching endpoints so the system sees them as shared
    for i in 1..bands.len() {
        if bands[i].0 <= bands[i - 1].1 {
            bands[i].0 = bands[i - 1].1;
        }
    }
    IntervalSystem::new(bands.into_iter().map(|(lo, hi)| Interval { lo, hi }).collect())
}

/// `|T'(x)| / (N pi sqrt(1 - T(x)^2))`.
pub fn inverse_image_density(t: &AdmissiblePolynomial, x: f64) -> Result<f64> {
    let v = t.eval(x);
    if !(v.abs() < 1.0) {
        return Err(Error::domain(format!("|T_N({x})| = {} is not below 1", v.abs())));
    }
    Ok(t.derivative_at(x).abs() / (t.degree() as f64 * PI * (1.0 - v * v).sqrt()))
}

/// `|int_{-1}^{1} f - (1/N) int_{E_N} f(T(x)) |T'(x)| dx|` for
/// `f(y) = g(y) |y|^alpha`.
pub fn pushforward_check(t: &AdmissiblePolynomial, g: impl Fn(f64) -> f64, alpha: f64) -> Result<f64> {
    if !alpha.is_finite() || alpha <= -1.0 {
        return Err(Error::domain("alpha must be finite and exceed -1"));
    }
    let m = PUSHFORWARD_POINTS;
    // rule for (1 - s)^alpha on [-1, 1], mapped so the singular end sits at the split point
    let sing = gauss_jacobi(m, alpha, 0.0)?;
    let plain = gauss_jacobi(m, 0.0, 0.0)?;

    // int over [lo, hi] of h(x) |x - z|^alpha with z an endpoint
    let panel = |lo: f64, hi: f64, z: f64, h: &dyn Fn(f64) -> f64| -> f64 {
        let half = 0.5 * (hi - lo);
        let mut s = 0.0;
        for (&u, &w) in sing.nodes.iter().zip(&sing.weights) {
            // u = 1 at the singular end
            let x = if z == hi { lo + half * (1.0 + u) } else { hi - half * (1.0 + u) };
            s += w * h(x);
        }
        s * half.powf(1.0 + alpha)
    };

    let lhs = panel(-1.0, 0.0, 0.0, &g) + panel(0.0, 1.0, 0.0, &g);

    let n = t.degree() as f64;
    let mut rhs = 0.0;
    let zeros = t.poly.real_roots_in(-t.bound, t.bound, 0.0);
    for band in inverse_image(t)?.intervals() {
        let (lo, hi) = (band.lo, band.hi);
        let integrand = |x: f64| g(t.eval(x)) * t.derivative_at(x).abs();
        match zeros.iter().find(|&&z| z > lo && z < hi) {
            Some(&z) => {
                // |T(x)|^alpha = (|T(x)| / |x - z|)^alpha |x - z|^alpha
                let h = |x: f64| {
                    let ratio = if x == z { t.derivative_at(z).abs() } else { (t.eval(x) / (x - z)).abs() };
                    integrand(x) * ratio.powf(alpha)
                };
                rhs += panel(lo, z, z, &h) + panel(z, hi, z, &h);
            }
            None => {
                let half = 0.5 * (hi - lo);
                let mid = 0.5 * (hi + lo);
                rhs += half
                    * plain
                        .nodes
                        .iter()
                        .zip(&plain.weights)
                        .map(|(&u, &w)| {
                            let x = mid + half * u;
                            w * integrand(x) * t.eval(x).abs().powf(alpha)
                        })
                        .sum::<f64>();
            }
        }
    }
    Ok((lhs - rhs / n).abs())
}
