//! Christoffel-Darboux kernels, Christoffel functions and the zeros of
//! `psi_n(xi, y) = p_n(xi) p_{n-1}(y) - p_n(y) p_{n-1}(xi)`.

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::linalg::Matrix;
use crate::measure::{density_at, GJMeasure};
use crate::orthopoly::{
    composite_quadrature, eval_orthonormal, eval_scaled, eval_with_derivative, poly_zeros, RecurrenceTable,
};
use crate::{Error, Result};
#[allow(unused_imports)] // inherent float methods shadow it whenever std is linked
use num_traits::Float;

/// Relative width below which `kernel_cd` switches to the confluent form.
pub const CD_CONFLUENT_TOL: f64 = 1e-8;
/// Largest degree accepted by the Gram-matrix oracle.
pub const ORACLE_MAX_N: usize = 20;
/// Largest correlation determinant order.
pub const MAX_CORRELATION_POINTS: usize = 12;

const ZERO_WIDTH: f64 = 1e-13;

fn check_n(table: &RecurrenceTable, n: usize) -> Result<()> {
    if n == 0 || n > table.size() {
        return Err(Error::precondition(format!("K_{n} needs 1 <= n <= table size {}", table.size())));
    }
    Ok(())
}

/// `K_n(x, y) = sum_{k < n} p_k(x) p_k(y)`.
pub fn kernel_direct(table: &RecurrenceTable, n: usize, x: f64, y: f64) -> Result<f64> {
    check_n(table, n)?;
    let p0 = 1.0 / table.mass().sqrt();
    let (mut xp, mut xc) = (0.0, p0);
    let (mut yp, mut yc) = (0.0, p0);
    let mut sum = 1.0 / table.mass();
    for k in 0..n - 1 {
        let a = table.a(k + 1);
        let xn = ((x - table.b(k)) * xc - table.a(k) * xp) / a;
        let yn = ((y - table.b(k)) * yc - table.a(k) * yp) / a;
        xp = xc;
        xc = xn;
        yp = yc;
        yc = yn;
        sum += xc * yc;
    }
    Ok(sum)
}

/// `K_n(x, y)` by the Christoffel-Darboux formula, with the confluent
/// derivative form when `|x - y| < 1e-8 max(1, |x|)`.
///
/// The formula needs `a_n`; for `n` equal to the table size the direct sum
/// is used instead.
pub fn kernel_cd(table: &RecurrenceTable, n: usize, x: f64, y: f64) -> Result<f64> {
    check_n(table, n)?;
    if n == table.size() {
        return kernel_direct(table, n, x, y);
    }
    let an = table.a(n);
    if (x - y).abs() < CD_CONFLUENT_TOL * x.abs().max(1.0) {
        let m = 0.5 * (x + y);
        let [p, q, dp, dq] = eval_with_derivative(table, n, m);
        return Ok(dp.mul(q).sub(dq.mul(p)).scale(an).value());
    }
    let (px, qx) = eval_orthonormal(table, n, x)?;
    let (py, qy) = eval_orthonormal(table, n, y)?;
    Ok(an * (px * qy - qx * py) / (x - y))
}

/// `lambda_n(x) = 1 / K_n(x, x)`.
pub fn christoffel(table: &RecurrenceTable, n: usize, x: f64) -> Result<f64> {
    Ok(1.0 / kernel_cd(table, n, x, x)?)
}

/// `lambda_n(x)` as the constrained minimum of `int |P|^2 dmu` over
/// `deg P < n`, `P(x) = 1`, using a Chebyshev Gram matrix on the convex
/// hull of the support; independent of any recurrence.
pub fn christoffel_oracle(mu: &GJMeasure, n: usize, x: f64) -> Result<f64> {
    if n == 0 || n > ORACLE_MAX_N {
        return Err(Error::precondition(format!("oracle degree must be in 1..={ORACLE_MAX_N}")));
    }
    let hull = mu.hull();
    let (c, h) = (0.5 * (hull.lo + hull.hi), 0.5 * (hull.hi - hull.lo));
    let cheb = |t: f64| {
        let u = (t - c) / h;
        let mut v = Vec::with_capacity(n);
        let (mut prev, mut cur) = (1.0, u);
        v.push(1.0);
        for _ in 1..n {
            v.push(cur);
            let next = 2.0 * u * cur - prev;
            prev = cur;
            cur = next;
        }
        v
    };
    // Gram = R^T R from a twice-orthogonalized Gram-Schmidt of the weighted
    // Vandermonde columns; forming the Gram matrix directly squares its
    // condition number, which matters on sets with gaps
    let rule = composite_quadrature(mu, n + 10)?;
    let mut cols: Vec<Vec<f64>> = (0..n).map(|_| Vec::with_capacity(rule.len())).collect();
    for (&t, &w) in rule.nodes.iter().zip(&rule.weights) {
        let sw = w.sqrt();
        for (col, v) in cols.iter_mut().zip(cheb(t)) {
            col.push(sw * v);
        }
    }
    let mut l = Matrix::zeros(n);
    for j in 0..n {
        let (done, rest) = cols.split_at_mut(j);
        let cj = &mut rest[0];
        for _pass in 0..2 {
            for (i, qi) in done.iter().enumerate() {
                let r: f64 = qi.iter().zip(cj.iter()).map(|(a, b)| a * b).sum();
                cj.iter_mut().zip(qi).for_each(|(c, q)| *c -= r * q);
                l.set(j, i, l.get(j, i) + r);
            }
        }
        let norm = cj.iter().map(|v| v * v).sum::<f64>().sqrt();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::numeric("rank-deficient moment system in the Christoffel oracle"));
        }
        cj.iter_mut().for_each(|c| *c /= norm);
        l.set(j, j, norm);
    }
    let y = l.forward_substitute(&cheb(x));
    let q: f64 = y.iter().map(|v| v * v).sum();
    if !(q > 0.0 && q.is_finite()) {
        return Err(Error::numeric("degenerate Gram system in the Christoffel oracle"));
    }
    Ok(1.0 / q)
}

/// `sqrt(w(x) w(y)) K_n(x, y)`; `+inf` when either point is a singularity
/// with negative exponent.
pub fn normalized_kernel(mu: &GJMeasure, table: &RecurrenceTable, n: usize, x: f64, y: f64) -> Result<f64> {
    let (wx, wy) = (density_at(mu, x)?, density_at(mu, y)?);
    if wx.is_infinite() || wy.is_infinite() {
        return Ok(f64::INFINITY);
    }
    Ok((wx * wy).sqrt() * kernel_cd(table, n, x, y)?)
}

/// `K_n(x0 + a*/n, x0 + b*/n) / K_n(x0, x0)` with `a* = a / (pi omega)`,
/// where `omega` is the equilibrium density at `x0`.
pub fn f_n_ratio(table: &RecurrenceTable, n: usize, x0: f64, omega: f64, a: f64, b: f64) -> Result<f64> {
    if !(omega.is_finite() && omega > 0.0) {
        return Err(Error::domain("omega must be positive"));
    }
    let s = PI * omega * n as f64;
    let num = kernel_cd(table, n, x0 + a / s, x0 + b / s)?;
    Ok(num / kernel_cd(table, n, x0, x0)?)
}

/// Zeros `t_k` of `psi_n(xi, .)` around `xi = t_0`, indexed `k_min..=k_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelZeroSet {
    pub center: f64,
    pub zeros: Vec<f64>,
    pub k_min: i64,
    /// The zero outside `[x_1n, x_nn]`, when one exists and was found.
    pub exterior: Option<f64>,
}

impl KernelZeroSet {
    pub fn k_max(&self) -> i64 {
        self.k_min + self.zeros.len() as i64 - 1
    }

    pub fn get(&self, k: i64) -> Option<f64> {
        if k < self.k_min || k > self.k_max() {
            return None;
        }
        Some(self.zeros[(k - self.k_min) as usize])
    }

    pub fn indexed(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        self.zeros.iter().enumerate().map(move |(i, &t)| (self.k_min + i as i64, t))
    }
}

struct Psi<'a> {
    table: &'a RecurrenceTable,
    n: usize,
    pxi: f64,
    qxi: f64,
}

impl Psi<'_> {
    fn value(&self, y: f64) -> f64 {
        let (p, q) = eval_scaled(self.table, self.n, y);
        self.pxi * q - p * self.qxi
    }

    fn root_in(&self, lo: f64, hi: f64) -> Option<f64> {
        let (flo, fhi) = (self.value(lo), self.value(hi));
        if flo == 0.0 {
            return Some(lo);
        }
        if fhi == 0.0 {
            return Some(hi);
        }
        if flo.signum() == fhi.signum() {
            return None;
        }
        let (mut a, mut b) = (lo, hi);
        let sa = flo.signum();
        while b - a > ZERO_WIDTH * a.abs().max(1.0) {
            let m = 0.5 * (a + b);
            if m <= a || m >= b {
                break;
            }
            let fm = self.value(m);
            if fm == 0.0 {
                return Some(m);
            }
            if fm.signum() == sa {
                a = m;
            } else {
                b = m;
            }
        }
        let mid = 0.5 * (a + b);
        // one Newton step, kept only if it stays in the final bracket
        let [p, q, dp, dq] = eval_with_derivative(self.table, self.n, mid).map(|v| v.value());
        let f = self.pxi * q - p * self.qxi;
        let df = self.pxi * dq - dp * self.qxi;
        if df != 0.0 {
            let t = mid - f / df;
            if t >= a && t <= b {
                return Some(t);
            }
        }
        Some(mid)
    }
}

/// The `window` zeros of `psi_n(xi, .)` on each side of `xi`, plus `xi`.
///
/// Zeros are bracketed by consecutive zeros of `p_n`; the single zero
/// outside `[x_1n, x_nn]` is searched in geometrically growing steps up to
/// one unit beyond the convex hull of the zeros. When `p_n(xi) = 0` the
/// zero set is that of `p_n`.
pub fn kernel_zeros(table: &RecurrenceTable, n: usize, xi: f64, window: usize) -> Result<KernelZeroSet> {
    if n == 0 || n >= table.size() {
        return Err(Error::precondition(format!("kernel zeros for degree {n} need a table of size > {n}")));
    }
    if window == 0 || 2 * window > n {
        return Err(Error::precondition(format!("window must be in 1..={}", n / 2)));
    }
    if !xi.is_finite() {
        return Err(Error::domain("xi must be finite"));
    }
    let xz = poly_zeros(table, n)?;
    let (pxi, qxi) = eval_scaled(table, n, xi);

    // xi at a zero of p_n: psi is a multiple of p_n
    let nearest =
        xz.iter().enumerate().min_by(|a, b| (a.1 - xi).abs().total_cmp(&(b.1 - xi).abs())).map(|(i, _)| i).unwrap_or(0);
    if pxi.abs() <= 1e-12 * qxi.abs() || xz[nearest] == xi {
        let c = nearest;
        if c < window || c + window >= n {
            let side = if c < window { "left" } else { "right" };
            return Err(Error::numeric(format!("not enough zeros on the {side} side of {xi}")));
        }
        return Ok(KernelZeroSet {
            center: xi,
            zeros: xz[c - window..=c + window].to_vec(),
            k_min: -(window as i64),
            exterior: None,
        });
    }

    let psi = Psi { table, n, pxi, qxi };
    let inside = xi > xz[0] && xi < xz[n - 1];
    let exterior = if inside { find_exterior(&psi, &xz) } else { Some(xi) };

    enum Slot {
        Fixed(f64),
        Bracket(f64, f64),
    }
    let mut slots = Vec::with_capacity(n);
    let mut c = 0;
    if let Some(e) = exterior.filter(|&e| e < xz[0]) {
        slots.push(Slot::Fixed(e));
    }
    for w in xz.windows(2) {
        if inside && xi > w[0] && xi < w[1] {
            c = slots.len();
            slots.push(Slot::Fixed(xi));
        } else {
            slots.push(Slot::Bracket(w[0], w[1]));
        }
    }
    if let Some(e) = exterior.filter(|&e| e > xz[n - 1]) {
        slots.push(Slot::Fixed(e));
    }
    if !inside {
        c = if xi < xz[0] { 0 } else { slots.len() - 1 };
    }
    if c < window {
        return Err(Error::numeric(format!("bracket exhaustion on the left side of {xi}")));
    }
    if c + window >= slots.len() {
        return Err(Error::numeric(format!("bracket exhaustion on the right side of {xi}")));
    }
    let mut zeros = Vec::with_capacity(2 * window + 1);
    for slot in &slots[c - window..=c + window] {
        match *slot {
            Slot::Fixed(t) => zeros.push(t),
            Slot::Bracket(l, r) => match psi.root_in(l, r) {
                Some(t) => zeros.push(t),
                None => return Err(Error::numeric(format!("no sign change of psi between the p_n zeros {l} and {r}"))),
            },
        }
    }
    if zeros.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::numeric("kernel zeros are not strictly increasing"));
    }
    Ok(KernelZeroSet { center: xi, zeros, k_min: -(window as i64), exterior })
}

fn find_exterior(psi: &Psi<'_>, xz: &[f64]) -> Option<f64> {
    let (first, last) = (xz[0], xz[xz.len() - 1]);
    let span = (last - first).max(1e-3);
    for (edge, dir) in [(first, -1.0), (last, 1.0)] {
        let limit = edge + dir * (span + 1.0);
        let mut step = 1e-3 * span;
        let mut inner = edge;
        loop {
            let outer = edge + dir * step;
            let outer = if (outer - limit) * dir > 0.0 { limit } else { outer };
            let (lo, hi) = if dir < 0.0 { (outer, inner) } else { (inner, outer) };
            if let Some(t) = psi.root_in(lo, hi) {
                if t != edge {
                    return Some(t);
                }
            }
            if outer == limit {
                break;
            }
            inner = outer;
            step *= 2.0;
        }
    }
    None
}

/// `det [sqrt(w(x_i) w(x_j)) K_n(x_i, x_j)]`.
pub fn correlation_det(mu: &GJMeasure, table: &RecurrenceTable, n: usize, points: &[f64]) -> Result<f64> {
    let k = points.len();
    if k == 0 || k > MAX_CORRELATION_POINTS {
        return Err(Error::precondition(format!("between 1 and {MAX_CORRELATION_POINTS} points are required")));
    }
    let mut w = Vec::with_capacity(k);
    for &x in points {
        let d = density_at(mu, x)?;
        if d.is_infinite() {
            return Err(Error::domain(format!("the density is infinite at {x}")));
        }
        w.push(d.sqrt());
    }
    let mut m = Matrix::zeros(k);
    for i in 0..k {
        for j in 0..=i {
            let v = w[i] * w[j] * kernel_cd(table, n, points[i], points[j])?;
            m.set(i, j, v);
            m.set(j, i, v);
        }
    }
    Ok(m.determinant())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::{make_model_bulk, make_model_edge};
    use crate::orthopoly::{jacobi_recurrence, symmetric_singular_recurrence};

    fn legendre(n: usize) -> RecurrenceTable {
        jacobi_recurrence(0.0, 0.0, n).unwrap()
    }

    #[test]
    fn legendre_endpoint_values() {
        let t = legendre(65);
        for n in [1, 2, 7, 16, 64, 65] {
            let want = (n * n) as f64 / 2.0;
            assert!((kernel_direct(&t, n, 1.0, 1.0).unwrap() - want).abs() < 1e-12 * want);
            assert!((kernel_cd(&t, n, 1.0, 1.0).unwrap() - want).abs() < 1e-12 * want);
            assert!((christoffel(&t, n, 1.0).unwrap() - 2.0 / (n * n) as f64).abs() < 1e-15);
        }
        assert_eq!(kernel_direct(&t, 1, 0.3, -0.8).unwrap(), 0.5);
        assert!(kernel_cd(&t, 66, 0.0, 0.0).is_err());
        assert!(kernel_cd(&t, 0, 0.0, 0.0).is_err());
    }

    #[test]
    fn bulk_christoffel_limit_for_legendre() {
        let t = legendre(513);
        let v = 512.0 * christoffel(&t, 512, 0.0).unwrap();
        assert!((v / PI - 1.0).abs() < 0.02);
    }

    #[test]
    fn cd_formula_agrees_with_direct_sum() {
        let t = symmetric_singular_recurrence(1.0, 80).unwrap();
        let pts = [-0.93, -0.41, -1e-3, 0.0, 0.27, 0.5, 0.999];
        for &x in &pts {
            for &y in &pts {
                for &dy in &[0.0, 1e-6, 1e-9] {
                    let d = kernel_direct(&t, 64, x, y + dy).unwrap();
                    let c = kernel_cd(&t, 64, x, y + dy).unwrap();
                    assert!((d - c).abs() <= 1e-9 * d.abs().max(kernel_direct(&t, 64, x, x).unwrap()), "{x} {y} {dy}");
                }
            }
        }
    }

    #[test]
    fn oracle_matches_kernel() {
        let t = legendre(4);
        let lo = christoffel_oracle(&make_model_bulk(0.0).unwrap(), 3, 0.0).unwrap();
        assert!((lo - christoffel(&t, 3, 0.0).unwrap()).abs() < 1e-10 * lo);
        let mu = make_model_bulk(1.0).unwrap();
        let t = symmetric_singular_recurrence(1.0, 6).unwrap();
        let o = christoffel_oracle(&mu, 5, 0.3).unwrap();
        assert!((o * kernel_cd(&t, 5, 0.3, 0.3).unwrap() - 1.0).abs() < 1e-9);
        let e = make_model_edge(-0.5).unwrap();
        assert!((christoffel_oracle(&e, 1, 0.2).unwrap() - 2.0 * 2f64.sqrt()).abs() < 1e-12);
        assert!(christoffel_oracle(&e, 21, 0.2).is_err());
    }

    #[test]
    fn normalized_kernel_and_ratio() {
        let mu = make_model_bulk(0.0).unwrap();
        let t = legendre(30);
        assert_eq!(normalized_kernel(&mu, &t, 20, 0.1, 0.4).unwrap(), kernel_cd(&t, 20, 0.1, 0.4).unwrap());
        let mu = make_model_bulk(-0.5).unwrap();
        let t = symmetric_singular_recurrence(-0.5, 30).unwrap();
        assert_eq!(normalized_kernel(&mu, &t, 20, 0.0, 0.4).unwrap(), f64::INFINITY);
        assert!(normalized_kernel(&mu, &t, 20, 2.0, 0.4).is_err());
        let w = 1.0 / PI;
        assert_eq!(f_n_ratio(&t, 20, 0.0, w, 0.0, 0.0).unwrap(), 1.0);
        assert!(
            (f_n_ratio(&t, 20, 0.1, w, 0.3, 1.2).unwrap() - f_n_ratio(&t, 20, 0.1, w, 1.2, 0.3).unwrap()).abs() < 1e-14
        );
    }

    fn interlaces(t: &[f64], x: &[f64]) -> bool {
        // exactly one p_n zero between consecutive kernel zeros
        t.windows(2).all(|w| x.iter().filter(|&&z| z > w[0] && z < w[1]).count() == 1)
    }

    #[test]
    fn kernel_zeros_interlace_and_contain_the_center() {
        let t = symmetric_singular_recurrence(1.0, 65).unwrap();
        let xz = poly_zeros(&t, 64).unwrap();
        for &xi in &[0.0, 0.1, -0.37, 0.9] {
            let z = kernel_zeros(&t, 64, xi, 6).unwrap();
            assert_eq!(z.get(0), Some(xi));
            assert!(interlaces(&z.zeros, &xz));
            for (k, tk) in z.indexed().filter(|&(k, _)| k != 0) {
                let (p, q) = eval_orthonormal(&t, 64, tk).unwrap();
                let (pc, qc) = eval_orthonormal(&t, 64, xi).unwrap();
                let psi = pc * q - p * qc;
                let scale = pc.hypot(qc) * p.hypot(q);
                assert!(psi.abs() <= 1e-12 * scale, "k = {k}");
            }
            // p_63 is odd, so psi(0, .) is a multiple of p_63 and has no exterior zero
            assert_eq!(z.exterior.is_some(), xi != 0.0);
        }
    }

    #[test]
    fn kernel_zeros_at_a_polynomial_zero() {
        let t = legendre(21);
        let xz = poly_zeros(&t, 20).unwrap();
        let z = kernel_zeros(&t, 20, xz[10], 4).unwrap();
        assert_eq!(z.zeros, xz[6..=14].to_vec());
    }

    #[test]
    fn kernel_zero_window_limits() {
        let t = legendre(21);
        assert!(kernel_zeros(&t, 20, 0.0, 11).is_err());
        assert!(kernel_zeros(&t, 21, 0.0, 2).is_err());
        let err = kernel_zeros(&t, 20, 0.97, 5).unwrap_err();
        assert!(matches!(err, Error::Numeric(m) if m.contains("right")));
    }

    #[test]
    fn correlation_determinants() {
        let mu = make_model_bulk(1.0).unwrap();
        let t = symmetric_singular_recurrence(1.0, 40).unwrap();
        let r1 = correlation_det(&mu, &t, 32, &[0.3]).unwrap();
        assert!((r1 - 0.3 * kernel_cd(&t, 32, 0.3, 0.3).unwrap()).abs() < 1e-12 * r1);
        assert!(correlation_det(&mu, &t, 32, &[0.3, 0.3]).unwrap().abs() < 1e-9);
        for &(x, y) in &[(0.1, 0.2), (-0.5, 0.7), (0.01, -0.02)] {
            assert!(correlation_det(&mu, &t, 32, &[x, y]).unwrap() >= -1e-10);
        }
        let neg = make_model_bulk(-0.5).unwrap();
        let tn = symmetric_singular_recurrence(-0.5, 40).unwrap();
        assert!(correlation_det(&neg, &tn, 32, &[0.0, 0.2]).is_err());
        assert!(correlation_det(&mu, &t, 32, &[0.0; 13]).is_err());
    }
}
