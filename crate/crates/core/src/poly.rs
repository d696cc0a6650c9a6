//! Dense real polynomials in the monomial basis.

use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

const BISECTION_STEPS: usize = 200;
const MAX_SUBDIVISION_DEPTH: usize = 40;

/// Polynomial `c[0] + c[1] x + ... + c[d] x^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

impl Polynomial {
    /// Trailing zero coefficients are dropped; the zero polynomial keeps one entry.
    pub fn new(mut coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::domain("polynomial coefficients must be finite"));
        }
        while coeffs.len() > 1 && coeffs[coeffs.len() - 1] == 0.0 {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0.0);
        }
        Ok(Self { coeffs })
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    /// Value and first derivative.
    pub fn eval_with_derivative(&self, x: f64) -> (f64, f64) {
        let mut p = 0.0;
        let mut dp = 0.0;
        for &c in self.coeffs.iter().rev() {
            dp = dp * x + p;
            p = p * x + c;
        }
        (p, dp)
    }

    pub fn derivative(&self) -> Polynomial {
        if self.coeffs.len() == 1 {
            return Polynomial { coeffs: vec![0.0] };
        }
        let coeffs = self.coeffs[1..].iter().enumerate().map(|(k, c)| c * (k + 1) as f64).collect();
        Polynomial { coeffs }
    }

    /// `self + shift`.
    pub fn add_constant(&self, shift: f64) -> Polynomial {
        let mut coeffs = self.coeffs.clone();
        coeffs[0] += shift;
        Polynomial { coeffs }
    }

    /// Coefficients of `q(t) = p(lo + (hi - lo) t)`.
    fn rescaled(&self, lo: f64, hi: f64) -> Vec<f64> {
        let n = self.coeffs.len();
        let h = hi - lo;
        // Taylor shift to lo (synthetic division), then scale
        let mut c = self.coeffs.clone();
        for i in 0..n {
            for j in (i..n - 1).rev() {
                c[j] += lo * c[j + 1];
            }
        }
        let mut s = 1.0;
        for v in c.iter_mut() {
            *v *= s;
            s *= h;
        }
        c
    }

    /// True if the polynomial is certified strictly positive on `[lo, hi]`
    /// (Bernstein coefficients on dyadic subintervals).
    pub fn is_positive_on(&self, lo: f64, hi: f64) -> bool {
        if !(lo <= hi) {
            return false;
        }
        let t = self.rescaled(lo, hi);
        let n = t.len() - 1;
        // power basis on [0,1] to Bernstein: b_i = sum_{j<=i} C(i,j)/C(n,j) t_j
        let mut bern = vec![0.0; n + 1];
        for (i, b) in bern.iter_mut().enumerate() {
            let mut acc = 0.0;
            let mut cij = 1.0; // C(i, j)
            let mut cnj = 1.0; // C(n, j)
            for (j, tj) in t.iter().enumerate().take(i + 1) {
                acc += cij / cnj * tj;
                cij = cij * (i - j) as f64 / (j + 1) as f64;
                cnj = cnj * (n - j) as f64 / (j + 1) as f64;
            }
            *b = acc;
        }
        bernstein_positive(&bern, 0)
    }

    /// Real roots in `[lo, hi]`, ascending. Roots of even multiplicity are
    /// reported when the value at the corresponding critical point is below
    /// `touch_tol` in magnitude.
    pub fn real_roots_in(&self, lo: f64, hi: f64, touch_tol: f64) -> Vec<f64> {
        if self.degree() == 0 {
            return Vec::new();
        }
        let crit = if self.degree() >= 2 { self.derivative().real_roots_in(lo, hi, 0.0) } else { Vec::new() };
        let mut knots = Vec::with_capacity(crit.len() + 2);
        knots.push(lo);
        knots.extend(crit.iter().copied().filter(|&c| c > lo && c < hi));
        knots.push(hi);
        let mut roots: Vec<f64> = Vec::new();
        let push = |r: f64, roots: &mut Vec<f64>| {
            if roots.last().is_none_or(|&last| r > last) {
                roots.push(r);
            }
        };
        for w in knots.windows(2) {
            let (a, b) = (w[0], w[1]);
            let (fa, fb) = (self.eval(a), self.eval(b));
            if fa == 0.0 || (a != lo && fa.abs() <= touch_tol) {
                push(a, &mut roots);
                continue;
            }
            if fb == 0.0 || fa.signum() == fb.signum() {
                continue;
            }
            push(bisect(|x| self.eval(x), a, b, fa), &mut roots);
        }
        let fh = self.eval(hi);
        if fh == 0.0 {
            push(hi, &mut roots);
        }
        roots
    }
}

fn bernstein_positive(b: &[f64], depth: usize) -> bool {
    let n = b.len() - 1;
    if b[0] <= 0.0 || b[n] <= 0.0 {
        return false;
    }
    if b.iter().all(|&v| v > 0.0) {
        return true;
    }
    if depth >= MAX_SUBDIVISION_DEPTH {
        return false;
    }
    // de Casteljau at t = 1/2
    let mut work = b.to_vec();
    let mut left = Vec::with_capacity(n + 1);
    let mut right = vec![0.0; n + 1];
    left.push(work[0]);
    right[n] = work[n];
    for r in 1..=n {
        for i in 0..=n - r {
            work[i] = 0.5 * (work[i] + work[i + 1]);
        }
        left.push(work[0]);
        right[n - r] = work[n - r];
    }
    bernstein_positive(&left, depth + 1) && bernstein_positive(&right, depth + 1)
}

/// Bisection on a bracket with a sign change; `fa = f(a)`.
pub(crate) fn bisect(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, fa: f64) -> f64 {
    let sa = fa.signum();
    for _ in 0..BISECTION_STEPS {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let fm = f(m);
        if fm == 0.0 {
            return m;
        }
        if fm.signum() == sa {
            a = m;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[f64]) -> Polynomial {
        Polynomial::new(c.to_vec()).unwrap()
    }

    #[test]
    fn evaluation_and_derivative() {
        let q = p(&[-1.0, 0.0, 2.0, 0.0]);
        assert_eq!(q.degree(), 2);
        assert_eq!(q.eval(3.0), 17.0);
        assert_eq!(q.eval_with_derivative(3.0), (17.0, 12.0));
        assert_eq!(q.derivative().coeffs(), &[0.0, 4.0]);
    }

    #[test]
    fn roots_of_chebyshev_polynomial() {
        // T_4 = 8x^4 - 8x^2 + 1
        let t4 = p(&[1.0, 0.0, -8.0, 0.0, 8.0]);
        let roots = t4.real_roots_in(-1.0, 1.0, 0.0);
        assert_eq!(roots.len(), 4);
        for (k, r) in roots.iter().enumerate() {
            let want = -((2 * k + 1) as f64 * core::f64::consts::PI / 8.0).cos();
            assert!((r - want).abs() < 1e-15);
        }
        // T_2 - 1 = 2x^2 - 2 touches nothing; T_2 + 1 = 2x^2 has a double root
        let t2p1 = p(&[0.0, 0.0, 2.0]);
        assert_eq!(t2p1.real_roots_in(-1.0, 1.0, 1e-14), vec![0.0]);
        assert_eq!(p(&[-2.0, 0.0, 2.0]).real_roots_in(-1.0, 1.0, 0.0), vec![-1.0, 1.0]);
    }

    #[test]
    fn positivity_certificate() {
        assert!(p(&[1.0, 0.0, 1.0]).is_positive_on(-3.0, 3.0));
        assert!(p(&[2e-3, -0.2, 10.0]).is_positive_on(-1.0, 1.0));
        assert!(!p(&[-1e-3, 0.0, 10.0]).is_positive_on(-1.0, 1.0));
        assert!(!p(&[1.0, -1.0]).is_positive_on(0.0, 1.0));
        assert!(p(&[2.0]).is_positive_on(-5.0, 5.0));
    }
}
