//! Three-term recurrences for orthonormal polynomials: closed forms for the
//! classical and model weights, and a Lanczos (RKPW) reduction of a discrete
//! quadrature measure for everything else.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::linalg::tridiag_eigen;
use crate::measure::{GJMeasure, SmoothFactor};
use crate::specfun::gamma_fn;
use crate::twofold::Twofold;
use crate::{Error, Result};
#[allow(unused_imports)] // inherent float methods shadow it whenever std is linked
use num_traits::Float;

/// Largest table built from closed forms.
pub const MAX_TABLE_SIZE: usize = 100_000;

/// Extra Gauss points per panel beyond the table size when a measure's
/// recurrence is computed by Lanczos (degree `2n + 16` safety margin).
pub const QUADRATURE_MARGIN: usize = 9;

/// Recurrence `x p_k = a_{k+1} p_{k+1} + b_k p_k + a_k p_{k-1}`, `p_0 = mass^{-1/2}`.
///
/// A table of size `n` stores `b_0..b_{n-1}` and `a_1..a_{n-1}`, which
/// determines `p_0..p_{n-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct RecurrenceTable {
    mass: f64,
    diag: Vec<f64>,
    offdiag: Vec<f64>,
    /// Rounding residuals of `diag` and `offdiag` for closed-form tables.
    /// Near the edges of the support `lambda_n` amplifies coefficient
    /// rounding by roughly `n^{3/2}`, so the recurrences carry them.
    tails: Option<(Vec<f64>, Vec<f64>)>,
}

impl RecurrenceTable {
    pub fn new(mass: f64, diag: Vec<f64>, offdiag: Vec<f64>) -> Result<Self> {
        if !(mass.is_finite() && mass > 0.0) {
            return Err(Error::domain("mass must be positive"));
        }
        if diag.is_empty() || offdiag.len() + 1 != diag.len() {
            return Err(Error::precondition("table of size n needs n diagonal and n - 1 off-diagonal entries"));
        }
        if diag.iter().any(|b| !b.is_finite()) {
            return Err(Error::domain("diagonal coefficients must be finite"));
        }
        if let Some(k) = offdiag.iter().position(|a| !(a.is_finite() && *a > 0.0)) {
            return Err(Error::domain(format!("a_{} must be positive", k + 1)));
        }
        Ok(Self { mass, diag, offdiag, tails: None })
    }

    fn from_twofold(mass: f64, diag: Vec<Twofold>, offdiag: Vec<Twofold>) -> Result<Self> {
        let mut t = Self::new(mass, diag.iter().map(|v| v.hi).collect(), offdiag.iter().map(|v| v.hi).collect())?;
        t.tails = Some((diag.iter().map(|v| v.lo).collect(), offdiag.iter().map(|v| v.lo).collect()));
        Ok(t)
    }

    fn with_mass(mut self, mass: f64) -> Result<Self> {
        if !(mass.is_finite() && mass > 0.0) {
            return Err(Error::domain("mass must be positive"));
        }
        self.mass = mass;
        Ok(self)
    }

    /// `b_k` including its rounding residual.
    pub(crate) fn b_full(&self, k: usize) -> Twofold {
        let lo = self.tails.as_ref().map_or(0.0, |t| t.0[k]);
        Twofold { hi: self.diag[k], lo }
    }

    /// `a_k` including its rounding residual.
    pub(crate) fn a_full(&self, k: usize) -> Twofold {
        if k == 0 {
            return Twofold::ZERO;
        }
        let lo = self.tails.as_ref().map_or(0.0, |t| t.1[k - 1]);
        Twofold { hi: self.offdiag[k - 1], lo }
    }

    pub fn size(&self) -> usize {
        self.diag.len()
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    /// `a_1..a_{n-1}`.
    pub fn offdiag(&self) -> &[f64] {
        &self.offdiag
    }

    pub fn b(&self, k: usize) -> f64 {
        self.diag[k]
    }

    /// `a_k` for `k >= 1`; `a_0 = 0`.
    pub fn a(&self, k: usize) -> f64 {
        if k == 0 {
            0.0
        } else {
            self.offdiag[k - 1]
        }
    }

    /// The first `n` rows.
    pub fn truncated(&self, n: usize) -> Result<Self> {
        if n == 0 || n > self.size() {
            return Err(Error::precondition(format!("cannot truncate a table of size {} to {n}", self.size())));
        }
        Ok(Self {
            mass: self.mass,
            diag: self.diag[..n].to_vec(),
            offdiag: self.offdiag[..n - 1].to_vec(),
            tails: self.tails.as_ref().map(|(d, o)| (d[..n].to_vec(), o[..n - 1].to_vec())),
        })
    }

    fn check_degree(&self, n: usize) -> Result<()> {
        if n >= self.size() {
            return Err(Error::precondition(format!(
                "degree {n} needs a table of size at least {}, have {}",
                n + 1,
                self.size()
            )));
        }
        Ok(())
    }
}

/// Nodes and positive weights of a discrete measure.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn total(&self) -> f64 {
        self.weights.iter().sum()
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }
}

fn check_exponent(name: &str, v: f64) -> Result<()> {
    if !v.is_finite() || v <= -1.0 {
        return Err(Error::domain(format!("{name} must be finite and exceed -1")));
    }
    Ok(())
}

fn check_size(n: usize) -> Result<()> {
    if n == 0 || n > MAX_TABLE_SIZE {
        return Err(Error::domain(format!("table size must be in 1..={MAX_TABLE_SIZE}")));
    }
    Ok(())
}

/// Orthonormal recurrence for `(1 - x)^alpha (1 + x)^beta` on `[-1, 1]`.
pub fn jacobi_recurrence(alpha: f64, beta: f64, n: usize) -> Result<RecurrenceTable> {
    check_exponent("alpha", alpha)?;
    check_exponent("beta", beta)?;
    check_size(n)?;
    let ab = alpha + beta;
    let mass = 2f64.powf(ab + 1.0) * gamma_fn(alpha + 1.0)? * gamma_fn(beta + 1.0)? / gamma_fn(ab + 2.0)?;
    let tf = Twofold::new;
    let sum = |x: f64, y: f64| Twofold::diff(x, -y);
    let abt = sum(alpha, beta);
    let mut diag = Vec::with_capacity(n);
    diag.push(sum(beta, -alpha).div_by(abt.add(tf(2.0))));
    let sq_diff = sum(beta, -alpha).mul(abt);
    for k in 1..n {
        let s = abt.add(tf(2.0 * k as f64));
        diag.push(sq_diff.div_by(s.mul(s.add(tf(2.0)))));
    }
    let mut offdiag = Vec::with_capacity(n.saturating_sub(1));
    for k in 1..n {
        let kf = k as f64;
        let s = abt.add(tf(2.0 * kf));
        let sq = if k == 1 {
            let two = abt.add(tf(2.0));
            sum(1.0, alpha).mul(sum(1.0, beta)).scale(4.0).div_by(two.mul(two).mul(abt.add(tf(3.0))))
        } else {
            let num = sum(kf, alpha).mul(sum(kf, beta)).mul(abt.add(tf(kf))).scale(4.0 * kf);
            num.div_by(s.mul(s).mul(s.add(tf(1.0))).mul(s.sub(tf(1.0))))
        };
        offdiag.push(sq.sqrt());
    }
    RecurrenceTable::from_twofold(mass, diag, offdiag)
}

/// Orthonormal recurrence for `|x|^alpha` on `[-1, 1]`.
///
/// Under `t = x^2` the even and odd polynomials are the shifted Jacobi
/// systems of `t^{(alpha-1)/2}` and `t^{(alpha+1)/2}` on `[0, 1]`. The monic
/// coefficients are then
///
/// ```text
///     a_{2k+1}^2 = (2k+1+alpha)^2 / ((4k+1+alpha)(4k+3+alpha))
///     a_{2k}^2   = (2k)^2 / ((4k-1+alpha)(4k+1+alpha))
/// ```
///
/// where the odd ones come from the ratio of the two systems at `t = 0` and
/// the even ones from `a_{2k}^2 a_{2k-1}^2 = ` the `t`-system coefficient.
pub fn symmetric_singular_recurrence(alpha: f64, n: usize) -> Result<RecurrenceTable> {
    check_exponent("alpha", alpha)?;
    check_size(n)?;
    let tf = Twofold::new;
    let alpha_t = tf(alpha);
    let offdiag = (1..n)
        .map(|m| {
            let k = (m / 2) as f64;
            let sq = if m % 2 == 1 {
                let num = alpha_t.add(tf(2.0 * k + 1.0));
                num.mul(num).div_by(alpha_t.add(tf(4.0 * k + 1.0)).mul(alpha_t.add(tf(4.0 * k + 3.0))))
            } else {
                tf(4.0 * k * k).div_by(alpha_t.add(tf(4.0 * k - 1.0)).mul(alpha_t.add(tf(4.0 * k + 1.0))))
            };
            sq.sqrt()
        })
        .collect();
    RecurrenceTable::from_twofold(2.0 / (alpha + 1.0), vec![Twofold::ZERO; n], offdiag)
}

/// Gauss rule with `m` nodes for the measure behind `table` (Golub-Welsch).
pub fn gauss_rule(table: &RecurrenceTable, m: usize) -> Result<QuadratureRule> {
    if m == 0 || m > table.size() {
        return Err(Error::precondition(format!("gauss rule of {m} nodes needs a table of size >= {m}")));
    }
    let (nodes, first) = tridiag_eigen(&table.diag[..m], &table.offdiag[..m - 1])?;
    let weights = first.iter().map(|z| table.mass * z * z).collect();
    Ok(QuadratureRule { nodes, weights })
}

/// Gauss-Jacobi rule on `[-1, 1]` for `(1 - x)^alpha (1 + x)^beta`.
pub fn gauss_jacobi(m: usize, alpha: f64, beta: f64) -> Result<QuadratureRule> {
    gauss_rule(&jacobi_recurrence(alpha, beta, m)?, m)
}

/// Union of per-panel Gauss rules with `order` nodes each. Every
/// singularity is a panel endpoint and its factor is absorbed into a
/// Gauss-Jacobi weight; the remaining density is sampled at the nodes.
pub fn composite_quadrature(mu: &GJMeasure, order: usize) -> Result<QuadratureRule> {
    let hull = mu.hull();
    clipped_quadrature(mu, order, hull.lo, hull.hi)
}

/// [`composite_quadrature`] restricted to `[lo, hi]`.
pub fn clipped_quadrature(mu: &GJMeasure, order: usize, lo: f64, hi: f64) -> Result<QuadratureRule> {
    if order == 0 {
        return Err(Error::domain("quadrature order must be positive"));
    }
    if !(lo <= hi) {
        return Err(Error::domain("clip window must satisfy lo <= hi"));
    }
    let sings = mu.singularities();
    let exponent_at = |x: f64| sings.iter().find(|s| s.location == x).map_or(0.0, |s| s.exponent);
    let mut nodes = Vec::new();
    let mut weights = Vec::new();
    let mut cache: Vec<((u64, u64), QuadratureRule)> = Vec::new();
    for iv in mu.intervals() {
        let (l0, r0) = (iv.lo.max(lo), iv.hi.min(hi));
        if l0 >= r0 {
            continue;
        }
        let mut knots = vec![l0];
        knots.extend(sings.iter().map(|s| s.location).filter(|&x| x > l0 && x < r0));
        knots.push(r0);
        for w in knots.windows(2) {
            let (l, r) = (w[0], w[1]);
            let (gl, gr) = (exponent_at(l), exponent_at(r));
            let key = (gr.to_bits(), gl.to_bits());
            let pos = match cache.iter().position(|(k, _)| *k == key) {
                Some(p) => p,
                None => {
                    cache.push((key, gauss_jacobi(order, gr, gl)?));
                    cache.len() - 1
                }
            };
            let rule = &cache[pos].1;
            let half = 0.5 * (r - l);
            let mid = 0.5 * (r + l);
            let scale = half.powf(1.0 + gl + gr);
            for (&t, &wt) in rule.nodes.iter().zip(&rule.weights) {
                let x = mid + half * t;
                let mut f = mu.smooth().eval(x);
                for s in sings.iter().filter(|s| s.location != l && s.location != r) {
                    f *= (x - s.location).abs().powf(s.exponent);
                }
                nodes.push(x);
                weights.push(scale * wt * f);
            }
        }
    }
    Ok(QuadratureRule { nodes, weights })
}

/// Recurrence of the discrete measure `rule` (Gragg-Harrod / RKPW
/// tridiagonalization of the node matrix against the weight vector).
///
/// `rule` is expected to integrate polynomials of degree `2n + 1` against
/// `mu` exactly; only its size is checked here.
pub fn lanczos_recurrence(mu: &GJMeasure, n: usize, rule: &QuadratureRule) -> Result<RecurrenceTable> {
    check_size(n)?;
    if rule.len() < n {
        return Err(Error::precondition(format!(
            "a rule with {} nodes cannot resolve {n} recurrence coefficients",
            rule.len()
        )));
    }
    let hull = mu.hull();
    let slack = 1e-12 * (1.0 + hull.lo.abs().max(hull.hi.abs()));
    if rule.nodes.iter().any(|&x| x < hull.lo - slack || x > hull.hi + slack) {
        return Err(Error::precondition("quadrature nodes lie outside the support"));
    }
    let ncap = rule.len();
    let mut p0 = rule.nodes.clone();
    let mut p1 = vec![0.0; ncap];
    p1[0] = rule.weights[0];
    for m in 0..ncap - 1 {
        let mut pn = rule.weights[m + 1];
        let xlam = rule.nodes[m + 1];
        let (mut gam, mut sig, mut t) = (1.0, 0.0, 0.0);
        // entries beyond n - 1 never feed back into the first n
        for k in 0..=(m + 1).min(n - 1) {
            let rho = p1[k] + pn;
            let tmp = gam * rho;
            let tsig = sig;
            if rho <= 0.0 {
                gam = 1.0;
                sig = 0.0;
            } else {
                gam = p1[k] / rho;
                sig = pn / rho;
            }
            let tk = sig * (p0[k] - xlam) - gam * t;
            p0[k] -= tk - t;
            t = tk;
            pn = if sig <= 0.0 { tsig * p1[k] } else { t * t / sig };
            p1[k] = tmp;
        }
    }
    let offdiag = p1[1..n].iter().map(|b| b.sqrt()).collect();
    RecurrenceTable::new(p1[0], p0[..n].to_vec(), offdiag)
}

/// Table of size `n` for `mu` via Lanczos on a composite rule.
pub fn recurrence_for_measure(mu: &GJMeasure, n: usize) -> Result<RecurrenceTable> {
    let rule = composite_quadrature(mu, n + QUADRATURE_MARGIN)?;
    lanczos_recurrence(mu, n, &rule)
}

/// Table of size `n` for `mu`, using closed forms for the classical cases
/// (Jacobi weights and `|x|^alpha` on `[-1, 1]`, times a constant) and
/// [`recurrence_for_measure`] otherwise.
pub fn recurrence_table(mu: &GJMeasure, n: usize) -> Result<RecurrenceTable> {
    let on_reference = matches!(mu.intervals(), [iv] if iv.lo == -1.0 && iv.hi == 1.0);
    let c = match mu.smooth() {
        SmoothFactor::Constant(c) if on_reference => *c,
        _ => return recurrence_for_measure(mu, n),
    };
    let exponent_at = |x: f64| mu.singularity_at(x).map_or(0.0, |s| s.exponent);
    let sings = mu.singularities();
    let table = if sings.iter().all(|s| s.location == 1.0 || s.location == -1.0) {
        jacobi_recurrence(exponent_at(1.0), exponent_at(-1.0), n)?
    } else if let [s] = sings {
        if s.location != 0.0 {
            return recurrence_for_measure(mu, n);
        }
        symmetric_singular_recurrence(s.exponent, n)?
    } else {
        return recurrence_for_measure(mu, n);
    };
    let mass = c * table.mass();
    table.with_mass(mass)
}

/// `(p_n(x), p_{n-1}(x))` with `p_{-1} = 0`.
pub fn eval_orthonormal(table: &RecurrenceTable, n: usize, x: f64) -> Result<(f64, f64)> {
    table.check_degree(n)?;
    let mut prev = 0.0;
    let mut cur = 1.0 / table.mass.sqrt();
    for k in 0..n {
        let next = ((x - table.b(k)) * cur - table.a(k) * prev) / table.a(k + 1);
        prev = cur;
        cur = next;
    }
    Ok((cur, prev))
}

/// `(p_n, p_{n-1}, p_n', p_{n-1}')` at `x`, carried in twofold precision;
/// caller guarantees `n < size`.
pub(crate) fn eval_with_derivative(table: &RecurrenceTable, n: usize, x: f64) -> [Twofold; 4] {
    let (mut prev, mut cur) = (Twofold::ZERO, Twofold::new(1.0).div_by(Twofold::new(table.mass).sqrt()));
    let (mut dprev, mut dcur) = (Twofold::ZERO, Twofold::ZERO);
    for k in 0..n {
        let (ak, ak1) = (table.a_full(k), table.a_full(k + 1));
        let shift = Twofold::new(x).sub(table.b_full(k));
        let next = shift.mul(cur).sub(prev.mul(ak)).div_by(ak1);
        let dnext = shift.mul(dcur).add(cur).sub(dprev.mul(ak)).div_by(ak1);
        prev = cur;
        cur = next;
        dprev = dcur;
        dcur = dnext;
    }
    [cur, prev, dcur, dprev]
}

const RESCALE_ABOVE: f64 = 1e150;

/// `(p_n(x), p_{n-1}(x))` multiplied by a common positive factor that keeps
/// them finite far outside the support; caller guarantees `n < size`.
pub(crate) fn eval_scaled(table: &RecurrenceTable, n: usize, x: f64) -> (f64, f64) {
    let (mut prev, mut cur) = (0.0, 1.0 / table.mass.sqrt());
    for k in 0..n {
        let next = ((x - table.b(k)) * cur - table.a(k) * prev) / table.a(k + 1);
        prev = cur;
        cur = next;
        if cur.abs() > RESCALE_ABOVE {
            prev /= RESCALE_ABOVE;
            cur /= RESCALE_ABOVE;
        }
    }
    (cur, prev)
}

/// Zeros of `p_n`: eigenvalues of the leading `n x n` Jacobi matrix.
pub fn poly_zeros(table: &RecurrenceTable, n: usize) -> Result<Vec<f64>> {
    if n == 0 || n > table.size() {
        return Err(Error::precondition(format!("p_{n} zeros need 1 <= n <= table size {}", table.size())));
    }
    Ok(tridiag_eigen(&table.diag[..n], &table.offdiag[..n - 1])?.0)
}
