//! Desk-scale checks of the bulk and hard-edge scaling limits.
//!
//! Bulk, at an interior `x0` with local weight `w(x0) |x - x0|^alpha`:
//!
//! ```text
//!     n^{alpha+1} lambda_n(x0 + a/n)  ->  w(x0) / (pi omega)^{alpha+1} / L*_alpha(pi omega a)
//!     K_n(x0 + a/n, x0 + b/n) / K_n(x0, x0)  ->  L*_alpha(pi omega a, pi omega b) / L*_alpha(0, 0)
//! ```
//!
//! Hard edge, at a right endpoint `x0` with `M = M(K, x0)`:
//!
//! ```text
//!     n^{2alpha+2} lambda_n(x0 - a/(2n^2))  ->  w(x0) / M^{2alpha+2} / (2^{alpha+1} J*_alpha(M^2 a))
//!     K_n(x0 - a/(2n^2), x0 - b/(2n^2)) / K_n(x0, x0)  ->  J*_alpha(M^2 a, M^2 b) / J*_alpha(0, 0)
//! ```

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::cdkernel::{christoffel, kernel_cd, kernel_zeros};
use crate::measure::GJMeasure;
use crate::orthopoly::{clipped_quadrature, gauss_jacobi, RecurrenceTable};
use crate::potential::{density_at_eq, edge_constant, EquilibriumDensity};
use crate::specfun::{kernel_j, kernel_l_entire_real, KernelVariant};
use crate::{Error, Result};
#[allow(unused_imports)] // inherent float methods shadow it whenever std is linked
use num_traits::Float;

/// Largest truncation radius of [`check_reproducing`].
pub const MAX_REPRODUCING_RADIUS: f64 = 1e3;

const REPRODUCING_POINTS: usize = 16;
const SANDWICH_ORDER: usize = 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanMode {
    BulkLambda,
    BulkRatio,
    EdgeLambda,
    EdgeRatio,
}

impl ScanMode {
    pub fn name(self) -> &'static str {
        match self {
            ScanMode::BulkLambda => "bulk_lambda",
            ScanMode::BulkRatio => "bulk_ratio",
            ScanMode::EdgeLambda => "edge_lambda",
            ScanMode::EdgeRatio => "edge_ratio",
        }
    }

    fn is_ratio(self) -> bool {
        matches!(self, ScanMode::BulkRatio | ScanMode::EdgeRatio)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanConfig {
    pub measure: GJMeasure,
    pub x0: f64,
    pub alpha: f64,
    pub a_grid: Vec<f64>,
    /// Ignored by the lambda modes, which use `b = a`.
    pub b_grid: Vec<f64>,
    pub n_list: Vec<usize>,
    pub mode: ScanMode,
}

impl ScanConfig {
    fn validate(&self) -> Result<()> {
        if self.n_list.is_empty() || self.n_list[0] == 0 || self.n_list.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::precondition("n_list must be positive and strictly increasing"));
        }
        if self.a_grid.is_empty() || (self.mode.is_ratio() && self.b_grid.is_empty()) {
            return Err(Error::precondition("scan grids must be nonempty"));
        }
        let local = self.measure.singularity_at(self.x0).map_or(0.0, |s| s.exponent);
        if local != self.alpha {
            return Err(Error::domain(format!(
                "alpha = {} does not match the exponent {local} of the measure at x0 = {}",
                self.alpha, self.x0
            )));
        }
        Ok(())
    }

    fn pairs(&self) -> Vec<(f64, f64)> {
        if self.mode.is_ratio() {
            self.a_grid.iter().flat_map(|&a| self.b_grid.iter().map(move |&b| (a, b))).collect()
        } else {
            self.a_grid.iter().map(|&a| (a, a)).collect()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanRow {
    pub n: usize,
    pub a: f64,
    pub b: f64,
    pub measured: f64,
    pub predicted: f64,
    pub abs_err: f64,
    pub rel_err: f64,
}

impl ScanRow {
    fn new(n: usize, a: f64, b: f64, measured: f64, predicted: f64) -> Self {
        let abs_err = (measured - predicted).abs();
        Self { n, a, b, measured, predicted, abs_err, rel_err: abs_err / predicted.abs() }
    }
}

/// Analytic constants a scan was run with.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ScanConstants {
    /// `omega_K(x0)` (bulk scans).
    pub omega: Option<f64>,
    /// `M(K, x0)` (edge scans).
    pub edge_constant: Option<f64>,
    /// `w(x0)`: the density at `x0` without its own singular factor.
    pub local_weight: f64,
    /// `(n, eta_n)` with `eta_n = (J*_alpha(0,0) / K_n(x0, x0))^{1/(alpha+1)}` (edge scans).
    pub eta: Vec<(usize, f64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanReport {
    pub mode: ScanMode,
    pub x0: f64,
    pub alpha: f64,
    pub rows: Vec<ScanRow>,
    /// Slope of `log max_err` against `log n`; needs three or more `n`.
    pub fitted_order: Option<f64>,
    pub constants: ScanConstants,
}

impl ScanReport {
    fn from_rows(cfg: &ScanConfig, rows: Vec<ScanRow>, constants: ScanConstants) -> Self {
        let fitted_order = fit_rows(&rows, &cfg.n_list);
        Self { mode: cfg.mode, x0: cfg.x0, alpha: cfg.alpha, rows, fitted_order, constants }
    }

    /// Largest absolute error per `n`, in `n` order.
    pub fn max_abs_err_by_n(&self) -> Vec<(usize, f64)> {
        max_err_by_n(&self.rows, |r| r.abs_err)
    }

    pub fn max_rel_err(&self) -> f64 {
        self.rows.iter().map(|r| r.rel_err).fold(0.0, f64::max)
    }
}

fn max_err_by_n(rows: &[ScanRow], key: impl Fn(&ScanRow) -> f64) -> Vec<(usize, f64)> {
    let mut out: Vec<(usize, f64)> = Vec::new();
    for r in rows {
        match out.last_mut() {
            Some(last) if last.0 == r.n => last.1 = last.1.max(key(r)),
            _ => out.push((r.n, key(r))),
        }
    }
    out
}

fn fit_rows(rows: &[ScanRow], n_list: &[usize]) -> Option<f64> {
    if n_list.len() < 3 {
        return None;
    }
    let pts: Vec<(f64, f64)> = max_err_by_n(rows, |r| r.abs_err).into_iter().map(|(n, e)| (n as f64, e)).collect();
    rate_fit(&pts).ok()
}

fn check_table(table: &RecurrenceTable, n_list: &[usize]) -> Result<()> {
    let nmax = n_list[n_list.len() - 1];
    if nmax > table.size() {
        return Err(Error::precondition(format!("n = {nmax} exceeds the table size {}", table.size())));
    }
    Ok(())
}

fn l_diag(alpha: f64, x: f64) -> f64 {
    kernel_l_entire_real(alpha, x, x).expect("alpha validated")
}

/// Bulk scan at an interior point.
pub fn scan_bulk(cfg: &ScanConfig, table: &RecurrenceTable, eq: &EquilibriumDensity) -> Result<ScanReport> {
    cfg.validate()?;
    check_table(table, &cfg.n_list)?;
    let mu = &cfg.measure;
    if !mu.in_support(cfg.x0) || mu.is_edge_point(cfg.x0) {
        return Err(Error::domain(format!("x0 = {} is not interior to the support", cfg.x0)));
    }
    let omega = density_at_eq(eq, cfg.x0)?;
    let w = mu.local_factor(cfg.x0)?;
    let alpha = cfg.alpha;
    let s = PI * omega;
    let mut rows = Vec::new();
    for &n in &cfg.n_list {
        let nf = n as f64;
        for (a, b) in cfg.pairs() {
            let row = match cfg.mode {
                ScanMode::BulkLambda => {
                    let measured = nf.powf(alpha + 1.0) * christoffel(table, n, cfg.x0 + a / nf)?;
                    let predicted = w / s.powf(alpha + 1.0) / l_diag(alpha, s * a);
                    ScanRow::new(n, a, b, measured, predicted)
                }
                ScanMode::BulkRatio => {
                    let k0 = kernel_cd(table, n, cfg.x0, cfg.x0)?;
                    let measured = kernel_cd(table, n, cfg.x0 + a / nf, cfg.x0 + b / nf)? / k0;
                    let predicted = kernel_l_entire_real(alpha, s * a, s * b)? / l_diag(alpha, 0.0);
                    ScanRow::new(n, a, b, measured, predicted)
                }
                _ => return Err(Error::precondition("scan_bulk runs the bulk modes only")),
            };
            rows.push(row);
        }
    }
    let constants = ScanConstants { omega: Some(omega), local_weight: w, ..ScanConstants::default() };
    Ok(ScanReport::from_rows(cfg, rows, constants))
}

/// Hard-edge scan at an endpoint; left endpoints use `x0 + a/(2n^2)`.
pub fn scan_edge(cfg: &ScanConfig, table: &RecurrenceTable, eq: &EquilibriumDensity) -> Result<ScanReport> {
    cfg.validate()?;
    check_table(table, &cfg.n_list)?;
    let mu = &cfg.measure;
    if !mu.is_edge_point(cfg.x0) {
        return Err(Error::domain(format!("x0 = {} is not an endpoint of the support", cfg.x0)));
    }
    if cfg.a_grid.iter().chain(if cfg.mode.is_ratio() { cfg.b_grid.iter() } else { [].iter() }).any(|&a| a < 0.0) {
        return Err(Error::domain("edge scan grids must lie in [0, inf)"));
    }
    let right = mu.intervals().iter().any(|iv| iv.hi == cfg.x0);
    let dir = if right { -1.0 } else { 1.0 };
    let m = edge_constant(eq, cfg.x0)?;
    let w = mu.local_factor(cfg.x0)?;
    let alpha = cfg.alpha;
    let m2 = m * m;
    let j00 = kernel_j(alpha, 0.0, 0.0, KernelVariant::Entire)?;
    let mut rows = Vec::new();
    let mut eta = Vec::with_capacity(cfg.n_list.len());
    for &n in &cfg.n_list {
        let nf = n as f64;
        let h = dir / (2.0 * nf * nf);
        let k0 = kernel_cd(table, n, cfg.x0, cfg.x0)?;
        eta.push((n, (j00 / k0).powf(1.0 / (alpha + 1.0))));
        for (a, b) in cfg.pairs() {
            let row = match cfg.mode {
                ScanMode::EdgeLambda => {
                    let measured = nf.powf(2.0 * alpha + 2.0) * christoffel(table, n, cfg.x0 + a * h)?;
                    let jd = kernel_j(alpha, m2 * a, m2 * a, KernelVariant::Entire)?;
                    let predicted = w / m.powf(2.0 * alpha + 2.0) / (2f64.powf(alpha + 1.0) * jd);
                    ScanRow::new(n, a, b, measured, predicted)
                }
                ScanMode::EdgeRatio => {
                    let measured = kernel_cd(table, n, cfg.x0 + a * h, cfg.x0 + b * h)? / k0;
                    let predicted = kernel_j(alpha, m2 * a, m2 * b, KernelVariant::Entire)? / j00;
                    ScanRow::new(n, a, b, measured, predicted)
                }
                _ => return Err(Error::precondition("scan_edge runs the edge modes only")),
            };
            rows.push(row);
        }
    }
    let constants = ScanConstants { edge_constant: Some(m), local_weight: w, eta, ..ScanConstants::default() };
    Ok(ScanReport::from_rows(cfg, rows, constants))
}

/// `n^{-(alpha+1)} K_n(a/n, b/n)` against `L*_alpha(a, b)` for `|x|^alpha` on `[-1, 1]`.
pub fn scan_model_bulk_kernel(
    table: &RecurrenceTable,
    alpha: f64,
    n_list: &[usize],
    grid: &[f64],
) -> Result<ScanReport> {
    if n_list.is_empty() || n_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::precondition("n_list must be strictly increasing"));
    }
    check_table(table, n_list)?;
    let mut rows = Vec::new();
    for &n in n_list {
        let nf = n as f64;
        let scale = nf.powf(-(alpha + 1.0));
        for &a in grid {
            for &b in grid {
                let measured = scale * kernel_cd(table, n, a / nf, b / nf)?;
                let predicted = kernel_l_entire_real(alpha, a, b)?;
                rows.push(ScanRow::new(n, a, b, measured, predicted));
            }
        }
    }
    let fitted_order = fit_rows(&rows, n_list);
    Ok(ScanReport {
        mode: ScanMode::BulkRatio,
        x0: 0.0,
        alpha,
        rows,
        fitted_order,
        constants: ScanConstants { omega: Some(1.0 / PI), local_weight: 1.0, ..ScanConstants::default() },
    })
}

/// Least-squares slope of `log err` against `log n`.
pub fn rate_fit(errors: &[(f64, f64)]) -> Result<f64> {
    if errors.len() < 3 {
        return Err(Error::precondition("rate_fit needs at least three points"));
    }
    if let Some(&(n, e)) = errors.iter().find(|&&(n, e)| !(n > 0.0 && e > 0.0 && e.is_finite())) {
        return Err(Error::domain(format!("rate_fit needs positive n and errors, got ({n}, {e})")));
    }
    let m = errors.len() as f64;
    let (mut sx, mut sy) = (0.0, 0.0);
    for &(n, e) in errors {
        sx += n.ln();
        sy += e.ln();
    }
    let (mx, my) = (sx / m, sy / m);
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for &(n, e) in errors {
        let dx = n.ln() - mx;
        sxy += dx * (e.ln() - my);
        sxx += dx * dx;
    }
    if sxx == 0.0 {
        return Err(Error::domain("rate_fit needs at least two distinct n"));
    }
    Ok(sxy / sxx)
}

/// `|L*(a, b) - int_{-r}^{r} L*(a, s) L*(s, b) |s|^alpha ds|`.
pub fn check_reproducing(alpha: f64, a: f64, b: f64, r: f64) -> Result<f64> {
    if !(r > 0.0 && r <= MAX_REPRODUCING_RADIUS) {
        return Err(Error::domain(format!("r must lie in (0, {MAX_REPRODUCING_RADIUS}]")));
    }
    let target = kernel_l_entire_real(alpha, a, b)?;
    let f = |s: f64| l_entire(alpha, a, s) * l_entire(alpha, s, b);
    let singular = gauss_jacobi(REPRODUCING_POINTS, 0.0, alpha)?; // (1 + t)^alpha
    let plain = gauss_jacobi(REPRODUCING_POINTS, 0.0, 0.0)?;
    let panels = r.ceil() as usize;
    let width = r / panels as f64;
    let mut total = 0.0;
    for side in [-1.0, 1.0] {
        for p in 0..panels {
            let (l, rr) = (p as f64 * width, (p + 1) as f64 * width);
            let half = 0.5 * width;
            let mid = 0.5 * (l + rr);
            if p == 0 {
                // |s|^alpha absorbed: s = half (1 + t)
                for (&t, &w) in singular.nodes.iter().zip(&singular.weights) {
                    total += w * half.powf(1.0 + alpha) * f(side * half * (1.0 + t));
                }
            } else {
                for (&t, &w) in plain.nodes.iter().zip(&plain.weights) {
                    let s = mid + half * t;
                    total += w * half * s.powf(alpha) * f(side * s);
                }
            }
        }
    }
    if !total.is_finite() {
        return Err(Error::numeric("reproducing integral did not produce a finite value"));
    }
    Ok((target - total).abs())
}

fn l_entire(alpha: f64, a: f64, b: f64) -> f64 {
    kernel_l_entire_real(alpha, a, b).expect("alpha validated")
}

/// Slacks `(int_{t_l}^{t_k} dmu - sum_{l<j<k} lambda_n(t_j),
/// sum_{l<=j<=k} lambda_n(t_j) - int_{t_l}^{t_k} dmu)` at the zeros of
/// `psi_n(xi, .)`; both are nonnegative in exact arithmetic.
pub fn check_markov_stieltjes(
    mu: &GJMeasure,
    table: &RecurrenceTable,
    n: usize,
    xi: f64,
    l: i64,
    k: i64,
) -> Result<(f64, f64)> {
    if l >= k || l > 0 || k < 0 {
        return Err(Error::precondition("need l <= 0 <= k and l < k"));
    }
    let window = l.unsigned_abs().max(k.unsigned_abs()).max(1) as usize;
    let zs = kernel_zeros(table, n, xi, window)
        .map_err(|e| Error::precondition(format!("kernel zero window unavailable: {e}")))?;
    let t = |j: i64| zs.get(j).expect("index inside the computed window");
    let mass = clipped_quadrature(mu, SANDWICH_ORDER, t(l), t(k))?.total();
    let mut inner = 0.0;
    for j in l + 1..k {
        inner += christoffel(table, n, t(j))?;
    }
    let outer = inner + christoffel(table, n, t(l))? + christoffel(table, n, t(k))?;
    Ok((mass - inner, outer - mass))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NevaiRegime {
    Bulk,
    Edge,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NevaiReport {
    /// `(n, x, ratio)`.
    pub entries: Vec<(usize, f64, f64)>,
    pub min: f64,
    pub max: f64,
}

impl NevaiReport {
    pub fn spread(&self) -> f64 {
        self.max / self.min
    }
}

/// Ratios of `lambda_n(x)` to the two-sided Nevai bound: `lambda_n n
/// (|x| + 1/n)^{-alpha}` in the bulk, `lambda_n n (sqrt(1-x) + 1/n)^{-(2alpha+1)}`
/// at the edge.
pub fn check_nevai_bounds(
    table: &RecurrenceTable,
    n_list: &[usize],
    xs: &[f64],
    alpha: f64,
    regime: NevaiRegime,
) -> Result<NevaiReport> {
    if n_list.is_empty() || xs.is_empty() {
        return Err(Error::precondition("n_list and xs must be nonempty"));
    }
    for &x in xs {
        let ok = match regime {
            NevaiRegime::Bulk => x > -0.5 && x < 0.5,
            NevaiRegime::Edge => x > 0.5 && x <= 1.0,
        };
        if !ok {
            return Err(Error::domain(format!("x = {x} is outside the range of the {regime:?} bound")));
        }
    }
    let mut entries = Vec::with_capacity(n_list.len() * xs.len());
    for &n in n_list {
        let nf = n as f64;
        for &x in xs {
            let lam = christoffel(table, n, x)?;
            let ratio = match regime {
                NevaiRegime::Bulk => lam * nf * (x.abs() + 1.0 / nf).powf(-alpha),
                NevaiRegime::Edge => lam * nf * ((1.0 - x).sqrt() + 1.0 / nf).powf(-(2.0 * alpha + 1.0)),
            };
            entries.push((n, x, ratio));
        }
    }
    let min = entries.iter().map(|e| e.2).fold(f64::INFINITY, f64::min);
    let max = entries.iter().map(|e| e.2).fold(0.0, f64::max);
    Ok(NevaiReport { entries, min, max })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpacingReport {
    /// `(k, rho_k)` with `rho_k = n pi omega (t_k - x0)`.
    pub rho: Vec<(i64, f64)>,
    pub max_gap: f64,
    pub min_gap: f64,
    pub min_double_gap: f64,
}

impl SpacingReport {
    /// Single gaps at most `c1` and double gaps at least `c2`.
    pub fn holds(&self, c1: f64, c2: f64) -> bool {
        self.max_gap <= c1 && self.min_double_gap >= c2
    }
}

/// Rescaled kernel zeros around `x0`; `omega` is the equilibrium density there.
pub fn zero_spacing_report(
    table: &RecurrenceTable,
    n: usize,
    x0: f64,
    omega: f64,
    window: usize,
) -> Result<SpacingReport> {
    if !(omega.is_finite() && omega > 0.0) {
        return Err(Error::domain("omega must be positive"));
    }
    let zs = kernel_zeros(table, n, x0, window)?;
    let s = n as f64 * PI * omega;
    let rho: Vec<(i64, f64)> = zs.indexed().map(|(k, t)| (k, s * (t - x0))).collect();
    let vals: Vec<f64> = rho.iter().map(|r| r.1).collect();
    let gaps: Vec<f64> = vals.windows(2).map(|w| w[1] - w[0]).collect();
    let doubles = vals.windows(3).map(|w| w[2] - w[0]);
    Ok(SpacingReport {
        max_gap: gaps.iter().copied().fold(0.0, f64::max),
        min_gap: gaps.iter().copied().fold(f64::INFINITY, f64::min),
        min_double_gap: doubles.fold(f64::INFINITY, f64::min),
        rho,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::Interval;
    use crate::measure::{make_model_bulk, make_model_edge};
    use crate::orthopoly::{jacobi_recurrence, symmetric_singular_recurrence};
    use crate::potential::{equilibrium_density, IntervalSystem};
    use alloc::vec;

    fn arcsine() -> EquilibriumDensity {
        equilibrium_density(&IntervalSystem::new(vec![Interval::new(-1.0, 1.0).unwrap()]).unwrap()).unwrap()
    }

    fn cfg(measure: GJMeasure, x0: f64, alpha: f64, a: Vec<f64>, n: Vec<usize>, mode: ScanMode) -> ScanConfig {
        ScanConfig { measure, x0, alpha, b_grid: a.clone(), a_grid: a, n_list: n, mode }
    }

    #[test]
    fn synthetic_rates() {
        let pts: Vec<(f64, f64)> = [8.0, 16.0, 64.0, 100.0].iter().map(|&n| (n, 7.0 / n)).collect();
        assert!((rate_fit(&pts).unwrap() + 1.0).abs() < 1e-12);
        let pts: Vec<(f64, f64)> = [8.0, 16.0, 64.0].iter().map(|&n| (n, 3.0 / (n * n))).collect();
        assert!((rate_fit(&pts).unwrap() + 2.0).abs() < 1e-12);
        assert!(rate_fit(&[(1.0, 1.0), (2.0, 0.0), (3.0, 1.0)]).is_err());
        assert!(rate_fit(&[(1.0, 1.0), (2.0, 1.0)]).is_err());
    }

    #[test]
    fn model_bulk_prediction_at_origin() {
        let t = symmetric_singular_recurrence(1.0, 257).unwrap();
        let c = cfg(make_model_bulk(1.0).unwrap(), 0.0, 1.0, vec![0.0], vec![63, 64, 127, 255], ScanMode::BulkLambda);
        let r = scan_bulk(&c, &t, &arcsine()).unwrap();
        for row in &r.rows {
            assert!((row.predicted - 4.0).abs() < 1e-12);
            assert!(row.measured > 0.0);
        }
        // n^2 lambda_n(0) = 4 exactly for even n; odd n converge at rate 1/n
        assert!(r.rows[1].rel_err < 1e-14);
        assert!(r.rows[3].rel_err < r.rows[2].rel_err && r.rows[2].rel_err < r.rows[0].rel_err);
        assert!(r.rows[3].rel_err < 0.02);
        let c = ScanConfig { mode: ScanMode::BulkRatio, ..c };
        let r = scan_bulk(&c, &t, &arcsine()).unwrap();
        assert_eq!(r.rows[0].measured, 1.0);
        assert!((r.rows[0].predicted - 1.0).abs() < 1e-15);
    }

    #[test]
    fn scan_validation() {
        let t = jacobi_recurrence(0.0, 0.0, 40).unwrap();
        let mu = make_model_bulk(0.0).unwrap();
        let bad_x0 = cfg(mu.clone(), 1.0, 0.0, vec![0.0], vec![8], ScanMode::BulkLambda);
        assert!(scan_bulk(&bad_x0, &t, &arcsine()).is_err());
        let bad_alpha = cfg(mu.clone(), 0.0, 1.0, vec![0.0], vec![8], ScanMode::BulkLambda);
        assert!(scan_bulk(&bad_alpha, &t, &arcsine()).is_err());
        let bad_n = cfg(mu.clone(), 0.0, 0.0, vec![0.0], vec![16, 8], ScanMode::BulkLambda);
        assert!(scan_bulk(&bad_n, &t, &arcsine()).is_err());
        let too_big = cfg(mu.clone(), 0.0, 0.0, vec![0.0], vec![41], ScanMode::BulkLambda);
        assert!(scan_bulk(&too_big, &t, &arcsine()).is_err());
        let interior = cfg(mu, 0.0, 0.0, vec![0.0], vec![8], ScanMode::EdgeLambda);
        assert!(scan_edge(&interior, &t, &arcsine()).is_err());
    }

    #[test]
    fn legendre_edge_anchor() {
        let t = jacobi_recurrence(0.0, 0.0, 65).unwrap();
        let mu = make_model_edge(0.0).unwrap();
        let c = cfg(mu.clone(), 1.0, 0.0, vec![0.0, 1.0], vec![16, 32, 64], ScanMode::EdgeLambda);
        let r = scan_edge(&c, &t, &arcsine()).unwrap();
        for row in r.rows.iter().filter(|r| r.a == 0.0) {
            assert!((row.measured - 2.0).abs() < 1e-12);
            assert!((row.predicted - 2.0).abs() < 1e-12);
        }
        // J*_0(0,0) = 1/4, K_n(1,1) = n^2/2
        let (n, eta) = r.constants.eta[0];
        assert!((eta - 0.25 / (n * n) as f64 * 2.0).abs() < 1e-15);
        // left endpoint by reflection
        let c = cfg(mu, -1.0, 0.0, vec![0.0, 1.0], vec![64], ScanMode::EdgeLambda);
        let l = scan_edge(&c, &t, &arcsine()).unwrap();
        assert!((l.rows[1].measured - r.rows[5].measured).abs() < 1e-12);
        let c = ScanConfig { mode: ScanMode::EdgeRatio, ..c };
        let rr = scan_edge(&c, &t, &arcsine()).unwrap();
        assert!(rr.rows.iter().filter(|r| r.a == r.b).all(|r| r.measured >= 0.0));
    }

    #[test]
    fn reproducing_identity_decays() {
        let r50 = check_reproducing(1.0, 0.7, -1.3, 50.0).unwrap();
        let r200 = check_reproducing(1.0, 0.7, -1.3, 200.0).unwrap();
        assert!(r200 < r50);
        assert!(check_reproducing(0.0, 0.3, 1.1, 200.0).unwrap() <= 1e-2);
        assert!(check_reproducing(1.0, 0.0, 0.0, 2e3).is_err());
    }

    #[test]
    fn sandwich_on_legendre() {
        let t = jacobi_recurrence(0.0, 0.0, 9).unwrap();
        let mu = make_model_bulk(0.0).unwrap();
        let (lo, hi) = check_markov_stieltjes(&mu, &t, 8, 0.0, -2, 2).unwrap();
        assert!(lo >= -1e-10 && hi >= -1e-10);
        let (lo, _) = check_markov_stieltjes(&mu, &t, 8, 0.1, 0, 1).unwrap();
        assert!(lo >= -1e-10);
        assert!(check_markov_stieltjes(&mu, &t, 8, 0.0, 1, 2).is_err());
    }

    #[test]
    fn nevai_and_spacing() {
        let t = jacobi_recurrence(0.0, 0.0, 513).unwrap();
        let xs: Vec<f64> = (-4..=4).map(|i| i as f64 * 0.1).collect();
        let r = check_nevai_bounds(&t, &[64, 128, 256, 512], &xs, 0.0, NevaiRegime::Bulk).unwrap();
        // lambda_n n -> pi sqrt(1 - x^2)
        for &(n, x, v) in &r.entries {
            if n == 512 {
                assert!((v / (PI * (1.0 - x * x).sqrt()) - 1.0).abs() < 0.01);
            }
        }
        assert!(check_nevai_bounds(&t, &[64], &[0.7], 0.0, NevaiRegime::Bulk).is_err());
        let s = zero_spacing_report(&t, 512, 0.0, 1.0 / PI, 10).unwrap();
        assert!((s.max_gap / PI - 1.0).abs() < 0.1 && (s.min_gap / PI - 1.0).abs() < 0.1);
        for &(k, rho) in &s.rho {
            let mirror = s.rho.iter().find(|r| r.0 == -k).unwrap().1;
            assert!((rho + mirror).abs() < 1e-9);
        }
    }

    #[test]
    fn two_band_bulk_error_decreases() {
        use crate::measure::{AlgebraicSingularity, SmoothFactor};
        use crate::orthopoly::recurrence_for_measure;
        use crate::potential::{inverse_image, AdmissiblePolynomial};
        // T(x) = (2x^2 - 3/2) / (1/2)
        let system = inverse_image(&AdmissiblePolynomial::new(vec![-3.0, 0.0, 4.0]).unwrap()).unwrap();
        let bands = system.intervals().to_vec();
        let x0 = 0.5 * (bands[1].lo + bands[1].hi);
        let sing = vec![AlgebraicSingularity { location: x0, exponent: 1.0 }];
        let mu = GJMeasure::new(bands, sing, SmoothFactor::Constant(1.0)).unwrap();
        let eq = equilibrium_density(&system).unwrap();
        let table = recurrence_for_measure(&mu, 261).unwrap();
        // the error oscillates with period about 4 in n; compare envelopes
        let bases = [32, 64, 128, 256];
        let n_list: Vec<usize> = bases.iter().flat_map(|&b| b..b + 4).collect();
        let c = cfg(mu, x0, 1.0, vec![0.0], n_list, ScanMode::BulkLambda);
        let r = scan_bulk(&c, &table, &eq).unwrap();
        let env: Vec<f64> = r.rows.chunks(4).map(|w| w.iter().map(|r| r.rel_err).fold(0.0, f64::max)).collect();
        assert!(env.windows(2).all(|w| w[1] < w[0]), "{env:?}");
        assert!(env[3] < 0.05);
    }
}
