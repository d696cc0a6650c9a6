//! Generalized Jacobi measures: a union of intervals carrying the density
//! `w(x) prod_i |x - x_i|^{gamma_i}` with `w` a positive constant or polynomial.

use alloc::format;
use alloc::vec::Vec;

use crate::poly::Polynomial;
use crate::{Error, Result};
#[allow(unused_imports)] // inherent float methods shadow it whenever std is linked
use num_traits::Float;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !lo.is_finite() || !hi.is_finite() || lo >= hi {
            return Err(Error::domain(format!("interval [{lo}, {hi}] must satisfy lo < hi")));
        }
        Ok(Self { lo, hi })
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn len(&self) -> f64 {
        self.hi - self.lo
    }
}

/// Factor `|x - location|^exponent`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlgebraicSingularity {
    pub location: f64,
    pub exponent: f64,
}

/// Whether a singularity sits inside a band or at one of its endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SingularityKind {
    Interior,
    Edge,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SmoothFactor {
    Constant(f64),
    Polynomial(Polynomial),
}

impl SmoothFactor {
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            SmoothFactor::Constant(c) => *c,
            SmoothFactor::Polynomial(p) => p.eval(x),
        }
    }
}

/// Validated generalized Jacobi measure. Intervals are sorted and do not
/// overlap (touching endpoints are allowed); singularities are sorted by
/// location.
#[derive(Debug, Clone, PartialEq)]
pub struct GJMeasure {
    intervals: Vec<Interval>,
    singularities: Vec<AlgebraicSingularity>,
    smooth: SmoothFactor,
}

/// Orders and validates interval lists; field names match the document schema.
pub(crate) fn validate_intervals(mut intervals: Vec<Interval>) -> Result<Vec<Interval>> {
    if intervals.is_empty() {
        return Err(Error::schema("intervals", "at least one interval is required"));
    }
    for iv in &intervals {
        if !iv.lo.is_finite() || !iv.hi.is_finite() || iv.lo >= iv.hi {
            return Err(Error::schema("intervals", format!("interval [{}, {}] must satisfy lo < hi", iv.lo, iv.hi)));
        }
    }
    intervals.sort_by(|a, b| a.lo.total_cmp(&b.lo));
    for w in intervals.windows(2) {
        if w[1].lo < w[0].hi {
            return Err(Error::schema(
                "intervals",
                format!("intervals overlap: [{}, {}] and [{}, {}]", w[0].lo, w[0].hi, w[1].lo, w[1].hi),
            ));
        }
    }
    Ok(intervals)
}

impl GJMeasure {
    pub fn new(
        intervals: Vec<Interval>,
        mut singularities: Vec<AlgebraicSingularity>,
        smooth: SmoothFactor,
    ) -> Result<Self> {
        let intervals = validate_intervals(intervals)?;
        for s in &singularities {
            if !s.exponent.is_finite() || s.exponent <= -1.0 {
                return Err(Error::schema(
                    "singularities.alpha",
                    format!("exponent must exceed -1 (got {})", s.exponent),
                ));
            }
            if !s.location.is_finite() || !intervals.iter().any(|iv| iv.contains(s.location)) {
                return Err(Error::schema(
                    "singularities.x0",
                    format!("singularity at {} lies outside the support", s.location),
                ));
            }
        }
        singularities.sort_by(|a, b| a.location.total_cmp(&b.location));
        if singularities.windows(2).any(|w| w[0].location == w[1].location) {
            return Err(Error::schema("singularities.x0", "singularity locations must be distinct"));
        }
        match &smooth {
            SmoothFactor::Constant(c) => {
                if !(c.is_finite() && *c > 0.0) {
                    return Err(Error::schema("smooth.const", "smooth factor must be positive"));
                }
            }
            SmoothFactor::Polynomial(p) => {
                if !intervals.iter().all(|iv| p.is_positive_on(iv.lo, iv.hi)) {
                    return Err(Error::schema("smooth.poly", "smooth factor must be positive on the support"));
                }
            }
        }
        Ok(Self { intervals, singularities, smooth })
    }

    /// Lebesgue measure on `[lo, hi]`.
    pub fn lebesgue(lo: f64, hi: f64) -> Result<Self> {
        Self::new(alloc::vec![Interval::new(lo, hi)?], Vec::new(), SmoothFactor::Constant(1.0))
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn singularities(&self) -> &[AlgebraicSingularity] {
        &self.singularities
    }

    pub fn smooth(&self) -> &SmoothFactor {
        &self.smooth
    }

    /// Smallest interval containing the support.
    pub fn hull(&self) -> Interval {
        Interval { lo: self.intervals[0].lo, hi: self.intervals[self.intervals.len() - 1].hi }
    }

    pub fn in_support(&self, x: f64) -> bool {
        self.intervals.iter().any(|iv| iv.contains(x))
    }

    /// True if `x` is an endpoint of the support that borders a gap or the exterior.
    pub fn is_edge_point(&self, x: f64) -> bool {
        self.intervals.iter().enumerate().any(|(i, iv)| {
            let touches_prev = i > 0 && self.intervals[i - 1].hi == iv.lo;
            let touches_next = self.intervals.get(i + 1).is_some_and(|n| n.lo == iv.hi);
            (x == iv.lo && !touches_prev) || (x == iv.hi && !touches_next)
        })
    }

    pub fn singularity_kind(&self, s: &AlgebraicSingularity) -> SingularityKind {
        if self.is_edge_point(s.location) {
            SingularityKind::Edge
        } else {
            SingularityKind::Interior
        }
    }

    pub fn singularity_at(&self, x: f64) -> Option<&AlgebraicSingularity> {
        self.singularities.iter().find(|s| s.location == x)
    }

    /// Density with the factor of the singularity at `x0` (if any) removed,
    /// evaluated at `x0`: the `w(x0)` of the local model `w(x0) |x - x0|^alpha`.
    pub fn local_factor(&self, x0: f64) -> Result<f64> {
        if !self.in_support(x0) {
            return Err(Error::domain(format!("{x0} is outside the support")));
        }
        let mut v = self.smooth.eval(x0);
        for s in self.singularities.iter().filter(|s| s.location != x0) {
            v *= (x0 - s.location).abs().powf(s.exponent);
        }
        Ok(v)
    }

    /// Image under `x -> -x`.
    pub fn reflected(&self) -> GJMeasure {
        let intervals = self.intervals.iter().rev().map(|iv| Interval { lo: -iv.hi, hi: -iv.lo }).collect();
        let singularities = self
            .singularities
            .iter()
            .rev()
            .map(|s| AlgebraicSingularity { location: -s.location, exponent: s.exponent })
            .collect();
        let smooth = match &self.smooth {
            SmoothFactor::Constant(c) => SmoothFactor::Constant(*c),
            SmoothFactor::Polynomial(p) => {
                let c = p.coeffs().iter().enumerate().map(|(k, c)| if k % 2 == 1 { -c } else { *c }).collect();
                SmoothFactor::Polynomial(Polynomial::new(c).expect("finite coefficients"))
            }
        };
        GJMeasure { intervals, singularities, smooth }
    }
}

fn check_model_alpha(alpha: f64) -> Result<()> {
    if !alpha.is_finite() || alpha <= -1.0 {
        return Err(Error::domain("alpha must be finite and exceed -1"));
    }
    Ok(())
}

/// `|x|^alpha dx` on `[-1, 1]`.
pub fn make_model_bulk(alpha: f64) -> Result<GJMeasure> {
    check_model_alpha(alpha)?;
    model_with_singularity(alpha, 0.0)
}

/// `|x - 1|^alpha dx` on `[-1, 1]`.
pub fn make_model_edge(alpha: f64) -> Result<GJMeasure> {
    check_model_alpha(alpha)?;
    model_with_singularity(alpha, 1.0)
}

fn model_with_singularity(alpha: f64, x0: f64) -> Result<GJMeasure> {
    let sing =
        if alpha == 0.0 { Vec::new() } else { alloc::vec![AlgebraicSingularity { location: x0, exponent: alpha }] };
    GJMeasure::new(alloc::vec![Interval::new(-1.0, 1.0)?], sing, SmoothFactor::Constant(1.0))
}

/// Radon-Nikodym derivative at `x`; `+inf` at a singularity with negative exponent.
pub fn density_at(mu: &GJMeasure, x: f64) -> Result<f64> {
    if !mu.in_support(x) {
        return Err(Error::domain(format!("{x} is outside the support")));
    }
    let mut v = mu.smooth.eval(x);
    for s in &mu.singularities {
        let d = (x - s.location).abs();
        if d == 0.0 {
            if s.exponent < 0.0 {
                return Ok(f64::INFINITY);
            } else if s.exponent > 0.0 {
                return Ok(0.0);
            }
        } else {
            v *= d.powf(s.exponent);
        }
    }
    Ok(v)
}
