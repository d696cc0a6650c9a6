//! Unevaluated sums `hi + lo` of two doubles (about 106 significant bits),
//! built from Dekker's error-free transformations.

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub(crate) struct Twofold {
    pub hi: f64,
    pub lo: f64,
}

const SPLITTER: f64 = 134_217_729.0; // 2^27 + 1

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

fn split(a: f64) -> (f64, f64) {
    let t = SPLITTER * a;
    let hi = t - (t - a);
    (hi, a - hi)
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let (ah, al) = split(a);
    let (bh, bl) = split(b);
    (p, ((ah * bh - p) + ah * bl + al * bh) + al * bl)
}

impl Twofold {
    pub(crate) const ZERO: Self = Self { hi: 0.0, lo: 0.0 };

    pub(crate) fn new(x: f64) -> Self {
        Self { hi: x, lo: 0.0 }
    }

    /// Exact `a - b`.
    pub(crate) fn diff(a: f64, b: f64) -> Self {
        let (hi, lo) = two_sum(a, -b);
        Self { hi, lo }
    }

    pub(crate) fn value(self) -> f64 {
        self.hi + self.lo
    }

    pub(crate) fn add(self, o: Self) -> Self {
        let (s, e) = two_sum(self.hi, o.hi);
        let (t, f) = two_sum(self.lo, o.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Self { hi, lo }
    }

    pub(crate) fn neg(self) -> Self {
        Self { hi: -self.hi, lo: -self.lo }
    }

    pub(crate) fn sub(self, o: Self) -> Self {
        self.add(o.neg())
    }

    pub(crate) fn mul(self, o: Self) -> Self {
        let (p, e) = two_prod(self.hi, o.hi);
        let (hi, lo) = quick_two_sum(p, e + (self.hi * o.lo + self.lo * o.hi));
        Self { hi, lo }
    }

    pub(crate) fn scale(self, b: f64) -> Self {
        let (p, e) = two_prod(self.hi, b);
        let (hi, lo) = quick_two_sum(p, e + self.lo * b);
        Self { hi, lo }
    }
}

impl Twofold {
    pub(crate) fn div_by(self, b: Self) -> Self {
        let q1 = self.hi / b.hi;
        let r = self.sub(b.scale(q1));
        let q2 = r.hi / b.hi;
        let r = r.sub(b.scale(q2));
        let q3 = r.hi / b.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Self { hi, lo }.add(Self::new(q3))
    }

    /// One Newton correction on the double square root.
    pub(crate) fn sqrt(self) -> Self {
        let s = libm_sqrt(self.hi);
        if s == 0.0 {
            return Self::ZERO;
        }
        let (p, e) = two_prod(s, s);
        let r = self.sub(Self { hi: p, lo: e });
        let (hi, lo) = quick_two_sum(s, r.hi / (2.0 * s));
        Self { hi, lo }
    }
}

fn libm_sqrt(x: f64) -> f64 {
    #[allow(unused_imports)] // inherent float methods shadow it whenever std is linked
    use num_traits::Float;
    x.sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_rounding_errors() {
        let third = Twofold::new(1.0).div_by(Twofold::new(3.0));
        let back = third.scale(3.0);
        assert_eq!(back.hi, 1.0);
        assert!(back.lo.abs() < 1e-31);
        let x = Twofold::diff(1.0, 1e-17);
        assert_eq!(x.hi, 1.0);
        assert_eq!(x.lo, -1e-17);
        // (1 + 2^-30)^2 = 1 + 2^-29 + 2^-60
        let a = 1.0 + 2f64.powi(-30);
        let sq = Twofold::new(a).mul(Twofold::new(a));
        assert_eq!(sq.hi, 1.0 + 2f64.powi(-29));
        assert_eq!(sq.lo, 2f64.powi(-60));
        let r = Twofold::new(2.0).sqrt();
        let back = r.mul(r).sub(Twofold::new(2.0));
        assert!(back.value().abs() < 1e-30);
        let q = Twofold::new(1.0).div_by(Twofold::new(3.0).sqrt());
        assert!(q.mul(q).sub(Twofold::new(1.0).div_by(Twofold::new(3.0))).value().abs() < 1e-30);
    }
}
