use alloc::vec::Vec;

use super::bessel::{j_real, j_real_prime, BesselOrder};
use crate::{Error, Result};

/// Largest number of zeros returned by [`bessel_j_zeros`].
pub const MAX_ZERO_COUNT: usize = 10_000;

// Consecutive positive zeros of J_nu are more than 2.4 apart for every nu > -1.
const SCAN_STEP: f64 = 0.25;

/// First `count` positive zeros of `J_nu`, increasing.
///
/// Zeros are bracketed by a sign scan with step 0.25, bisected to a bracket
/// of width `max(1e-12, 8 ulp)` and polished with one Newton step that is
/// accepted only if it stays inside the final bracket.
pub fn bessel_j_zeros(nu: BesselOrder, count: usize) -> Result<Vec<f64>> {
    if count == 0 {
        return Ok(Vec::new());
    }
    if count > MAX_ZERO_COUNT {
        return Err(Error::precondition("at most 10^4 zeros can be requested"));
    }
    let v = nu.value();
    let mut zeros = Vec::with_capacity(count);
    let mut lo = 1e-6;
    let mut f_lo = j_real(v, lo);
    let limit = 4.0 * (count as f64 + v.abs() + 4.0) * core::f64::consts::PI;
    while zeros.len() < count {
        let hi = lo + SCAN_STEP;
        if hi > limit {
            return Err(Error::numeric(alloc::format!(
                "zero {} of J_{v} not bracketed below {limit}",
                zeros.len() + 1
            )));
        }
        let f_hi = j_real(v, hi);
        if f_hi == 0.0 {
            zeros.push(hi);
            lo = hi + 1e-9;
            f_lo = j_real(v, lo);
            continue;
        }
        if f_lo.signum() != f_hi.signum() {
            let root = refine(v, lo, hi, f_lo)
                .map_err(|_| Error::numeric(alloc::format!("zero {} of J_{v} did not converge", zeros.len() + 1)))?;
            zeros.push(root);
        }
        lo = hi;
        f_lo = f_hi;
    }
    Ok(zeros)
}

fn refine(nu: f64, mut lo: f64, mut hi: f64, mut f_lo: f64) -> core::result::Result<f64, ()> {
    for _ in 0..200 {
        let width = hi - lo;
        if width <= 1e-12f64.max(8.0 * f64::EPSILON * hi) {
            let mid = 0.5 * (lo + hi);
            let d = j_real_prime(nu, mid);
            let step = j_real(nu, mid) / d;
            let polished = mid - step;
            if d != 0.0 && polished >= lo && polished <= hi {
                return Ok(polished);
            }
            return Ok(mid);
        }
        let mid = 0.5 * (lo + hi);
        let f_mid = j_real(nu, mid);
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Err(())
}
