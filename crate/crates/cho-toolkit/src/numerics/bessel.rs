//! Spherical Bessel functions of the first kind and their zeros.

use super::roots::find_root_bracketed;
use crate::error::{ChoError, Result};

/// j_l(x) for x >= 0.
///
/// Below x = l + 1 the ascending power series is used (upward recurrence
/// loses digits there); above it the upward recurrence from j_0 and j_1 is
/// stable.
pub fn spherical_bessel_j(l: usize, x: f64) -> f64 {
    let x = x.abs();
    if x == 0.0 {
        return if l == 0 { 1.0 } else { 0.0 };
    }
    if x < l as f64 + 1.0 {
        return series(l, x);
    }
    let (s, c) = x.sin_cos();
    let j0 = s / x;
    if l == 0 {
        return j0;
    }
    let mut prev = j0;
    let mut cur = s / (x * x) - c / x;
    for n in 1..l {
        let next = (2 * n + 1) as f64 / x * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

fn series(l: usize, x: f64) -> f64 {
    // j_l(x) = x^l/(2l+1)!! · Σ_k (-x²/2)^k / (k! (2l+3)(2l+5)…(2l+2k+1))
    let mut lead = 1.0;
    for i in 0..l {
        lead *= x / (2 * i + 3) as f64;
    }
    let z = -0.5 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..200 {
        term *= z / (k as f64 * (2 * l + 2 * k + 1) as f64);
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    lead * sum
}

/// The `zero_index`-th positive zero of j_l (equivalently of J_{l+1/2}).
///
/// Zeros are bracketed by a uniform scan starting at x = l (no zero of j_l
/// lies below l + 1/2) and refined with Brent's method.
pub fn spherical_bessel_zero(l: usize, zero_index: usize) -> Result<f64> {
    if l > 30 || zero_index == 0 || zero_index > 50 {
        return Err(ChoError::InvalidInput(format!(
            "spherical_bessel_zero supports l <= 30 and 1 <= zero_index <= 50 (got l = {l}, index = {zero_index})"
        )));
    }
    let step = 0.1;
    let mut lo = l as f64 + 0.25;
    let mut f_lo = spherical_bessel_j(l, lo);
    let mut found = 0;
    let limit = l as f64 + (zero_index as f64 + 3.0) * std::f64::consts::PI + 10.0;
    while lo < limit {
        let hi = lo + step;
        let f_hi = spherical_bessel_j(l, hi);
        if f_lo * f_hi < 0.0 {
            found += 1;
            if found == zero_index {
                let z = find_root_bracketed(|x| spherical_bessel_j(l, x), lo, hi, 1e-15)
                    .map_err(|_| ChoError::BesselBracket { l, index: zero_index })?;
                if spherical_bessel_j(l, z).abs() > 1e-13 {
                    return Err(ChoError::BesselBracket { l, index: zero_index });
                }
                return Ok(z);
            }
        }
        lo = hi;
        f_lo = f_hi;
    }
    Err(ChoError::BesselBracket { l, index: zero_index })
}
