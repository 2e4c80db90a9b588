//! Kummer's confluent hypergeometric function M(a, b, y) = 1F1(a; b; y).

use crate::error::{ChoError, Result};

/// Largest argument accepted by [`kummer_1f1`].
///
/// Every caller evaluates M at y = c·x² for a confinement length x. Up to this
/// bound the ascending series fits in double precision (e^700 < f64::MAX) and
/// converges in well under a few thousand terms. Beyond it we refuse rather
/// than return a number with no correct digits.
pub const MAX_ARGUMENT: f64 = 700.0;

/// Controls where the ascending series is cut off.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesTruncation {
    pub max_terms: usize,
    pub tail_tolerance: f64,
}

impl SeriesTruncation {
    pub fn new(max_terms: usize, tail_tolerance: f64) -> Result<Self> {
        if max_terms < 10 {
            return Err(ChoError::InvalidInput(format!("max_terms must be at least 10, got {max_terms}")));
        }
        if !(tail_tolerance > 0.0 && tail_tolerance <= 1e-6) {
            return Err(ChoError::InvalidInput(format!("tail_tolerance must lie in (0, 1e-6], got {tail_tolerance}")));
        }
        Ok(Self { max_terms, tail_tolerance })
    }
}

impl Default for SeriesTruncation {
    fn default() -> Self {
        Self { max_terms: 5000, tail_tolerance: 1e-16 }
    }
}

/// Neumaier-compensated running sum.
#[derive(Default, Clone, Copy)]
struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

fn is_non_positive_integer(v: f64) -> bool {
    v <= 0.0 && v.fract() == 0.0
}

/// Evaluates M(a, b, y) by its ascending series.
///
/// The series stops when a rigorous bound on the remaining tail drops below
/// `tail_tolerance` relative to the partial sum, or below the rounding level
/// of the largest term (the latter matters at the roots of M, which is where
/// the eigenvalue searches spend their time). When `a` is a non-positive
/// integer the series is a polynomial and terminates exactly.
pub fn kummer_1f1(a: f64, b: f64, y: f64, trunc: SeriesTruncation) -> Result<f64> {
    if is_non_positive_integer(b) {
        return Err(ChoError::InvalidInput(format!("b = {b} is a non-positive integer")));
    }
    if !(y >= 0.0) || !a.is_finite() || !b.is_finite() {
        return Err(ChoError::InvalidInput(format!("1F1 needs finite a, b and y >= 0 (a = {a}, b = {b}, y = {y})")));
    }
    if y > MAX_ARGUMENT {
        return Err(ChoError::ArgumentTooLarge { y, max: MAX_ARGUMENT });
    }

    let mut acc = CompensatedSum::default();
    acc.add(1.0);
    if y == 0.0 {
        return Ok(1.0);
    }
    let mut term = 1.0_f64;
    let mut max_abs_term = 1.0_f64;
    for k in 0..trunc.max_terms {
        let kf = k as f64;
        term *= (a + kf) * y / ((b + kf) * (kf + 1.0));
        if term == 0.0 {
            // a + k vanished: polynomial case, nothing further contributes.
            return Ok(acc.value());
        }
        acc.add(term);
        max_abs_term = max_abs_term.max(term.abs());

        // Past both sign flips the term ratios are positive and eventually
        // bounded by y/(k+2)·max(1, (a+k+1)/(b+k+1)); once that bound is below
        // one the tail is dominated by a geometric series.
        let next = kf + 1.0;
        if a + next > 0.0 && b + next > 0.0 {
            let growth = ((a + next) / (b + next)).max(1.0);
            let ratio = y * growth / (next + 1.0);
            if ratio < 1.0 {
                let tail = term.abs() * ratio / (1.0 - ratio);
                let s = acc.value();
                if tail <= trunc.tail_tolerance * s.abs() || tail <= 1e-17 * max_abs_term {
                    return Ok(s);
                }
            }
        }
    }
    Err(ChoError::SeriesNonConvergence { partial_sum: acc.value(), terms: trunc.max_terms })
}

/// M(a, b, y) together with its first two y-derivatives, using
/// dM/dy = (a/b)·M(a+1, b+1, y).
pub fn kummer_1f1_with_derivatives(a: f64, b: f64, y: f64, trunc: SeriesTruncation) -> Result<(f64, f64, f64)> {
    let m0 = kummer_1f1(a, b, y, trunc)?;
    let m1 = if a == 0.0 { 0.0 } else { a / b * kummer_1f1(a + 1.0, b + 1.0, y, trunc)? };
    let m2 = if a == 0.0 || a + 1.0 == 0.0 {
        0.0
    } else {
        a * (a + 1.0) / (b * (b + 1.0)) * kummer_1f1(a + 2.0, b + 2.0, y, trunc)?
    };
    Ok((m0, m1, m2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(a: f64, b: f64, y: f64) -> f64 {
        kummer_1f1(a, b, y, SeriesTruncation::default()).unwrap()
    }

    #[test]
    fn trivial_cases() {
        assert_eq!(m(0.0, 0.5, 3.7), 1.0);
        assert!((m(-1.0, 0.5, 2.0) + 3.0).abs() < 1e-15);
    }

    #[test]
    fn exponential_identity() {
        // M(a, a, y) = e^y
        for &y in &[0.1, 1.0, 10.0, 50.0] {
            let v = m(1.3, 1.3, y);
            assert!((v / y.exp() - 1.0).abs() < 1e-13, "y = {y}");
        }
    }

    #[test]
    fn three_term_polynomial_roots() {
        // M(-2, 1/2, y) = 1 - 4y + (4/3)y², whose roots are (3 ± √6)/2.
        for r in [(3.0 - 6f64.sqrt()) / 2.0, (3.0 + 6f64.sqrt()) / 2.0] {
            assert!(m(-2.0, 0.5, r).abs() < 1e-14);
        }
    }

    #[test]
    fn rejects_bad_input() {
        let t = SeriesTruncation::default();
        assert!(kummer_1f1(1.0, -2.0, 1.0, t).is_err());
        assert!(kummer_1f1(1.0, 1.5, -1.0, t).is_err());
        assert!(matches!(kummer_1f1(1.0, 1.5, 800.0, t), Err(ChoError::ArgumentTooLarge { .. })));
        assert!(SeriesTruncation::new(5, 1e-12).is_err());
        assert!(SeriesTruncation::new(50, 1e-3).is_err());
    }

    #[test]
    fn reports_non_convergence() {
        let t = SeriesTruncation::new(10, 1e-12).unwrap();
        match kummer_1f1(0.5, 1.5, 200.0, t) {
            Err(ChoError::SeriesNonConvergence { terms, .. }) => assert_eq!(terms, 10),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn derivative_matches_difference_quotient() {
        let (a, b, y) = (-3.7, 1.5, 2.3);
        let t = SeriesTruncation::default();
        let (_, d1, d2) = kummer_1f1_with_derivatives(a, b, y, t).unwrap();
        let h = 1e-4;
        let fd1 = (m(a, b, y + h) - m(a, b, y - h)) / (2.0 * h);
        let fd2 = (m(a, b, y + h) - 2.0 * m(a, b, y) + m(a, b, y - h)) / (h * h);
        assert!((d1 - fd1).abs() < 1e-7 * d1.abs().max(1.0));
        assert!((d2 - fd2).abs() < 1e-5 * d2.abs().max(1.0));
    }
}
