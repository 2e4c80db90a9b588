//! The angular density |Y_lm(θ)|² and the measures it contributes.

use std::f64::consts::PI;

use crate::error::{ChoError, Result};
use crate::numerics::{assoc_legendre, find_root_bracketed, gauss_legendre_reference, ln_factorial};

/// Largest l with tabulated angular factors, matching the momentum kernel.
pub const MAX_ANGULAR_L: usize = 9;

const PANELS_PER_LOBE: usize = 8;
const PANEL_ORDER: usize = 40;

/// |Y_lm|² sampled on a quadrature in x = cos θ that puts a panel break at
/// every node of P_l^m, so powers |Y|^{2λ} with λ < 1 stay well resolved.
///
/// Weights include the 2π of the azimuthal integral, so sums over the nodes
/// are integrals over the full sphere.
#[derive(Debug, Clone, PartialEq)]
pub struct AngularFactor {
    pub l: usize,
    pub m: i32,
    /// −∫|Y|² ln|Y|² dΩ.
    pub entropy: f64,
    /// ∫|Y|⁴ dΩ.
    pub onicescu: f64,
    c2: f64,
    weights: Vec<f64>,
    density: Vec<f64>,
}

impl AngularFactor {
    pub fn new(l: usize, m: i32) -> Result<Self> {
        if l > MAX_ANGULAR_L {
            return Err(ChoError::InvalidInput(format!("angular factors cover l <= {MAX_ANGULAR_L}, got l = {l}")));
        }
        let am = m.unsigned_abs() as usize;
        if am > l {
            return Err(ChoError::InvalidInput(format!("|m| = {am} exceeds l = {l}")));
        }
        let c2 = normalization(l, am);

        let mut breaks = vec![-1.0];
        breaks.extend(legendre_zeros(l, am)?);
        breaks.push(1.0);

        let (t, w) = gauss_legendre_reference(PANEL_ORDER);
        let mut weights = Vec::new();
        let mut density = Vec::new();
        for lobe in breaks.windows(2) {
            let width = (lobe[1] - lobe[0]) / PANELS_PER_LOBE as f64;
            for k in 0..PANELS_PER_LOBE {
                let a = lobe[0] + k as f64 * width;
                for (ti, wi) in t.iter().zip(&w) {
                    let x = a + 0.5 * width * (ti + 1.0);
                    let p = assoc_legendre(l, am, x);
                    weights.push(2.0 * PI * 0.5 * width * wi);
                    density.push(c2 * p * p);
                }
            }
        }

        let mut factor = Self { l, m, entropy: 0.0, onicescu: 0.0, c2, weights, density };
        let norm = factor.entropic_moment(1.0);
        if (norm - 1.0).abs() > 1e-10 {
            return Err(ChoError::InvalidInput(format!("|Y_{l}{m}|² integrates to {norm}, not 1")));
        }
        factor.entropy = -factor
            .weights
            .iter()
            .zip(&factor.density)
            .map(|(w, &y)| if y > 0.0 { w * y * y.ln() } else { 0.0 })
            .sum::<f64>();
        factor.onicescu = factor.entropic_moment(2.0);
        Ok(factor)
    }

    /// |Y_lm(θ)|² at x = cos θ.
    pub fn density_at(&self, x: f64) -> f64 {
        let p = assoc_legendre(self.l, self.m.unsigned_abs() as usize, x);
        self.c2 * p * p
    }

    /// ∫|Y|^{2λ} dΩ for λ > 0.
    pub fn entropic_moment(&self, lambda: f64) -> f64 {
        self.weights.iter().zip(&self.density).map(|(w, &y)| if y > 0.0 { w * y.powf(lambda) } else { 0.0 }).sum()
    }
}

/// c with |Y_lm|² = c·P_l^m(cos θ)².
pub(crate) fn normalization(l: usize, m: usize) -> f64 {
    (((2 * l + 1) as f64 / (4.0 * PI)).ln() + ln_factorial(l - m) - ln_factorial(l + m)).exp()
}

/// Interior zeros of P_l^m on (−1, 1), in increasing order. There are l − m.
pub(crate) fn legendre_zeros(l: usize, m: usize) -> Result<Vec<f64>> {
    let count = l - m;
    if count == 0 {
        return Ok(Vec::new());
    }
    // Zeros of P_l^m are at least ~1/l² apart near the ends; 4000 cells
    // separate them for every l this module accepts.
    let cells = 4000;
    let f = |x: f64| assoc_legendre(l, m, x);
    let mut zeros = Vec::with_capacity(count);
    let mut lo = -1.0 + 1e-12;
    let mut f_lo = f(lo);
    for k in 1..=cells {
        let hi = -1.0 + 2.0 * k as f64 / cells as f64 - if k == cells { 1e-12 } else { 0.0 };
        let f_hi = f(hi);
        if f_lo * f_hi < 0.0 {
            zeros.push(find_root_bracketed(f, lo, hi, 1e-15)?);
        } else if f_hi == 0.0 && k < cells {
            zeros.push(hi);
        }
        lo = hi;
        f_lo = f_hi;
    }
    if zeros.len() != count {
        return Err(ChoError::InvalidInput(format!("found {} zeros of P_{l}^{m}, expected {count}", zeros.len())));
    }
    Ok(zeros)
}
