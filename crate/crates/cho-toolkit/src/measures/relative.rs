//! Relative Fisher information I(ρ_t | ρ_ref) = ∫ρ_t |∇ ln(ρ_t/ρ_ref)|².
//!
//! For real wavefunctions the integrand is 4(∇ψ_t − ψ_t ∇ψ_ref/ψ_ref)², which
//! stays finite at shared nodes and never needs ln ρ. In 3D the gradient
//! splits into a radial part and an angular part divided by r (or p). The two
//! are orthogonal components of the same vector, so the squared norm has no
//! cross term and
//!
//! I = I_radial + ⟨1/s²⟩_t · I_angular,
//!
//! with s the radial coordinate of whichever space the states live in.

use std::f64::consts::{PI, SQRT_2};

use super::angular::{legendre_zeros, normalization};
use super::differentiation::{first_derivative, uniform_step, EndParity};
use crate::error::{ChoError, Result};
use crate::exact::{Eigenstate, Labels};
use crate::numerics::{assoc_legendre, gauss_legendre_reference};

/// Samples below this fraction of the peak count as zero at the ends of the grid.
const NEGLIGIBLE: f64 = 1e-9;

const ANGULAR_PANELS: usize = 64;
const ANGULAR_ORDER: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Space {
    Position,
    Momentum,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelativeFisher {
    pub radial: f64,
    /// Already weighted by the target's ⟨1/s²⟩; zero when both states share (l, m).
    pub angular: f64,
    pub total: f64,
}

/// Relative Fisher information of `target` with respect to `reference`.
///
/// Both states must live in the same space; momentum-space states are passed
/// as real eigenstates on a p grid. The integral runs over the target's grid.
/// A reference on a different grid is re-sampled from its closed form, so a
/// reference without one must share the target's grid.
pub fn relative_fisher_numeric(target: &Eigenstate, reference: &Eigenstate) -> Result<RelativeFisher> {
    let resampled;
    let reference = if target.grid == reference.grid {
        reference
    } else {
        let Some(wf) = &reference.analytic else {
            return Err(ChoError::InvalidInput("a sampled reference must share the target's grid".into()));
        };
        let values = target.grid.nodes().iter().map(|&x| wf.value(x)).collect::<Result<Vec<_>>>()?;
        resampled = Eigenstate { grid: target.grid.clone(), values, ..reference.clone() };
        &resampled
    };
    let angular_labels = match (target.labels, reference.labels) {
        (Labels::OneD { .. }, Labels::OneD { .. }) => None,
        (Labels::Radial { l, m, .. }, Labels::Radial { l: lr, m: mr, .. }) => Some(((l, m), (lr, mr))),
        _ => return Err(ChoError::InvalidInput("target and reference are of different kinds".into())),
    };

    let radial = radial_term(target, reference)?;
    let angular = match angular_labels {
        Some(((l, m), (lr, mr))) if (l, m.unsigned_abs()) != (lr, mr.unsigned_abs()) => {
            let inv_s2: f64 = target.grid.weights().iter().zip(&target.values).map(|(w, v)| w * v * v).sum();
            inv_s2 * angular_term(l, m.unsigned_abs() as usize, lr, mr.unsigned_abs() as usize)?
        }
        _ => 0.0,
    };
    Ok(RelativeFisher { radial, angular, total: radial + angular })
}

fn derivative(state: &Eigenstate) -> Result<Vec<f64>> {
    if let Some(wf) = &state.analytic {
        return state.grid.nodes().iter().map(|&x| wf.derivative(x)).collect();
    }
    let h = uniform_step(state.grid.nodes())
        .ok_or_else(|| ChoError::InvalidInput("sampled states need a uniform grid for differentiation".into()))?;
    let parity = match state.labels {
        Labels::Radial { l, .. } if state.grid.nodes()[0] == 0.0 => {
            EndParity { left: if l % 2 == 0 { 1.0 } else { -1.0 }, right: -1.0 }
        }
        _ => EndParity::WALLS,
    };
    Ok(first_derivative(&state.values, h, parity))
}

fn radial_term(target: &Eigenstate, reference: &Eigenstate) -> Result<f64> {
    let (t, r) = (&target.values, &reference.values);
    let peak = |v: &[f64]| v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let (peak_t, peak_r) = (peak(t), peak(r));

    // The reference may only change sign where the target does too.
    for (i, w) in r.windows(2).enumerate() {
        if w[0] * w[1] < 0.0 && t[i] * t[i + 1] > 0.0 {
            return Err(ChoError::SupportViolation(i));
        }
    }

    let dt = derivative(target)?;
    let dr = derivative(reference)?;
    let last = t.len() - 1;
    let mut sum = 0.0;
    for i in 0..t.len() {
        let w = target.grid.full_weight(i);
        if w == 0.0 {
            continue;
        }
        let small_t = t[i].abs() <= NEGLIGIBLE * peak_t;
        if (i == 0 || i == last) && small_t && r[i].abs() <= NEGLIGIBLE * peak_r {
            continue;
        }
        if r[i] == 0.0 {
            if small_t {
                continue;
            }
            return Err(ChoError::SupportViolation(i));
        }
        let g = dt[i] - t[i] * dr[i] / r[i];
        sum += 4.0 * g * g * w;
    }
    Ok(sum)
}

/// dP_l^m/dθ at x = cos θ, from (1 − x²)P′ = −l x P_l^m + (l + m) P_{l−1}^m.
fn legendre_theta_derivative(l: usize, m: usize, x: f64) -> f64 {
    if l == 0 {
        return 0.0;
    }
    let lower = if m < l { assoc_legendre(l - 1, m, x) } else { 0.0 };
    (l as f64 * x * assoc_legendre(l, m, x) - (l + m) as f64 * lower) / (1.0 - x * x).sqrt()
}

/// ∫ 4|Y_t|² (∂_θ ln(|Y_t|/|Y_ref|))² dΩ.
fn angular_term(l: usize, m: usize, lr: usize, mr: usize) -> Result<f64> {
    if mr > m {
        return Err(ChoError::SupportViolation(0));
    }
    let target_zeros = legendre_zeros(l, m)?;
    for (k, z) in legendre_zeros(lr, mr)?.into_iter().enumerate() {
        if !target_zeros.iter().any(|zt| (zt - z).abs() <= 1e-9) {
            return Err(ChoError::SupportViolation(k));
        }
    }
    let c = normalization(l, m);
    let (t, w) = gauss_legendre_reference(ANGULAR_ORDER);
    let width = 2.0 / ANGULAR_PANELS as f64;
    let mut sum = 0.0;
    for k in 0..ANGULAR_PANELS {
        let a = -1.0 + k as f64 * width;
        for (ti, wi) in t.iter().zip(&w) {
            let x = a + 0.5 * width * (ti + 1.0);
            let pt = assoc_legendre(l, m, x);
            let pr = assoc_legendre(lr, mr, x);
            let g = legendre_theta_derivative(l, m, x) - pt * legendre_theta_derivative(lr, mr, x) / pr;
            sum += 2.0 * PI * 0.5 * width * wi * 4.0 * c * g * g;
        }
    }
    Ok(sum)
}

/// Closed forms for an oscillator state against the node-less state of the
/// same symmetry. In 1D the Hamiltonian is −d²/dx² + ½ω²x²; in 3D it is
/// −½∇² + ½ω²r².
pub fn relative_fisher_closed_form(space: Space, labels: Labels, omega: f64) -> Result<f64> {
    check_omega(omega)?;
    Ok(match (labels, space) {
        (Labels::OneD { n }, Space::Position) => 4.0 * SQRT_2 * omega * n as f64,
        (Labels::OneD { n }, Space::Momentum) => 8.0 * SQRT_2 * n as f64 / omega,
        (Labels::Radial { n_r, .. }, Space::Position) => 16.0 * omega * n_r as f64,
        (Labels::Radial { n_r, .. }, Space::Momentum) => 16.0 * n_r as f64 / omega,
    })
}

/// Increase of the closed form per unit of the principal quantum number
/// (n in 1D, 2n_r + l in 3D).
pub fn relative_fisher_spacing(space: Space, dim: usize, omega: f64) -> Result<f64> {
    check_omega(omega)?;
    match (dim, space) {
        (1, Space::Position) => Ok(4.0 * SQRT_2 * omega),
        (1, Space::Momentum) => Ok(8.0 * SQRT_2 / omega),
        (3, Space::Position) => Ok(8.0 * omega),
        (3, Space::Momentum) => Ok(8.0 / omega),
        _ => Err(ChoError::InvalidInput(format!("closed forms exist for D = 1 and 3, got {dim}"))),
    }
}

fn check_omega(omega: f64) -> Result<()> {
    if omega > 0.0 && omega.is_finite() {
        Ok(())
    } else {
        Err(ChoError::InvalidInput(format!("omega must be positive, got {omega}")))
    }
}
