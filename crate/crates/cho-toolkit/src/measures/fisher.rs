//! Fisher information from expectation values, so no density is ever
//! differentiated.
//!
//! For a 3D state with magnetic number m,
//!
//! I_r = 4⟨p²⟩ − 2(2l+1)|m|⟨r⁻²⟩,   I_p = 4⟨r²⟩ − 2(2l+1)|m|⟨p⁻²⟩.
//!
//! In 1D, I_x = 4⟨p²⟩ holds for any real ψ. The momentum-space value is
//! taken as 4·Var(x): exact when ψ(−x) = ±ψ(x), and an upper bound for a
//! state without reflection symmetry, whose momentum phase is not piecewise
//! constant.

use std::f64::consts::SQRT_2;

use super::{RadialDensityPair, SpaceValues};
use crate::error::{ChoError, Result};
use crate::exact::{ConfinedSystem1D, ConfinedSystemRadial, Eigenstate};
use crate::momentum::MomentumState;
use crate::numerics::{integrate, Grid, Measure};

/// The moments the Fisher formulas need. In 1D `r2` holds the variance of x.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Expectations {
    pub r2: f64,
    pub p2: f64,
    pub inv_r2: Option<f64>,
    pub inv_p2: Option<f64>,
}

/// Σ w_i f_i with the raw weights, i.e. ∫f dx without the measure factor.
fn raw_sum(values: &[f64], grid: &Grid) -> f64 {
    grid.weights().iter().zip(values).map(|(w, v)| w * v).sum()
}

impl Expectations {
    /// Moments of a radial state. ⟨p²⟩ comes from the energy,
    /// ⟨p²⟩ = 2(E − ½ω²⟨r²⟩). ⟨p⁻²⟩ is only available when the momentum
    /// wavefunction is supplied.
    pub fn radial(state: &Eigenstate, sys: &ConfinedSystemRadial, momentum: Option<&MomentumState>) -> Result<Self> {
        if state.grid.measure() != Measure::RSquared {
            return Err(ChoError::InvalidInput("radial moments need an r² grid".into()));
        }
        let dens: Vec<f64> = state.values.iter().map(|v| v * v).collect();
        let r2_dens: Vec<f64> = dens.iter().zip(state.grid.nodes()).map(|(d, r)| d * r * r).collect();
        let r2 = integrate(&r2_dens, &state.grid)?;
        let p2 = 2.0 * (state.energy - 0.5 * sys.omega * sys.omega * r2);
        let inv_r2 = Some(raw_sum(&dens, &state.grid));
        let inv_p2 = match momentum {
            Some(mom) => {
                if mom.grid.measure() != Measure::PSquared {
                    return Err(ChoError::InvalidInput("radial momentum states need a p² grid".into()));
                }
                Some(raw_sum(&mom.density(), &mom.grid))
            }
            None => None,
        };
        Ok(Self { r2, p2, inv_r2, inv_p2 })
    }

    /// Centered moments of a 1D state: Var(x) and ⟨p²⟩ = 2m(E − ⟨V⟩).
    pub fn line(state: &Eigenstate, sys: &ConfinedSystem1D) -> Result<Self> {
        if state.grid.measure() != Measure::Flat {
            return Err(ChoError::InvalidInput("1D moments need a flat grid".into()));
        }
        let x = state.grid.nodes();
        let dens: Vec<f64> = state.values.iter().map(|v| v * v).collect();
        let moment = |f: &dyn Fn(f64) -> f64| -> Result<f64> {
            let g: Vec<f64> = dens.iter().zip(x).map(|(d, &x)| d * f(x)).collect();
            integrate(&g, &state.grid)
        };
        let mean = moment(&|x| x)?;
        let var = moment(&|x| (x - mean) * (x - mean))?;
        let v = moment(&|x| sys.potential(x))?;
        Ok(Self { r2: var, p2: 2.0 * sys.mass * (state.energy - v), inv_r2: None, inv_p2: None })
    }
}

pub fn fisher(pair: &RadialDensityPair, ex: &Expectations) -> Result<SpaceValues> {
    fisher_from_moments(ex, pair.dim(), pair.l(), pair.m())
}

/// The same formulas without a density pair. Only a 3D state with m ≠ 0
/// needs ⟨r⁻²⟩ and ⟨p⁻²⟩, so everything else can skip the momentum transform.
pub fn fisher_from_moments(ex: &Expectations, dim: usize, l: usize, m: i32) -> Result<SpaceValues> {
    let (r, p) = if dim == 1 || m == 0 {
        (4.0 * ex.p2, 4.0 * ex.r2)
    } else {
        let (Some(inv_r2), Some(inv_p2)) = (ex.inv_r2, ex.inv_p2) else {
            return Err(ChoError::MissingExpectation);
        };
        let c = 2.0 * (2 * l + 1) as f64 * m.unsigned_abs() as f64;
        (4.0 * ex.p2 - c * inv_r2, 4.0 * ex.r2 - c * inv_p2)
    };
    Ok(SpaceValues { r, p, t: r * p })
}

/// (81/(⟨r²⟩⟨p²⟩), 16⟨r²⟩⟨p²⟩), the window I_t must fall in.
pub fn fisher_bounds(ex: &Expectations) -> (f64, f64) {
    let rp = ex.r2 * ex.p2;
    (81.0 / rp, 16.0 * rp)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledFisher {
    pub i_r: f64,
    pub i_p: f64,
    pub i_t: f64,
}

/// Rescales unit-frequency values as I_r·ω/√2 and I_p·√2/ω. The product is
/// taken from the unit-frequency inputs so that it is exactly the same for
/// every ω.
pub fn fisher_omega_scaling(i_r_at_1: f64, i_p_at_1: f64, omega: f64) -> Result<ScaledFisher> {
    if !(omega > 0.0 && omega.is_finite()) {
        return Err(ChoError::InvalidInput(format!("omega must be positive, got {omega}")));
    }
    Ok(ScaledFisher { i_r: i_r_at_1 * omega / SQRT_2, i_p: i_p_at_1 * SQRT_2 / omega, i_t: i_r_at_1 * i_p_at_1 })
}
