//! Shannon, Rényi and Onicescu measures, their uncertainty bounds, and the
//! complexities built from them.

use std::f64::consts::PI;

use super::{RadialDensityPair, SpaceValues};
use crate::error::{ChoError, Result};
use crate::numerics::{integrate, Grid};

/// Rényi orders for position (α) and momentum (β) space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RenyiOrders {
    pub alpha: f64,
    pub beta: f64,
}

impl Default for RenyiOrders {
    /// (3/5, 3): the conjugate pair 1/α + 1/β = 2 whose free ground-state
    /// values are R_r = 3.6326909163 and R_p = 2.5410540.
    fn default() -> Self {
        Self { alpha: 0.6, beta: 3.0 }
    }
}

impl RenyiOrders {
    pub fn is_conjugate(&self) -> bool {
        (1.0 / self.alpha + 1.0 / self.beta - 2.0).abs() <= 1e-12
    }
}

/// −∫ρ ln ρ under the grid measure, with 0·ln 0 = 0.
fn radial_entropy(rho: &[f64], grid: &Grid) -> Result<f64> {
    let f: Vec<f64> = rho.iter().map(|&v| if v > 0.0 { -v * v.ln() } else { 0.0 }).collect();
    integrate(&f, grid)
}

/// ∫ρ^λ under the grid measure.
fn radial_moment(rho: &[f64], grid: &Grid, lambda: f64) -> Result<f64> {
    let f: Vec<f64> = rho.iter().map(|&v| if v > 0.0 { v.powf(lambda) } else { 0.0 }).collect();
    integrate(&f, grid)
}

pub fn shannon(pair: &RadialDensityPair) -> Result<SpaceValues> {
    let ang = pair.angular().map_or(0.0, |a| a.entropy);
    let r = radial_entropy(pair.rho_r(), pair.r_grid())? + ang;
    let p = radial_entropy(pair.rho_p(), pair.p_grid())? + ang;
    Ok(SpaceValues { r, p, t: r + p })
}

/// Rényi entropies of order α in position space and β in momentum space.
/// Order 1 is the Shannon limit and is rejected.
pub fn renyi(pair: &RadialDensityPair, alpha: f64, beta: f64) -> Result<SpaceValues> {
    for lambda in [alpha, beta] {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(ChoError::InvalidInput(format!("Rényi order must be positive, got {lambda}")));
        }
        if lambda == 1.0 {
            return Err(ChoError::InvalidInput("Rényi order 1 is the Shannon entropy".into()));
        }
    }
    let one = |rho: &[f64], grid: &Grid, lambda: f64| -> Result<f64> {
        let ang = pair.angular().map_or(1.0, |a| a.entropic_moment(lambda));
        Ok((radial_moment(rho, grid, lambda)?.ln() + ang.ln()) / (1.0 - lambda))
    };
    let r = one(pair.rho_r(), pair.r_grid(), alpha)?;
    let p = one(pair.rho_p(), pair.p_grid(), beta)?;
    Ok(SpaceValues { r, p, t: r + p })
}

/// Onicescu energies ∫ρ² in each space; the total is their product.
pub fn onicescu(pair: &RadialDensityPair) -> Result<SpaceValues> {
    let ang = pair.angular().map_or(1.0, |a| a.onicescu);
    let r = radial_moment(pair.rho_r(), pair.r_grid(), 2.0)? * ang;
    let p = radial_moment(pair.rho_p(), pair.p_grid(), 2.0)? * ang;
    Ok(SpaceValues { r, p, t: r * p })
}

/// Lower bound D(1 + ln π) on S_r + S_p.
pub fn bbm_bound(dim: usize) -> f64 {
    dim as f64 * (1.0 + PI.ln())
}

/// Lower bound on R_r^α + R_p^β for conjugate orders:
/// −(D/2)(ln α/(1−α) + ln β/(1−β)) + D ln π. The D/2 prefactor is the one
/// the D-dimensional Gaussian saturates.
pub fn renyi_bound(dim: usize, orders: RenyiOrders) -> Result<f64> {
    if !orders.is_conjugate() {
        return Err(ChoError::InvalidInput(format!(
            "the Rényi bound needs 1/α + 1/β = 2, got α = {}, β = {}",
            orders.alpha, orders.beta
        )));
    }
    let (a, b) = (orders.alpha, orders.beta);
    let d = dim as f64;
    Ok(-0.5 * d * (a.ln() / (1.0 - a) + b.ln() / (1.0 - b)) + d * PI.ln())
}

/// A complexity evaluated separately in each space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerSpace {
    pub r: f64,
    pub p: f64,
}

/// Complexities C = A·e^{bB} with order factor A ∈ {E, I} and disorder
/// factor B ∈ {R, S}, each built from same-space quantities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexitySet {
    pub b: f64,
    pub energy_renyi: PerSpace,
    pub energy_shannon: PerSpace,
    /// Present when Fisher information was available.
    pub fisher_renyi: Option<PerSpace>,
    pub fisher_shannon: Option<PerSpace>,
}

impl ComplexitySet {
    pub fn from_measures(
        b: f64,
        shannon: &SpaceValues,
        renyi: &SpaceValues,
        onicescu: &SpaceValues,
        fisher: Option<&SpaceValues>,
    ) -> Self {
        let combine = |order: &SpaceValues, disorder: &SpaceValues| PerSpace {
            r: order.r * (b * disorder.r).exp(),
            p: order.p * (b * disorder.p).exp(),
        };
        Self {
            b,
            energy_renyi: combine(onicescu, renyi),
            energy_shannon: combine(onicescu, shannon),
            fisher_renyi: fisher.map(|i| combine(i, renyi)),
            fisher_shannon: fisher.map(|i| combine(i, shannon)),
        }
    }
}

pub fn complexity(
    pair: &RadialDensityPair,
    fisher: Option<&SpaceValues>,
    b: f64,
    orders: RenyiOrders,
) -> Result<ComplexitySet> {
    if !(b > 0.0 && b.is_finite()) {
        return Err(ChoError::InvalidInput(format!("complexity exponent must be positive, got {b}")));
    }
    let s = shannon(pair)?;
    let r = renyi(pair, orders.alpha, orders.beta)?;
    let e = onicescu(pair)?;
    Ok(ComplexitySet::from_measures(b, &s, &r, &e, fisher))
}
