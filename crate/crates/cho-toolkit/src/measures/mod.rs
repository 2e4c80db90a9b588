//! Information-theoretic measures of an eigenstate in position and momentum
//! space.
//!
//! Everything here works on a [`RadialDensityPair`]: the radial densities
//! R²(r) and Π(p) on their own grids plus the (l, m) labels. In three
//! dimensions each net measure is the radial integral combined with the
//! angular factor of |Y_lm|², which is the same in both spaces. In one
//! dimension there is no angular part and both grids use the flat measure.
//!
//! | quantity  | position             | momentum             | total         |
//! |-----------|----------------------|----------------------|---------------|
//! | Shannon   | S_r                  | S_p                  | S_r + S_p     |
//! | Rényi     | R_r^α                | R_p^β                | R_r + R_p     |
//! | Onicescu  | E_r                  | E_p                  | E_r · E_p     |
//! | Fisher    | I_r                  | I_p                  | I_r · I_p     |

mod angular;
mod differentiation;
mod entropy;
mod fisher;
mod relative;
mod virial;

pub use angular::{AngularFactor, MAX_ANGULAR_L};
pub use entropy::{bbm_bound, complexity, onicescu, renyi, renyi_bound, shannon, ComplexitySet, PerSpace, RenyiOrders};
pub use fisher::{fisher, fisher_bounds, fisher_from_moments, fisher_omega_scaling, Expectations, ScaledFisher};
pub use relative::{
    relative_fisher_closed_form, relative_fisher_numeric, relative_fisher_spacing, RelativeFisher, Space,
};
pub use virial::{virial_check, SystemRef, VirialReport, DIFFERENTIATION_STABILITY};

use crate::error::{ChoError, Result};
use crate::exact::{Eigenstate, Labels};
use crate::momentum::MomentumState;
use crate::numerics::{integrate, Grid, Measure};

/// Both densities must integrate to one within this tolerance.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-8;

/// Relative slack granted when checking a bound that a state may saturate.
pub const BOUND_SLACK: f64 = 1e-8;

/// A measure evaluated in position space, momentum space, and combined.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpaceValues {
    pub r: f64,
    pub p: f64,
    pub t: f64,
}

/// Position and momentum densities of one state.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialDensityPair {
    r_grid: Grid,
    rho_r: Vec<f64>,
    p_grid: Grid,
    rho_p: Vec<f64>,
    l: usize,
    m: i32,
    dim: usize,
    angular: Option<AngularFactor>,
}

impl RadialDensityPair {
    /// `dim` is 3 (grids with the r² and p² measures) or 1 (flat grids,
    /// l = m = 0).
    pub fn new(
        r_grid: Grid,
        rho_r: Vec<f64>,
        p_grid: Grid,
        rho_p: Vec<f64>,
        l: usize,
        m: i32,
        dim: usize,
    ) -> Result<Self> {
        let (mr, mp) = match dim {
            3 => (Measure::RSquared, Measure::PSquared),
            1 => (Measure::Flat, Measure::Flat),
            _ => return Err(ChoError::InvalidInput(format!("density pairs live in D = 1 or 3, got {dim}"))),
        };
        if r_grid.measure() != mr || p_grid.measure() != mp {
            return Err(ChoError::InvalidInput(format!(
                "D = {dim} needs {mr:?}/{mp:?} grids, got {:?}/{:?}",
                r_grid.measure(),
                p_grid.measure()
            )));
        }
        if dim == 1 && (l != 0 || m != 0) {
            return Err(ChoError::InvalidInput("1D densities carry no angular labels".into()));
        }
        for (name, rho, grid) in [("position", &rho_r, &r_grid), ("momentum", &rho_p, &p_grid)] {
            if let Some(i) = rho.iter().position(|&v| v < 0.0) {
                return Err(ChoError::InvalidInput(format!("{name} density is negative at node {i}")));
            }
            let norm = integrate(rho, grid)?;
            if (norm - 1.0).abs() > NORMALIZATION_TOLERANCE {
                return Err(ChoError::InvalidInput(format!("{name} density integrates to {norm}")));
            }
        }
        let angular = if dim == 3 { Some(AngularFactor::new(l, m)?) } else { None };
        Ok(Self { r_grid, rho_r, p_grid, rho_p, l, m, dim, angular })
    }

    /// Pairs a position-space eigenstate with its momentum transform. The
    /// magnetic quantum number comes from the position state's labels.
    pub fn from_states(position: &Eigenstate, momentum: &MomentumState) -> Result<Self> {
        let (l, m, dim) = match (position.labels, momentum.labels) {
            (Labels::Radial { l, m, .. }, Labels::Radial { l: lp, .. }) if l == lp => (l, m, 3),
            (Labels::OneD { n }, Labels::OneD { n: np }) if n == np => (0, 0, 1),
            (a, b) => {
                return Err(ChoError::InvalidInput(format!("position labels {a:?} do not match momentum labels {b:?}")))
            }
        };
        let rho_r = position.values.iter().map(|v| v * v).collect();
        Self::new(position.grid.clone(), rho_r, momentum.grid.clone(), momentum.density(), l, m, dim)
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn m(&self) -> i32 {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn r_grid(&self) -> &Grid {
        &self.r_grid
    }

    pub fn p_grid(&self) -> &Grid {
        &self.p_grid
    }

    pub fn rho_r(&self) -> &[f64] {
        &self.rho_r
    }

    pub fn rho_p(&self) -> &[f64] {
        &self.rho_p
    }

    pub fn angular(&self) -> Option<&AngularFactor> {
        self.angular.as_ref()
    }
}

/// Which bounds a state satisfies. `None` means the bound does not apply
/// (non-conjugate Rényi orders, or Fisher without expectations or in 1D).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundFlags {
    /// S_t ≥ D(1 + ln π).
    pub bbm: bool,
    pub renyi: Option<bool>,
    /// 81/(⟨r²⟩⟨p²⟩) ≤ I_t ≤ 16⟨r²⟩⟨p²⟩.
    pub fisher: Option<bool>,
}

/// Every measure for one state, with complexities at b = 2/3 and b = 1.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasureReport {
    pub shannon: SpaceValues,
    pub orders: RenyiOrders,
    pub renyi: SpaceValues,
    pub onicescu: SpaceValues,
    pub fisher: Option<SpaceValues>,
    pub complexities: [ComplexitySet; 2],
    pub bounds: BoundFlags,
}

impl MeasureReport {
    pub fn compute(pair: &RadialDensityPair, expectations: Option<&Expectations>, orders: RenyiOrders) -> Result<Self> {
        let s = shannon(pair)?;
        let r = renyi(pair, orders.alpha, orders.beta)?;
        let e = onicescu(pair)?;
        let i = expectations.map(|ex| fisher(pair, ex)).transpose()?;
        let complexities = [
            ComplexitySet::from_measures(2.0 / 3.0, &s, &r, &e, i.as_ref()),
            ComplexitySet::from_measures(1.0, &s, &r, &e, i.as_ref()),
        ];
        let dim = pair.dim();
        let holds = |value: f64, bound: f64| value >= bound - BOUND_SLACK * bound.abs();
        let bbm = holds(s.t, bbm_bound(dim));
        let renyi_ok = renyi_bound(dim, orders).ok().map(|b| holds(r.t, b));
        let fisher_ok = match (dim, i, expectations) {
            (3, Some(i), Some(ex)) => {
                let (lo, hi) = fisher_bounds(ex);
                Some(holds(i.t, lo) && i.t <= hi + BOUND_SLACK * hi)
            }
            _ => None,
        };
        Ok(Self {
            shannon: s,
            orders,
            renyi: r,
            onicescu: e,
            fisher: i,
            complexities,
            bounds: BoundFlags { bbm, renyi: renyi_ok, fisher: fisher_ok },
        })
    }
}
