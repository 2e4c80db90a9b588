//! Kinetic and potential fluctuations of an eigenstate.
//!
//! For an exact eigenstate (T − ⟨T⟩)ψ = −(V − ⟨V⟩)ψ, so four quantities
//! coincide: (ΔT)², (ΔV)², ⟨T⟩⟨V⟩ − ⟨VT⟩ and ⟨T⟩⟨V⟩ − ⟨TV⟩. How closely they
//! agree measures how good the state is. Everything is built from Tψ and ψ′
//! so no fourth derivative appears: (ΔT)² = ∫(Tψ − ⟨T⟩ψ)², and ⟨TV⟩ is
//! reached from ⟨VT⟩ through the commutator [T, V]ψ = −½ω²(Dψ + 2(x − d)·ψ′).
//! Inside the box the wall potential is zero, so only the oscillator enters.

use super::differentiation::{first_derivative, second_derivative, uniform_step, EndParity};
use crate::error::{ChoError, Result};
use crate::exact::{ConfinedSystem1D, ConfinedSystemRadial, Eigenstate, Labels};
use crate::numerics::{integrate, Grid};

/// Largest relative change of (ΔT)² allowed when a finite-difference state is
/// re-evaluated on every other node.
pub const DIFFERENTIATION_STABILITY: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SystemRef {
    Line(ConfinedSystem1D),
    Radial(ConfinedSystemRadial),
}

impl From<ConfinedSystem1D> for SystemRef {
    fn from(sys: ConfinedSystem1D) -> Self {
        SystemRef::Line(sys)
    }
}

impl From<ConfinedSystemRadial> for SystemRef {
    fn from(sys: ConfinedSystemRadial) -> Self {
        SystemRef::Radial(sys)
    }
}

impl SystemRef {
    fn potential(&self, x: f64) -> f64 {
        match self {
            SystemRef::Line(s) => s.potential(x),
            SystemRef::Radial(s) => s.potential(x),
        }
    }

    fn omega(&self) -> f64 {
        match self {
            SystemRef::Line(s) => s.omega,
            SystemRef::Radial(s) => s.omega,
        }
    }

    /// [T, V]ψ from ψ and ψ′ at x.
    fn commutator(&self, x: f64, psi: f64, dpsi: f64) -> f64 {
        let w2 = self.omega() * self.omega();
        match self {
            SystemRef::Line(s) => -0.5 * w2 * (psi + 2.0 * (x - s.d_m) * dpsi),
            SystemRef::Radial(s) => -0.5 * w2 * (s.dim as f64 * psi + 2.0 * x * dpsi),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VirialReport {
    /// ⟨T⟩ + ⟨V⟩.
    pub energy: f64,
    pub kinetic: f64,
    pub potential: f64,
    pub delta_t2: f64,
    pub delta_v2: f64,
    /// ⟨T⟩⟨V⟩ − ⟨TV⟩.
    pub tv_gap: f64,
    /// ⟨T⟩⟨V⟩ − ⟨VT⟩.
    pub vt_gap: f64,
}

pub fn virial_check(state: &Eigenstate, sys: impl Into<SystemRef>) -> Result<VirialReport> {
    let sys = sys.into();
    match (sys, state.labels) {
        (SystemRef::Line(_), Labels::OneD { .. }) => {}
        (SystemRef::Radial(s), Labels::Radial { l, .. }) if s.l == l => {}
        _ => return Err(ChoError::InvalidInput("state labels do not match the system".into())),
    }
    let (t_psi, d_psi) = match &state.analytic {
        Some(wf) => {
            let x = state.grid.nodes();
            let t = x.iter().map(|&x| wf.kinetic(x)).collect::<Result<Vec<_>>>()?;
            let d = x.iter().map(|&x| wf.derivative(x)).collect::<Result<Vec<_>>>()?;
            (t, d)
        }
        None => {
            let (t, d) = finite_difference_actions(state.grid.nodes(), &state.values, &sys)?;
            check_stability(state, &sys, &t)?;
            (t, d)
        }
    };
    assemble(&state.grid, &state.values, &t_psi, &d_psi, &sys)
}

fn assemble(grid: &Grid, psi: &[f64], t_psi: &[f64], d_psi: &[f64], sys: &SystemRef) -> Result<VirialReport> {
    let x = grid.nodes();
    let v: Vec<f64> = x.iter().map(|&x| sys.potential(x)).collect();
    let mean = |f: &dyn Fn(usize) -> f64| -> Result<f64> {
        let g: Vec<f64> = (0..psi.len()).map(f).collect();
        integrate(&g, grid)
    };
    let kinetic = mean(&|i| psi[i] * t_psi[i])?;
    let potential = mean(&|i| v[i] * psi[i] * psi[i])?;
    let dv = |i: usize| v[i] - potential;
    let dt = |i: usize| t_psi[i] - kinetic * psi[i];
    let delta_t2 = mean(&|i| dt(i) * dt(i))?;
    let delta_v2 = mean(&|i| dv(i) * dv(i) * psi[i] * psi[i])?;
    let vt_gap = -mean(&|i| dv(i) * psi[i] * dt(i))?;
    let commutator = mean(&|i| psi[i] * sys.commutator(x[i], psi[i], d_psi[i]))?;
    Ok(VirialReport {
        energy: kinetic + potential,
        kinetic,
        potential,
        delta_t2,
        delta_v2,
        tv_gap: vt_gap - commutator,
        vt_gap,
    })
}

/// Tψ and ψ′ by fourth-order differences on a uniform grid.
fn finite_difference_actions(x: &[f64], psi: &[f64], sys: &SystemRef) -> Result<(Vec<f64>, Vec<f64>)> {
    let h = step(x)?;
    match sys {
        SystemRef::Line(s) => {
            let d2 = second_derivative(psi, h, EndParity::WALLS);
            let t = d2.iter().map(|d| -0.5 * d / s.mass).collect();
            Ok((t, first_derivative(psi, h, EndParity::WALLS)))
        }
        SystemRef::Radial(s) => {
            // R ~ r^l mirrors with (−1)^l through the origin, u = rR with the
            // opposite sign.
            let even = s.l % 2 == 0;
            let origin = x[0] == 0.0;
            let r_sign = if even { 1.0 } else { -1.0 };
            let r_parity = EndParity { left: if origin { r_sign } else { -1.0 }, right: -1.0 };
            let u_parity = EndParity { left: if origin { -r_sign } else { -1.0 }, right: -1.0 };
            let u: Vec<f64> = x.iter().zip(psi).map(|(r, p)| r * p).collect();
            let u2 = second_derivative(&u, h, u_parity);
            let ll = (s.l * (s.l + 1)) as f64;
            let t = x
                .iter()
                .enumerate()
                .map(|(i, &r)| if r == 0.0 { 0.0 } else { (-0.5 * u2[i] + 0.5 * ll * u[i] / (r * r)) / r })
                .collect();
            Ok((t, first_derivative(psi, h, r_parity)))
        }
    }
}

fn step(x: &[f64]) -> Result<f64> {
    uniform_step(x).ok_or_else(|| ChoError::InvalidInput("states without a closed form need a uniform grid".into()))
}

/// Recomputes (ΔT)² from every other node and flags the state if the two
/// resolutions disagree. Grids whose interval count is not a multiple of four
/// have no Simpson half-grid and are not checked.
fn check_stability(state: &Eigenstate, sys: &SystemRef, t_full: &[f64]) -> Result<()> {
    let x = state.grid.nodes();
    let intervals = x.len() - 1;
    if !intervals.is_multiple_of(4) {
        return Ok(());
    }
    let full = {
        let kinetic = integrate(&mul(&state.values, t_full), &state.grid)?;
        spread(&state.values, t_full, kinetic, &state.grid)?
    };
    let half_x: Vec<f64> = x.iter().step_by(2).copied().collect();
    let half_psi: Vec<f64> = state.values.iter().step_by(2).copied().collect();
    let half_grid = Grid::simpson(x[0], x[intervals], intervals / 2, state.grid.measure())?;
    let (t_half, _) = finite_difference_actions(&half_x, &half_psi, sys)?;
    let kinetic = integrate(&mul(&half_psi, &t_half), &half_grid)?;
    let half = spread(&half_psi, &t_half, kinetic, &half_grid)?;
    let change = (half - full).abs() / full.abs().max(f64::MIN_POSITIVE);
    if change > DIFFERENTIATION_STABILITY {
        return Err(ChoError::DifferentiationNoise(change));
    }
    Ok(())
}

fn mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(a, b)| a * b).collect()
}

fn spread(psi: &[f64], t_psi: &[f64], kinetic: f64, grid: &Grid) -> Result<f64> {
    let g: Vec<f64> = psi
        .iter()
        .zip(t_psi)
        .map(|(p, t)| {
            let d = t - kinetic * p;
            d * d
        })
        .collect();
    integrate(&g, grid)
}
