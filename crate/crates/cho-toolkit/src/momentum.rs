//! Momentum-space wavefunctions.
//!
//! Radial states go through the spherical Fourier transform
//!
//! ψ(p) = ∫ ψ(r) f(r, p)/p dr,  f(r, p) = Σ_k a_k cos(pr)/(p^k r^(k−1)) + Σ_j b_j sin(pr)/(p^j r^(j−1)),
//!
//! where the coefficients are integers over √π. The sum is exactly
//! s_l·r·x·j_l(x)/√π with x = pr and s_l = (−1)^⌈l/2⌉. That form is what gets
//! evaluated, because the explicit sum cancels catastrophically once pr < l.
//! The overall phase (−i)^l is dropped, since only densities are used
//! downstream. With this kernel a complete transform has ∫|ψ(p)|²p²dp = ½, and
//! any shortfall measures the density beyond the end of the p grid.
//!
//! One-dimensional states use the plain Fourier transform with 1/√(2π).

use std::f64::consts::PI;

use crate::error::{ChoError, Result};
use crate::exact::{cho3d_eigenstate, scho_eigenstate, ConfinedSystem1D, ConfinedSystemRadial, Eigenstate, Labels};
use crate::numerics::{
    assoc_laguerre, find_root_bracketed, hermite, integrate, ln_factorial, ln_gamma, spherical_bessel_j, Grid, Measure,
};

/// Largest l the coefficient tables cover.
pub const MAX_KERNEL_L: usize = 9;

/// Transforms fail when more than this much density lies beyond the p grid.
pub const MOMENTUM_TAIL_TOLERANCE: f64 = 1e-7;

/// Quadrature order of each panel in the composite Gauss–Legendre grids.
const PANEL_ORDER: usize = 10;

/// Coefficients of the f(r, p) kernel for one l, stored as the integer
/// numerators of k/√π.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelCoefficients {
    pub l: usize,
    /// (k, numerator of a_k), multiplying cos(pr)/(p^k r^(k−1)).
    pub a: Vec<(usize, f64)>,
    /// (j, numerator of b_j), multiplying sin(pr)/(p^j r^(j−1)).
    pub b: Vec<(usize, f64)>,
}

impl KernelCoefficients {
    /// The published coefficient rows, verbatim.
    ///
    /// Rows l = 4 and l = 7 carry typesetting errors (l = 4: b₂, b₄, a₁, a₃;
    /// l = 7: b₅). Use [`KernelCoefficients::derived`] for computation.
    pub fn printed(l: usize) -> Result<Self> {
        let (a, b): (&[(usize, f64)], &[(usize, f64)]) = match l {
            0 => (&[], &[(0, 1.0)]),
            1 => (&[(0, 1.0)], &[(1, -1.0)]),
            2 => (&[(1, 3.0)], &[(0, 1.0), (2, -3.0)]),
            3 => (&[(0, 1.0), (2, -15.0)], &[(1, -6.0), (3, 15.0)]),
            4 => (&[(1, 30.0), (3, -315.0)], &[(0, 1.0), (2, -105.0), (4, 315.0)]),
            5 => (&[(0, 1.0), (2, -105.0), (4, 945.0)], &[(1, -15.0), (3, 420.0), (5, -945.0)]),
            6 => (&[(1, 21.0), (3, -1260.0), (5, 10395.0)], &[(0, 1.0), (2, -210.0), (4, 4725.0), (6, -10395.0)]),
            7 => (
                &[(0, 1.0), (2, -378.0), (4, 17325.0), (6, -135135.0)],
                &[(1, -28.0), (3, 3150.0), (5, -2370.0), (7, 135135.0)],
            ),
            8 => (
                &[(1, 36.0), (3, -6930.0), (5, 270270.0), (7, -2027025.0)],
                &[(0, 1.0), (2, -630.0), (4, 51975.0), (6, -945945.0), (8, 2027025.0)],
            ),
            9 => (
                &[(0, 1.0), (2, -990.0), (4, 135135.0), (6, -4729725.0), (8, 34459425.0)],
                &[(1, -45.0), (3, 13860.0), (5, -945945.0), (7, 16216200.0), (9, -34459425.0)],
            ),
            _ => return Err(ChoError::KernelOutOfRange(l)),
        };
        Ok(Self { l, a: a.to_vec(), b: b.to_vec() })
    }

    /// Coefficients generated from x·j_l(x) = P_l(1/x) sin x + Q_l(1/x) cos x,
    /// where P and Q obey the Bessel recurrence
    /// P_{l+1} = (2l+1)·t·P_l − P_{l−1} with P₀ = 1, Q₀ = 0, P₁ = t, Q₁ = −1.
    pub fn derived(l: usize) -> Result<Self> {
        if l > MAX_KERNEL_L {
            return Err(ChoError::KernelOutOfRange(l));
        }
        // Polynomials in t as coefficient vectors, lowest power first.
        let step = |cur: &[f64], prev: &[f64], n: usize| -> Vec<f64> {
            let mut next = vec![0.0; cur.len() + 1];
            for (i, c) in cur.iter().enumerate() {
                next[i + 1] += (2 * n + 1) as f64 * c;
            }
            for (i, c) in prev.iter().enumerate() {
                next[i] -= c;
            }
            next
        };
        let (mut p_prev, mut p) = (vec![1.0], vec![0.0, 1.0]);
        let (mut q_prev, mut q) = (vec![0.0], vec![-1.0]);
        if l == 0 {
            (p, q) = (p_prev.clone(), q_prev.clone());
        }
        for n in 1..l {
            let p_next = step(&p, &p_prev, n);
            let q_next = step(&q, &q_prev, n);
            p_prev = std::mem::replace(&mut p, p_next);
            q_prev = std::mem::replace(&mut q, q_next);
        }
        let sign = kernel_sign(l);
        let pick = |poly: &[f64]| -> Vec<(usize, f64)> {
            poly.iter().enumerate().filter(|(_, c)| **c != 0.0).map(|(k, c)| (k, sign * c)).collect()
        };
        Ok(Self { l, a: pick(&q), b: pick(&p) })
    }

    /// f(r, p) from the explicit sum. Accurate only for pr well above l.
    pub fn evaluate(&self, r: f64, p: f64) -> f64 {
        let (s, c) = (p * r).sin_cos();
        let term = |k: usize| 1.0 / (p.powi(k as i32) * r.powi(k as i32 - 1));
        let cos_part: f64 = self.a.iter().map(|&(k, a)| a * term(k)).sum();
        let sin_part: f64 = self.b.iter().map(|&(j, b)| b * term(j)).sum();
        (cos_part * c + sin_part * s) / PI.sqrt()
    }
}

/// s_l = (−1)^⌈l/2⌉, which makes the leading coefficient of every row +1.
fn kernel_sign(l: usize) -> f64 {
    if l.div_ceil(2).is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// f(r, p) for 0 ≤ l ≤ 9, evaluated stably through j_l.
pub fn kernel(l: usize, r: f64, p: f64) -> Result<f64> {
    if l > MAX_KERNEL_L {
        return Err(ChoError::KernelOutOfRange(l));
    }
    let x = p * r;
    Ok(kernel_sign(l) * r * x * spherical_bessel_j(l, x) / PI.sqrt())
}

/// A momentum-space wavefunction, normalized on its grid.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentumState {
    pub labels: Labels,
    /// p nodes: p² measure for radial states, flat and symmetric for 1D.
    pub grid: Grid,
    pub re: Vec<f64>,
    pub im: Vec<f64>,
    /// ∫|ψ(p)|² before normalization (½ for a complete radial transform,
    /// 1 for 1D transforms and analytic states).
    pub raw_norm: f64,
}

impl MomentumState {
    pub fn density(&self) -> Vec<f64> {
        self.re.iter().zip(&self.im).map(|(a, b)| a * a + b * b).collect()
    }

    pub fn norm_squared(&self) -> Result<f64> {
        integrate(&self.density(), &self.grid)
    }

    fn normalized(labels: Labels, grid: Grid, mut re: Vec<f64>, mut im: Vec<f64>) -> Result<Self> {
        let dens: Vec<f64> = re.iter().zip(&im).map(|(a, b)| a * a + b * b).collect();
        let raw_norm = integrate(&dens, &grid)?;
        if !(raw_norm > 0.0) {
            return Err(ChoError::InvalidInput("momentum wavefunction vanishes on the grid".into()));
        }
        let scale = 1.0 / raw_norm.sqrt();
        re.iter_mut().chain(im.iter_mut()).for_each(|v| *v *= scale);
        Ok(Self { labels, grid, re, im, raw_norm })
    }
}

/// Breaks of panels of width at most `width` covering [a, b].
fn panel_breaks(a: f64, b: f64, width: f64, min_panels: usize) -> Vec<f64> {
    let panels = (((b - a) / width).ceil() as usize).max(min_panels);
    (0..=panels).map(|k| a + (b - a) * k as f64 / panels as f64).collect()
}

fn panel_grid(a: f64, b: f64, width: f64, min_panels: usize, measure: Measure) -> Result<Grid> {
    Grid::composite_gauss_legendre(&panel_breaks(a, b, width, min_panels), PANEL_ORDER, measure)
}

/// Panel breaks of the default radial p grid.
///
/// A confined density falls off as p⁻⁶, so the norm beyond P is about
/// u'(r_c)²/(3πP³). With P ≥ 100·√(2E) that stays below 1e-7 for every
/// state; P ≥ 600/r_c and 25√ω cover the deep-box and free limits. Panels
/// are no wider than the finest structure of ψ(p), 1.5·min(√ω, 1/r_c).
fn radial_breaks(sys: &ConfinedSystemRadial, energy: f64) -> Vec<f64> {
    let scale = sys.omega.sqrt();
    let (p_max, feature) = if sys.is_free() {
        (25.0 * scale, scale)
    } else {
        let p_max = (25.0 * scale).max(600.0 / sys.r_c).max(100.0 * (2.0 * energy).sqrt());
        (p_max, scale.min(1.0 / sys.r_c))
    };
    panel_breaks(0.0, p_max, 1.5 * feature, 50)
}

/// Panel breaks of the default 1D p grid, mirror-symmetric with p = 0 on a
/// break. In 1D the density falls off as p⁻⁴ and the tail beyond ±P is about
/// (ψ'(left)² + ψ'(right)²)/(3πP³), so the half-length is
/// max(25√(mω), 600/L, 120·√(2mE)) for a box of half-width L.
fn line_breaks(sys: &ConfinedSystem1D, energy: f64) -> Vec<f64> {
    let scale = (sys.mass * sys.omega).sqrt();
    let (p_max, feature) = if sys.is_free() {
        (25.0 * scale, scale)
    } else {
        let half = 0.5 * sys.width();
        let p_max = (25.0 * scale).max(600.0 / half).max(120.0 * (2.0 * sys.mass * energy).sqrt());
        (p_max, scale.min(1.0 / half))
    };
    let positive = panel_breaks(0.0, p_max, 1.5 * feature, 50);
    positive.iter().rev().map(|p| -p).chain(positive.iter().skip(1).copied()).collect()
}

/// Default radial p grid for a state of energy `energy`.
pub fn radial_p_grid(sys: &ConfinedSystemRadial, energy: f64) -> Result<Grid> {
    Grid::composite_gauss_legendre(&radial_breaks(sys, energy), PANEL_ORDER, Measure::PSquared)
}

/// Default 1D p grid, symmetric about 0.
pub fn line_p_grid(sys: &ConfinedSystem1D, energy: f64) -> Result<Grid> {
    Grid::composite_gauss_legendre(&line_breaks(sys, energy), PANEL_ORDER, Measure::Flat)
}

/// The default radial grid with extra panel breaks at the zeros of ψ(p).
///
/// ρ ln ρ and ρ^λ have a kink wherever ψ crosses zero. Inside a Gauss panel
/// that kink costs ~1e-6 in an entropy; on a break it costs nothing.
pub fn aligned_radial_p_grid(state: &Eigenstate, sys: &ConfinedSystemRadial) -> Result<Grid> {
    let Labels::Radial { l, .. } = state.labels else {
        return Err(ChoError::InvalidInput("aligned_radial_p_grid needs a radial state".into()));
    };
    let breaks = radial_breaks(sys, state.energy);
    let (r, w_psi) = position_quadrature(state, breaks[breaks.len() - 1])?;
    let eval = |p: f64| (radial_transform_at(l, &r, &w_psi, p), 0.0);
    Grid::composite_gauss_legendre(&align_breaks(breaks, eval)?, PANEL_ORDER, Measure::PSquared)
}

/// The default 1D grid with extra panel breaks at the zeros of Re ψ(p) and
/// Im ψ(p); see [`aligned_radial_p_grid`].
pub fn aligned_line_p_grid(state: &Eigenstate, sys: &ConfinedSystem1D) -> Result<Grid> {
    let breaks = line_breaks(sys, state.energy);
    let (x, w_psi) = position_quadrature(state, breaks[breaks.len() - 1])?;
    let eval = |p: f64| line_transform_at(&x, &w_psi, p);
    Grid::composite_gauss_legendre(&align_breaks(breaks, eval)?, PANEL_ORDER, Measure::Flat)
}

/// Refinement levels of the geometric panels around each zero of ψ(p).
const ZERO_GRADING: i32 = 10;

/// Adds the zeros of each component of `eval` as breaks, with panels shrinking
/// geometrically towards each zero. A Gauss panel that merely ends at a zero
/// still sees ρ ln ρ ~ p² ln p² and loses about 1e-7 of the local density
/// scale; halving the panel width ten times pushes that below round-off. Tail
/// zeros where ρ is tiny only become plain breaks. A component that is round-off
/// everywhere (the imaginary part of a state with definite parity) is ignored.
fn align_breaks(breaks: Vec<f64>, eval: impl Fn(f64) -> (f64, f64)) -> Result<Vec<f64>> {
    let values: Vec<(f64, f64)> = breaks.iter().map(|&p| eval(p)).collect();
    let peak_re = values.iter().fold(0.0f64, |m, v| m.max(v.0.abs()));
    let peak_im = values.iter().fold(0.0f64, |m, v| m.max(v.1.abs()));
    let peak = peak_re.max(peak_im);
    let width = breaks[1] - breaks[0];
    let (lo, hi) = (breaks[0], breaks[breaks.len() - 1]);
    let mut zeros = Vec::new();
    for (component, component_peak) in [(0, peak_re), (1, peak_im)] {
        if component_peak <= 1e-8 * peak {
            continue;
        }
        let pick = |v: (f64, f64)| if component == 0 { v.0 } else { v.1 };
        let tiny = 1e-12 * component_peak;
        for k in 0..breaks.len() {
            let here = pick(values[k]);
            if here.abs() <= tiny {
                // A zero sitting on a break, such as p = 0 for an odd state.
                if k > 0 && k + 1 < breaks.len() && pick(values[k - 1]) * pick(values[k + 1]) < 0.0 {
                    let local = pick(values[k - 1]).abs().max(pick(values[k + 1]).abs());
                    zeros.push((breaks[k], local));
                }
                continue;
            }
            if k + 1 < breaks.len() {
                let next = pick(values[k + 1]);
                if here * next < 0.0 && next.abs() > tiny {
                    let (a, b) = (breaks[k], breaks[k + 1]);
                    let root = find_root_bracketed(|p| pick(eval(p)), a, b, 1e-13 * (b - a))?;
                    zeros.push((root, here.abs().max(next.abs())));
                }
            }
        }
    }
    let mut all = breaks;
    for (z, local) in zeros {
        all.push(z);
        // Far in the tail ρ is too small for the kink to matter.
        let levels = if local * local >= 1e-6 * peak * peak { ZERO_GRADING } else { 0 };
        for level in 1..=levels {
            let offset = width * 0.5f64.powi(level);
            all.extend([z - offset, z + offset].into_iter().filter(|p| (lo..=hi).contains(p)));
        }
    }
    all.sort_by(f64::total_cmp);
    let min_gap = 1e-3 * width * 0.5f64.powi(ZERO_GRADING);
    all.dedup_by(|a, b| (*a - *b).abs() < min_gap);
    Ok(all)
}

fn radial_transform_at(l: usize, r: &[f64], w_psi: &[f64], p: f64) -> f64 {
    let pref = kernel_sign(l) / PI.sqrt();
    pref * r.iter().zip(w_psi).map(|(&r, &w)| w * spherical_bessel_j(l, p * r)).sum::<f64>()
}

fn line_transform_at(x: &[f64], w_psi: &[f64], p: f64) -> (f64, f64) {
    let pref = 1.0 / (2.0 * PI).sqrt();
    let (mut c, mut s) = (0.0, 0.0);
    for (&x, &w) in x.iter().zip(w_psi) {
        let (sn, cs) = (p * x).sin_cos();
        c += w * cs;
        s += w * sn;
    }
    (pref * c, -pref * s)
}

/// Position-space nodes and weights·ψ for the transform integrals. States
/// with a closed form are re-sampled on panels fine enough for the highest
/// p; sampled-only states use their own grid.
fn position_quadrature(state: &Eigenstate, p_max: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    let nodes = state.grid.nodes();
    let (a, b) = (nodes[0], nodes[nodes.len() - 1]);
    match &state.analytic {
        Some(wf) => {
            let grid = panel_grid(a, b, 4.0 / p_max, 50, state.grid.measure())?;
            let weighted = (0..grid.len())
                .map(|i| Ok(grid.full_weight(i) * wf.value(grid.nodes()[i])?))
                .collect::<Result<Vec<f64>>>()?;
            Ok((grid.nodes().to_vec(), weighted))
        }
        None => Ok((nodes.to_vec(), (0..nodes.len()).map(|i| state.grid.full_weight(i) * state.values[i]).collect())),
    }
}

fn check_tail(missing: f64) -> Result<()> {
    if missing.abs() > MOMENTUM_TAIL_TOLERANCE {
        return Err(ChoError::MomentumTail { tail: missing.abs() });
    }
    Ok(())
}

/// Transforms a radial state onto `p_grid` (which must use the p² measure).
pub fn to_momentum(state: &Eigenstate, p_grid: &Grid) -> Result<MomentumState> {
    let Labels::Radial { l, .. } = state.labels else {
        return Err(ChoError::InvalidInput("to_momentum needs a radial state".into()));
    };
    if l > MAX_KERNEL_L {
        return Err(ChoError::KernelOutOfRange(l));
    }
    if p_grid.measure() != Measure::PSquared {
        return Err(ChoError::InvalidInput("radial p grids carry the p² measure".into()));
    }
    let p_nodes = p_grid.nodes();
    let p_max = p_nodes[p_nodes.len() - 1];
    let (r, w_psi) = position_quadrature(state, p_max)?;
    // ∫ψ(r) f(r,p)/p dr = s_l/√π ∫ψ(r) j_l(pr) r² dr; the r² sits in the weights.
    let re: Vec<f64> = p_nodes.iter().map(|&p| radial_transform_at(l, &r, &w_psi, p)).collect();
    let im = vec![0.0; re.len()];
    let st = MomentumState::normalized(state.labels, p_grid.clone(), re, im)?;
    check_tail(1.0 - 2.0 * st.raw_norm)?;
    Ok(st)
}

/// Fourier-transforms a 1D state onto `p_grid` (flat measure, both signs of p).
pub fn to_momentum_1d(state: &Eigenstate, p_grid: &Grid) -> Result<MomentumState> {
    if !matches!(state.labels, Labels::OneD { .. }) {
        return Err(ChoError::InvalidInput("to_momentum_1d needs a 1D state".into()));
    }
    if p_grid.measure() != Measure::Flat {
        return Err(ChoError::InvalidInput("1D p grids carry the flat measure".into()));
    }
    let p_nodes = p_grid.nodes();
    let p_max = p_nodes.iter().fold(0.0f64, |m, p| m.max(p.abs()));
    let (x, w_psi) = position_quadrature(state, p_max)?;
    let (re, im) = p_nodes.iter().map(|&p| line_transform_at(&x, &w_psi, p)).unzip();
    let st = MomentumState::normalized(state.labels, p_grid.clone(), re, im)?;
    check_tail(1.0 - st.raw_norm)?;
    Ok(st)
}

/// Free 3D oscillator in momentum space:
/// ψ(p) = √(2 n_r!/(Γ(n_r+l+3/2) ω^(l+3/2))) p^l e^(−p²/2ω) L_{n_r}^(l+1/2)(p²/ω).
pub fn free_momentum_state(n_r: usize, l: usize, omega: f64, p_grid: &Grid) -> Result<MomentumState> {
    if !(omega > 0.0) {
        return Err(ChoError::InvalidInput(format!("omega must be positive, got {omega}")));
    }
    let lf = l as f64;
    let ln_norm = 0.5 * (2f64.ln() + ln_factorial(n_r) - ln_gamma(n_r as f64 + lf + 1.5) - (lf + 1.5) * omega.ln());
    let re = p_grid
        .nodes()
        .iter()
        .map(|&p| {
            let u = p * p / omega;
            ln_norm.exp() * p.powi(l as i32) * (-0.5 * u).exp() * assoc_laguerre(n_r, lf + 0.5, u)
        })
        .collect::<Vec<_>>();
    let im = vec![0.0; re.len()];
    MomentumState::normalized(Labels::Radial { n_r, l, m: 0 }, p_grid.clone(), re, im)
}

/// Free 1D oscillator (unit mass) in momentum space:
/// ψ_n(p) = (πω)^(−1/4) (2^n n!)^(−1/2) H_n(p/√ω) e^(−p²/2ω), phase (−i)^n dropped.
pub fn free_momentum_state_1d(n: usize, omega: f64, p_grid: &Grid) -> Result<MomentumState> {
    if !(omega > 0.0) {
        return Err(ChoError::InvalidInput(format!("omega must be positive, got {omega}")));
    }
    let ln_norm = -0.25 * (PI * omega).ln() - 0.5 * (n as f64 * 2f64.ln() + ln_factorial(n));
    let re = p_grid
        .nodes()
        .iter()
        .map(|&p| {
            let y = p / omega.sqrt();
            ln_norm.exp() * hermite(n, y) * (-0.5 * y * y).exp()
        })
        .collect::<Vec<_>>();
    let im = vec![0.0; re.len()];
    MomentumState::normalized(Labels::OneD { n }, p_grid.clone(), re, im)
}

/// The free 3D state (n_r, l) as a real eigenstate in p space.
///
/// ψ(p) has the same form as ψ(r) with ω replaced by 1/ω, so it carries a
/// closed form and can be differentiated exactly. The grid uses the p² measure
/// and `energy` is the position-space energy (2n_r + l + 3/2)ω.
pub fn free_momentum_eigenstate(n_r: usize, l: usize, omega: f64) -> Result<Eigenstate> {
    let sys = ConfinedSystemRadial::free(1.0 / omega, l)?;
    let mut st = cho3d_eigenstate(&sys, n_r)?;
    st.grid = st.grid.with_measure(Measure::PSquared);
    st.energy = (2.0 * n_r as f64 + l as f64 + 1.5) * omega;
    Ok(st)
}

/// The free 1D state n of `sys` as a real eigenstate in p space, where the
/// oscillator length is 1/√(mω) instead of √(mω).
pub fn free_momentum_eigenstate_1d(sys: &ConfinedSystem1D, n: usize) -> Result<Eigenstate> {
    if !sys.is_free() || sys.d_m != 0.0 {
        return Err(ChoError::InvalidInput("closed-form momentum states need a centered free oscillator".into()));
    }
    let mut st = scho_eigenstate(&ConfinedSystem1D::free(1.0 / (sys.mass * sys.omega))?, n)?;
    st.energy = (n as f64 + 0.5) * sys.omega;
    Ok(st)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sign_pattern() {
        let s: Vec<f64> = (0..6).map(kernel_sign).collect();
        assert_eq!(s, vec![1.0, -1.0, -1.0, 1.0, 1.0, -1.0]);
    }

    #[test]
    fn s_wave_kernel() {
        let (r, p) = (0.7, 2.3);
        let f = kernel(0, r, p).unwrap();
        assert!((f - r * (p * r).sin() / PI.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn p_wave_kernel_vanishes_at_small_argument() {
        assert!(kernel(1, 1e-3, 1e-3).unwrap().abs() < 1e-9);
    }

    #[test]
    fn d_wave_kernel_at_quarter_period() {
        let p = PI / 2.0;
        let expect = (1.0 - 3.0 / (p * p)) / PI.sqrt();
        assert!((kernel(2, 1.0, p).unwrap() - expect).abs() < 1e-14);
        assert!((KernelCoefficients::printed(2).unwrap().evaluate(1.0, p) - expect).abs() < 1e-14);
    }

    #[test]
    fn out_of_range() {
        assert_eq!(kernel(10, 1.0, 1.0), Err(ChoError::KernelOutOfRange(10)));
        assert!(KernelCoefficients::printed(10).is_err());
        assert!(KernelCoefficients::derived(10).is_err());
    }
}
