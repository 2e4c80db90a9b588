//! Exact eigenstates of the symmetrically confined 1D oscillator and the
//! radially confined 3D oscillator.
//!
//! Both problems reduce to the same template
//!
//! ψ(x) = N · x^s · M(a, b, κx²) · e^{−κx²/2},   κ = mω,
//!
//! and the energy enters only through `a`. A hard wall at x_c quantizes the
//! energy through M(a(E), b, κx_c²) = 0. The free oscillator is the special
//! case where `a` is a non-positive integer and M is a polynomial.

use std::f64::consts::{PI, SQRT_2};

use crate::error::{ChoError, Result};
use crate::numerics::{
    find_root_bracketed, integrate, kummer_1f1, kummer_1f1_with_derivatives, Grid, Measure, SeriesTruncation,
};

/// Interval count of the Simpson grids attached to exact states.
pub const DEFAULT_GRID_INTERVALS: usize = 4000;

/// Extra reach, in units of the oscillator length, beyond the classical
/// turning point when sampling a free state. e^{−8²} keeps the dropped density
/// far below double precision.
const FREE_TAIL_LENGTHS: f64 = 8.0;

// ---------------------------------------------------------------------------
// System descriptors
// ---------------------------------------------------------------------------

/// A 1D oscillator ½mω²(x − d_m)² between two hard walls.
///
/// Infinite walls describe the free oscillator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConfinedSystem1D {
    pub omega: f64,
    pub mass: f64,
    pub d_m: f64,
    pub wall_left: f64,
    pub wall_right: f64,
}

impl ConfinedSystem1D {
    pub fn new(omega: f64, d_m: f64, wall_left: f64, wall_right: f64) -> Result<Self> {
        let sys = Self { omega, mass: 1.0, d_m, wall_left, wall_right };
        sys.validate()?;
        Ok(sys)
    }

    /// Symmetric box [−x_c, x_c] around the potential minimum.
    pub fn scho(omega: f64, x_c: f64) -> Result<Self> {
        Self::new(omega, 0.0, -x_c, x_c)
    }

    /// Box [−x_c, x_c] with the potential minimum shifted to d_m.
    pub fn acho(omega: f64, d_m: f64, x_c: f64) -> Result<Self> {
        Self::new(omega, d_m, -x_c, x_c)
    }

    pub fn free(omega: f64) -> Result<Self> {
        Self::new(omega, 0.0, f64::NEG_INFINITY, f64::INFINITY)
    }

    pub fn with_mass(mut self, mass: f64) -> Result<Self> {
        self.mass = mass;
        self.validate()?;
        Ok(self)
    }

    fn validate(&self) -> Result<()> {
        if !(self.omega > 0.0 && self.omega.is_finite()) {
            return Err(ChoError::InvalidInput(format!("omega must be positive, got {}", self.omega)));
        }
        if !(self.mass > 0.0 && self.mass.is_finite()) {
            return Err(ChoError::InvalidInput(format!("mass must be positive, got {}", self.mass)));
        }
        if !self.d_m.is_finite() {
            return Err(ChoError::InvalidInput("d_m must be finite".into()));
        }
        if !(self.wall_left < self.wall_right) {
            return Err(ChoError::InvalidInput(format!(
                "walls must satisfy left < right, got [{}, {}]",
                self.wall_left, self.wall_right
            )));
        }
        Ok(())
    }

    /// α = ω/(2√2), the frequency parameter of the 4α²x² form of the potential.
    pub fn alpha(&self) -> f64 {
        self.omega / (2.0 * SQRT_2)
    }

    pub fn is_free(&self) -> bool {
        self.wall_left.is_infinite() && self.wall_right.is_infinite()
    }

    pub fn is_symmetric(&self) -> bool {
        self.d_m == 0.0 && self.wall_left == -self.wall_right
    }

    pub fn width(&self) -> f64 {
        self.wall_right - self.wall_left
    }

    pub fn potential(&self, x: f64) -> f64 {
        let dx = x - self.d_m;
        0.5 * self.mass * self.omega * self.omega * dx * dx
    }

    /// n-th level of the empty box of the same width.
    pub fn box_energy(&self, n: usize) -> f64 {
        let k = (n + 1) as f64;
        k * k * PI * PI / (2.0 * self.mass * self.width().powi(2))
    }

    /// Sampling interval for state `n`: the box, or a window wide enough
    /// to hold the free state's density.
    pub fn sampling_window(&self, n: usize) -> (f64, f64) {
        if self.is_free() {
            let len = 1.0 / (self.mass * self.omega).sqrt();
            let reach = ((2 * n + 1) as f64).sqrt() + FREE_TAIL_LENGTHS;
            (self.d_m - reach * len, self.d_m + reach * len)
        } else {
            (self.wall_left, self.wall_right)
        }
    }
}

/// A radial oscillator ½ω²r² in D dimensions inside a sphere of radius r_c.
///
/// `r_c = ∞` is the free oscillator. The solvers work in D = 3; other
/// dimensions enter through the degeneracy algebra.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConfinedSystemRadial {
    pub omega: f64,
    pub l: usize,
    pub dim: usize,
    pub r_c: f64,
}

impl ConfinedSystemRadial {
    pub fn new(omega: f64, l: usize, r_c: f64) -> Result<Self> {
        Self::with_dim(omega, l, 3, r_c)
    }

    pub fn free(omega: f64, l: usize) -> Result<Self> {
        Self::new(omega, l, f64::INFINITY)
    }

    pub fn with_dim(omega: f64, l: usize, dim: usize, r_c: f64) -> Result<Self> {
        if !(omega > 0.0 && omega.is_finite()) {
            return Err(ChoError::InvalidInput(format!("omega must be positive, got {omega}")));
        }
        if !(r_c > 0.0) {
            return Err(ChoError::InvalidInput(format!("r_c must be positive, got {r_c}")));
        }
        if dim == 0 {
            return Err(ChoError::InvalidInput("dimension must be at least 1".into()));
        }
        Ok(Self { omega, l, dim, r_c })
    }

    pub fn alpha(&self) -> f64 {
        self.omega / (2.0 * SQRT_2)
    }

    pub fn is_free(&self) -> bool {
        self.r_c.is_infinite()
    }

    pub fn potential(&self, r: f64) -> f64 {
        0.5 * self.omega * self.omega * r * r
    }

    /// Outer edge of the sampling interval for radial state `n_r`.
    pub fn sampling_radius(&self, n_r: usize) -> f64 {
        if self.is_free() {
            let turning = ((4 * n_r + 2 * self.l + self.dim) as f64).sqrt();
            (turning + FREE_TAIL_LENGTHS) / self.omega.sqrt()
        } else {
            self.r_c
        }
    }

    /// b = l + D/2, the second Kummer parameter.
    fn kummer_b(&self) -> f64 {
        self.l as f64 + 0.5 * self.dim as f64
    }
}

// ---------------------------------------------------------------------------
// States
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(n: usize) -> Self {
        if n.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Labels {
    OneD { n: usize },
    Radial { n_r: usize, l: usize, m: i32 },
}

impl Labels {
    /// The node count a state with these labels must have.
    pub fn expected_nodes(&self) -> usize {
        match *self {
            Labels::OneD { n } => n,
            Labels::Radial { n_r, .. } => n_r,
        }
    }

    pub fn l(&self) -> usize {
        match *self {
            Labels::OneD { .. } => 0,
            Labels::Radial { l, .. } => l,
        }
    }

    pub fn m(&self) -> i32 {
        match *self {
            Labels::OneD { .. } => 0,
            Labels::Radial { m, .. } => m,
        }
    }
}

/// Closed-form representation N x^s M(a, b, κx²) e^{−κx²/2}.
///
/// Carries enough to evaluate ψ, ψ′ and the kinetic action Tψ without
/// numerical differentiation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KummerWavefunction {
    pub power: u32,
    pub a: f64,
    pub b: f64,
    pub kappa: f64,
    pub mass: f64,
    pub norm: f64,
}

impl KummerWavefunction {
    fn parts(&self, x: f64) -> Result<(f64, f64, f64)> {
        kummer_1f1_with_derivatives(self.a, self.b, self.kappa * x * x, SeriesTruncation::default())
    }

    pub fn value(&self, x: f64) -> Result<f64> {
        let u = self.kappa * x * x;
        let f = kummer_1f1(self.a, self.b, u, SeriesTruncation::default())?;
        Ok(self.norm * x.powi(self.power as i32) * f * (-0.5 * u).exp())
    }

    /// dψ/dx.
    pub fn derivative(&self, x: f64) -> Result<f64> {
        let u = self.kappa * x * x;
        let (f, f1, _) = self.parts(x)?;
        let s = self.power as i32;
        let a_term = f1 - 0.5 * f;
        let lead = if s == 0 { 0.0 } else { s as f64 * x.powi(s - 1) * f };
        Ok(self.norm * (-0.5 * u).exp() * (lead + 2.0 * self.kappa * x.powi(s + 1) * a_term))
    }

    /// Kinetic operator applied to ψ. For radial states this is the full
    /// radial kinetic operator including the centrifugal term, which cancels
    /// against the x^l prefactor:
    ///
    /// Tψ = −(κ/m) N x^s e^{−u/2} [2b·(F′ − F/2) + 2u·(F″ − F′ + F/4)].
    pub fn kinetic(&self, x: f64) -> Result<f64> {
        let u = self.kappa * x * x;
        let (f, f1, f2) = self.parts(x)?;
        let a_term = f1 - 0.5 * f;
        let b_term = f2 - f1 + 0.25 * f;
        Ok(-(self.kappa / self.mass)
            * self.norm
            * x.powi(self.power as i32)
            * (-0.5 * u).exp()
            * (2.0 * self.b * a_term + 2.0 * u * b_term))
    }
}

/// A normalized eigenstate sampled on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Eigenstate {
    pub labels: Labels,
    pub energy: f64,
    pub grid: Grid,
    pub values: Vec<f64>,
    pub parity: Option<Parity>,
    /// Present for states built from the Kummer closed form.
    pub analytic: Option<KummerWavefunction>,
}

impl Eigenstate {
    /// Normalizes `values` under the grid measure and fixes the overall sign
    /// so the first lobe away from the left boundary is positive.
    pub fn from_samples(
        labels: Labels,
        energy: f64,
        grid: Grid,
        mut values: Vec<f64>,
        parity: Option<Parity>,
    ) -> Result<Self> {
        let dens: Vec<f64> = values.iter().map(|v| v * v).collect();
        let norm2 = integrate(&dens, &grid)?;
        if !(norm2 > 0.0) {
            return Err(ChoError::InvalidInput("wavefunction is identically zero".into()));
        }
        let peak = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let first = values.iter().copied().find(|v| v.abs() > 1e-6 * peak).unwrap_or(1.0);
        let scale = first.signum() / norm2.sqrt();
        values.iter_mut().for_each(|v| *v *= scale);
        Ok(Self { labels, energy, grid, values, parity, analytic: None })
    }

    pub fn norm_squared(&self) -> f64 {
        let dens: Vec<f64> = self.values.iter().map(|v| v * v).collect();
        self.grid.sum(&dens)
    }

    /// ⟨self|other⟩ on a shared grid.
    pub fn overlap(&self, other: &Eigenstate) -> Result<f64> {
        if self.grid != other.grid {
            return Err(ChoError::InvalidInput("overlap needs states on the same grid".into()));
        }
        let prod: Vec<f64> = self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect();
        integrate(&prod, &self.grid)
    }

    /// Sign changes strictly inside the sampling interval. Samples below
    /// 1e-9 of the peak amplitude are treated as zero so that round-off near
    /// the walls does not register as a node.
    pub fn node_count(&self) -> usize {
        let peak = self.values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let cut = 1e-9 * peak;
        let mut last = 0.0f64;
        let mut nodes = 0;
        let inner = &self.values[1..self.values.len().saturating_sub(1)];
        for &v in inner {
            if v.abs() <= cut {
                continue;
            }
            if last != 0.0 && v.signum() != last.signum() {
                nodes += 1;
            }
            last = v;
        }
        nodes
    }

    /// Same state with magnetic quantum number m (radial states only).
    pub fn with_m(mut self, m: i32) -> Result<Self> {
        match &mut self.labels {
            Labels::Radial { l, m: slot, .. } => {
                if m.unsigned_abs() as usize > *l {
                    return Err(ChoError::InvalidInput(format!("|m| = {} exceeds l = {l}", m.abs())));
                }
                *slot = m;
                Ok(self)
            }
            Labels::OneD { .. } => Err(ChoError::InvalidInput("1D states carry no m".into())),
        }
    }
}

// ---------------------------------------------------------------------------
// Energy searches
// ---------------------------------------------------------------------------

/// Finds the `index`-th (0-based) sign change of `f` above `start`, scanning
/// with the given step and refining with Brent's method.
fn scan_for_root<F>(f: F, start: f64, step: f64, limit: f64, index: usize) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let mut lo = start;
    let mut f_lo = f(lo)?;
    let mut seen = 0;
    while lo < limit {
        let hi = lo + step;
        let f_hi = f(hi)?;
        if f_lo == 0.0 || f_lo * f_hi < 0.0 {
            if seen == index {
                if f_lo == 0.0 {
                    return Ok(lo);
                }
                let mut failure = None;
                let root = find_root_bracketed(
                    |e| match f(e) {
                        Ok(v) => v,
                        Err(err) => {
                            failure.get_or_insert(err);
                            f64::NAN
                        }
                    },
                    lo,
                    hi,
                    4.0 * f64::EPSILON * hi,
                );
                if let Some(err) = failure {
                    return Err(err);
                }
                return root;
            }
            seen += 1;
        }
        lo = hi;
        f_lo = f_hi;
    }
    Err(ChoError::RootScanExhausted { state: index, limit })
}

/// Scans with progressively finer steps until the state built from the root
/// has the expected node count.
fn energy_with_node_check<F, B>(
    boundary: F,
    build: B,
    start: f64,
    coarse_step: f64,
    limit: f64,
    root_index: usize,
    state: usize,
    expected_nodes: usize,
) -> Result<Eigenstate>
where
    F: Fn(f64) -> Result<f64>,
    B: Fn(f64) -> Result<Eigenstate>,
{
    let mut step = coarse_step;
    let mut last_found = 0;
    for _ in 0..4 {
        let energy = scan_for_root(&boundary, start, step, limit, root_index)?;
        let st = build(energy)?;
        last_found = st.node_count();
        if last_found == expected_nodes {
            return Ok(st);
        }
        step /= 8.0;
    }
    Err(ChoError::NodeCountMismatch { state, expected: expected_nodes, found: last_found })
}

fn sample_kummer_state(
    wf: KummerWavefunction,
    grid: Grid,
    labels: Labels,
    energy: f64,
    parity: Option<Parity>,
) -> Result<Eigenstate> {
    let raw: Vec<f64> = grid.nodes().iter().map(|&x| wf.value(x)).collect::<Result<_>>()?;
    let dens: Vec<f64> = raw.iter().map(|v| v * v).collect();
    let norm2 = integrate(&dens, &grid)?;
    let scale = 1.0 / norm2.sqrt();
    let wf = KummerWavefunction { norm: wf.norm * scale, ..wf };
    Ok(Eigenstate {
        labels,
        energy,
        grid,
        values: raw.into_iter().map(|v| v * scale).collect(),
        parity,
        analytic: Some(wf),
    })
}

fn require_scho(sys: &ConfinedSystem1D) -> Result<()> {
    if !sys.is_symmetric() {
        return Err(ChoError::InvalidInput("exact 1D solutions need d_m = 0 and symmetric walls".into()));
    }
    Ok(())
}

/// Kummer parameters (power, a, b) of a 1D state with the given parity.
fn scho_template(parity: Parity, energy: f64, omega: f64) -> (u32, f64, f64) {
    match parity {
        Parity::Even => (0, 0.25 - energy / (2.0 * omega), 0.5),
        Parity::Odd => (1, 0.75 - energy / (2.0 * omega), 1.5),
    }
}

fn indistinguishable(energy: f64, free_energy: f64) -> bool {
    (energy - free_energy).abs() <= 8.0 * f64::EPSILON * free_energy
}

/// Exact n-th eigenstate of the symmetrically confined 1D oscillator.
///
/// Even and odd states come from separate boundary functions; state n is the
/// (n/2)-th root of the one matching its parity.
pub fn scho_eigenstate(sys: &ConfinedSystem1D, n: usize) -> Result<Eigenstate> {
    require_scho(sys)?;
    let parity = Parity::of(n);
    let kappa = sys.mass * sys.omega;
    let (lo, hi) = sys.sampling_window(n);
    let grid = Grid::simpson(lo, hi, DEFAULT_GRID_INTERVALS, Measure::Flat)?;
    let labels = Labels::OneD { n };
    let build = |energy: f64| {
        let (power, a, b) = scho_template(parity, energy, sys.omega);
        let free_energy = (n as f64 + 0.5) * sys.omega;
        let a = if sys.is_free() || indistinguishable(energy, free_energy) { -((n / 2) as f64) } else { a };
        let wf = KummerWavefunction { power, a, b, kappa, mass: sys.mass, norm: 1.0 };
        sample_kummer_state(wf, grid.clone(), labels, energy, Some(parity))
    };

    if sys.is_free() {
        return build((n as f64 + 0.5) * sys.omega);
    }

    let y_c = kappa * sys.wall_right * sys.wall_right;
    let boundary = |e: f64| {
        let (_, a, b) = scho_template(parity, e, sys.omega);
        kummer_1f1(a, b, y_c, SeriesTruncation::default())
    };
    let lowest = parity as usize;
    let start = 0.999 * sys.box_energy(lowest).max((lowest as f64 + 0.5) * sys.omega);
    let step = 0.2 * sys.omega.max(sys.box_energy(0));
    let v_max = sys.potential(sys.wall_right);
    let limit = sys.box_energy(n) + v_max + 10.0 * sys.omega;
    energy_with_node_check(boundary, build, start, step, limit, n / 2, n, n)
}

/// The lowest `count` exact 1D energies.
pub fn scho_energies(sys: &ConfinedSystem1D, count: usize) -> Result<Vec<f64>> {
    (0..count).map(|n| scho_eigenstate(sys, n).map(|s| s.energy)).collect()
}

/// Energy of radial state (n_r, l) in D dimensions.
pub fn radial_energy(sys: &ConfinedSystemRadial, n_r: usize) -> Result<f64> {
    if sys.is_free() {
        return Ok((2.0 * n_r as f64 + sys.l as f64 + 0.5 * sys.dim as f64) * sys.omega);
    }
    let b = sys.kummer_b();
    let y_c = sys.omega * sys.r_c * sys.r_c;
    let boundary = |e: f64| kummer_1f1(0.5 * (b - e / sys.omega), b, y_c, SeriesTruncation::default());
    let box_unit = PI * PI / (2.0 * sys.r_c * sys.r_c);
    let start = 0.999
        * box_unit.max(b * sys.omega).max(
            // first zero of the Bessel function of order b − 1 exceeds b − 1
            (b - 1.0).max(0.0).powi(2) / (2.0 * sys.r_c * sys.r_c),
        );
    let step = 0.2 * sys.omega.max(box_unit);
    let limit = box_unit * ((n_r + 1) as f64 + 0.5 * b).powi(2) * 4.0 + sys.potential(sys.r_c) + 10.0 * sys.omega;
    scan_for_root(boundary, start, step, limit, n_r)
}

/// Exact radial eigenstate R_{n_r,l}(r) of the 3D oscillator, normalized
/// with the r² measure.
pub fn cho3d_eigenstate(sys: &ConfinedSystemRadial, n_r: usize) -> Result<Eigenstate> {
    if sys.dim != 3 {
        return Err(ChoError::InvalidInput(format!("radial eigenstates are built in D = 3, got D = {}", sys.dim)));
    }
    let b = sys.kummer_b();
    let grid = Grid::simpson(0.0, sys.sampling_radius(n_r), DEFAULT_GRID_INTERVALS, Measure::RSquared)?;
    let labels = Labels::Radial { n_r, l: sys.l, m: 0 };
    let free_energy = (2.0 * n_r as f64 + b) * sys.omega;
    let build = |energy: f64| {
        // In a wide sphere the root sits within round-off of the free level.
        // The rounded a then carries a huge e^y tail in 1F1 that fakes a node
        // near the wall, while the polynomial is exact to double precision.
        let a = if sys.is_free() || indistinguishable(energy, free_energy) {
            -(n_r as f64)
        } else {
            0.5 * (b - energy / sys.omega)
        };
        let wf = KummerWavefunction { power: sys.l as u32, a, b, kappa: sys.omega, mass: 1.0, norm: 1.0 };
        sample_kummer_state(wf, grid.clone(), labels, energy, None)
    };
    let mut energy = radial_energy(sys, n_r)?;
    let st = build(energy)?;
    if st.node_count() == n_r {
        return Ok(st);
    }
    // A too-coarse scan can skip a pair of roots; rescan finely.
    let y_c = sys.omega * sys.r_c * sys.r_c;
    let boundary = |e: f64| kummer_1f1(0.5 * (b - e / sys.omega), b, y_c, SeriesTruncation::default());
    let box_unit = PI * PI / (2.0 * sys.r_c * sys.r_c);
    let step = 0.2 * sys.omega.max(box_unit) / 8.0;
    let start = 0.999 * box_unit.max(b * sys.omega);
    let limit = 4.0 * energy + 10.0 * sys.omega;
    energy = scan_for_root(boundary, start, step, limit, n_r)?;
    let st = build(energy)?;
    if st.node_count() != n_r {
        return Err(ChoError::NodeCountMismatch { state: n_r, expected: n_r, found: st.node_count() });
    }
    Ok(st)
}

/// Particle-in-a-spherical-box energy Z²/(2r_c²), Z the (n_r+1)-th zero of j_l.
pub fn pisb_energy(l: usize, n_r: usize, r_c: f64) -> Result<f64> {
    if !(r_c > 0.0 && r_c.is_finite()) {
        return Err(ChoError::InvalidInput(format!("r_c must be positive and finite, got {r_c}")));
    }
    let z = crate::numerics::spherical_bessel_zero(l, n_r + 1)?;
    Ok(z * z / (2.0 * r_c * r_c))
}

// ---------------------------------------------------------------------------
// Degeneracies
// ---------------------------------------------------------------------------

/// A set of states sharing one energy at one box size.
///
/// Members are (n_r, l, D). One-dimensional hits use (n, 0, 1).
#[derive(Debug, Clone, PartialEq)]
pub struct DegeneracyHit {
    pub energy: f64,
    pub members: Vec<(usize, usize, usize)>,
    pub boundary: f64,
}

/// Positive roots of the polynomial M(−t, b, y), ascending.
fn kummer_polynomial_roots(t: usize, b: f64) -> Result<Vec<f64>> {
    let poly = |y: f64| kummer_1f1(-(t as f64), b, y, SeriesTruncation::default());
    // All roots are zeros of a Laguerre polynomial L_t^{b−1}, which lie below
    // 4t + 2b + 2.
    let upper = 4.0 * t as f64 + 2.0 * b + 2.0;
    let steps = 400 * t.max(1);
    let h = upper / steps as f64;
    let mut roots = Vec::with_capacity(t);
    let mut lo = 0.0;
    let mut f_lo = poly(lo)?;
    for i in 1..=steps {
        let hi = h * i as f64;
        let f_hi = poly(hi)?;
        if f_hi == 0.0 {
            roots.push(hi);
        } else if f_lo * f_hi < 0.0 {
            roots.push(find_root_bracketed(|y| poly(y).unwrap_or(f64::NAN), lo, hi, 1e-15)?);
        }
        lo = hi;
        f_lo = f_hi;
    }
    if roots.len() != t {
        return Err(ChoError::RootScanExhausted { state: t, limit: upper });
    }
    Ok(roots)
}

/// Box sizes at which the even-parity series terminates.
///
/// Truncating after k terms (a = −(k−1)) fixes E = √2α(4k − 3), and each
/// positive root y_j of the resulting polynomial gives a box x_c = √(y_j/ω)
/// that hosts an eigenstate of exactly that energy. The j-th smallest root
/// (counting from 1) hosts state n = 2(j − 1).
pub fn find_incidental_degeneracies_1d(alpha: f64, max_terms: usize) -> Result<Vec<DegeneracyHit>> {
    if !(2..=8).contains(&max_terms) {
        return Err(ChoError::InvalidInput(format!("max_terms must lie in [2, 8], got {max_terms}")));
    }
    if !(alpha > 0.0) {
        return Err(ChoError::InvalidInput(format!("alpha must be positive, got {alpha}")));
    }
    let omega = 2.0 * SQRT_2 * alpha;
    let mut hits = Vec::new();
    for k in 2..=max_terms {
        let energy = SQRT_2 * alpha * (4 * k - 3) as f64;
        for (j, y) in kummer_polynomial_roots(k - 1, 0.5)?.into_iter().enumerate() {
            hits.push(DegeneracyHit { energy, members: vec![(2 * j, 0, 1)], boundary: (y / omega).sqrt() });
        }
    }
    Ok(hits)
}

/// Inter-dimensional partners of (n_r, l, D) under (l, D) → (l ± j, D ∓ 2j).
///
/// The series for state n_r terminates after n_r + 1 Pochhammer factors, so
/// E = √2α(2l + D + 4(n_r + 1)) and r_c is set by the largest root of
/// M(−(n_r + 1), l + D/2, ωr_c²). Both depend on l and D only through
/// D + 2l, which is what the partners share.
pub fn degeneracy_selection_3d(alpha: f64, n_r: usize, l: usize, dim: usize, j: usize) -> Result<DegeneracyHit> {
    if !(alpha > 0.0) {
        return Err(ChoError::InvalidInput(format!("alpha must be positive, got {alpha}")));
    }
    if dim < 2 {
        return Err(ChoError::InvalidInput(format!("dimension must be at least 2, got {dim}")));
    }
    let omega = 2.0 * SQRT_2 * alpha;
    let t = n_r + 1;
    let b = l as f64 + 0.5 * dim as f64;
    let energy = SQRT_2 * alpha * (2 * l + dim + 4 * t) as f64;
    let y = *kummer_polynomial_roots(t, b)?.last().expect("t >= 1 roots");
    let mut members = vec![(n_r, l, dim)];
    if j > 0 {
        if dim >= 2 + 2 * j {
            members.push((n_r, l + j, dim - 2 * j));
        }
        if l >= j {
            members.push((n_r, l - j, dim + 2 * j));
        }
        if members.len() == 1 {
            return Err(ChoError::InvalidInput(format!(
                "no partner of (l = {l}, D = {dim}) with shift j = {j} keeps l >= 0 and D >= 2"
            )));
        }
    }
    Ok(DegeneracyHit { energy, members, boundary: (y / omega).sqrt() })
}
