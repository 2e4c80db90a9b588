//! Generalized pseudospectral (GPS) solver for the radial equation.
//!
//! The radial function u = rR lives on [0, r_max]. The algebraic map
//! r(x) = L(1 + x)/(1 − x + a), a = 2L/r_max, sends the Legendre–Gauss–Lobatto
//! (LGL) points on [−1, 1] onto that interval with clustering near the origin.
//! Writing u(r(x)) = √r'(x)·f(x) and collocating f at the interior points turns
//! the radial Hamiltonian into a dense symmetric matrix whose lowest
//! eigenvalues converge spectrally in the number of points.

use nalgebra::DMatrix;

use crate::error::{ChoError, Result};
use crate::exact::{ConfinedSystemRadial, Eigenstate, Labels, DEFAULT_GRID_INTERVALS};
use crate::numerics::{solve_symmetric_eigen, Grid, Measure};

/// Free systems are truncated at this many oscillator lengths, where the
/// densities of all low states are far below double precision.
const FREE_PROXY_LENGTHS: f64 = 20.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GpsConfig {
    /// Collocation order: N + 1 LGL points, N − 1 of them interior.
    pub n: usize,
    /// Outer end of the mapped interval. Confined systems always use r_c;
    /// `None` picks 20/√ω for free systems.
    pub r_max: Option<f64>,
    /// Mapping length L. `None` means r_max/4.
    pub map_length: Option<f64>,
}

impl Default for GpsConfig {
    fn default() -> Self {
        Self { n: 128, r_max: None, map_length: None }
    }
}

impl GpsConfig {
    pub fn with_order(n: usize) -> Self {
        Self { n, ..Self::default() }
    }

    /// Resolves the mapped interval for `sys`, validating the settings.
    pub fn mapping(&self, sys: &ConfinedSystemRadial) -> Result<AlgebraicMap> {
        if self.n < 32 {
            return Err(ChoError::InvalidInput(format!("GPS needs at least 32 collocation intervals, got {}", self.n)));
        }
        let r_max = if sys.is_free() {
            self.r_max.unwrap_or(FREE_PROXY_LENGTHS / sys.omega.sqrt())
        } else {
            match self.r_max {
                Some(r) if r != sys.r_c => {
                    return Err(ChoError::InvalidInput(format!(
                        "confined GPS runs map onto r_c = {}, not r_max = {r}",
                        sys.r_c
                    )))
                }
                _ => sys.r_c,
            }
        };
        let length = self.map_length.unwrap_or(0.25 * r_max);
        AlgebraicMap::new(length, r_max)
    }
}

/// r(x) = L(1 + x)/(1 − x + a) with a = 2L/r_max, so r(−1) = 0 and r(1) = r_max.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlgebraicMap {
    pub length: f64,
    pub r_max: f64,
    a: f64,
}

impl AlgebraicMap {
    pub fn new(length: f64, r_max: f64) -> Result<Self> {
        if !(r_max > 0.0 && r_max.is_finite()) {
            return Err(ChoError::InvalidInput(format!("r_max must be positive and finite, got {r_max}")));
        }
        if !(length > 0.0 && length < r_max) {
            return Err(ChoError::InvalidInput(format!(
                "mapping length must lie in (0, r_max = {r_max}), got {length}"
            )));
        }
        Ok(Self { length, r_max, a: 2.0 * length / r_max })
    }

    fn t(&self, x: f64) -> f64 {
        1.0 - x + self.a
    }

    pub fn r(&self, x: f64) -> f64 {
        self.length * (1.0 + x) / self.t(x)
    }

    pub fn x(&self, r: f64) -> f64 {
        (r * (1.0 + self.a) - self.length) / (r + self.length)
    }

    /// dr/dx, d²r/dx² and d³r/dx³.
    pub fn derivatives(&self, x: f64) -> (f64, f64, f64) {
        let k = self.length * (2.0 + self.a);
        let t = self.t(x);
        (k / (t * t), 2.0 * k / (t * t * t), 6.0 * k / (t * t * t * t))
    }

    /// The extra potential the u = √r'·f substitution produces,
    /// (3r''² − 2r'r''')/(8r'⁴). It vanishes identically for this map, so the
    /// solver leaves it out; it is exposed so tests can confirm that.
    pub fn mapping_potential(&self, x: f64) -> f64 {
        let (d1, d2, d3) = self.derivatives(x);
        (3.0 * d2 * d2 - 2.0 * d1 * d3) / (8.0 * d1.powi(4))
    }
}

/// P_{N−1}(x) and P_N(x) by the three-term recurrence.
pub(crate) fn legendre_pair(n: usize, x: f64) -> (f64, f64) {
    let (mut prev, mut cur) = (1.0, x);
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0) * x * cur - kf * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    (prev, cur)
}

/// The N + 1 LGL points: ±1 and the roots of P_N', ascending.
pub fn gps_collocation_points(n: usize) -> Result<Vec<f64>> {
    if n < 2 {
        return Err(ChoError::InvalidInput(format!("LGL points need N >= 2, got {n}")));
    }
    const MAX_NEWTON: usize = 100;
    let nf = n as f64;
    let mut x = vec![0.0; n + 1];
    x[0] = -1.0;
    x[n] = 1.0;
    // Newton on (1 − x²)P_N' written through P_{N−1} and P_N, seeded with
    // Chebyshev–Lobatto points. Only the left half is solved; the rest mirrors.
    for j in 1..=n / 2 {
        let mut xi = -(std::f64::consts::PI * j as f64 / nf).cos();
        let mut converged = false;
        for _ in 0..MAX_NEWTON {
            let (pm, p) = legendre_pair(n, xi);
            let step = (xi * p - pm) / ((nf + 1.0) * p);
            xi -= step;
            if step.abs() <= 4.0 * f64::EPSILON {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(ChoError::MaxIterations(MAX_NEWTON));
        }
        x[j] = xi;
        x[n - j] = -xi;
    }
    if n.is_multiple_of(2) {
        x[n / 2] = 0.0;
    }
    if x.windows(2).any(|w| w[1] <= w[0]) {
        return Err(ChoError::InvalidInput(format!("LGL points for N = {n} are not distinct")));
    }
    Ok(x)
}

/// Lowest `count` radial states of `sys` (D = 3), sampled on the same
/// r²-weighted Simpson grid the exact solver uses.
pub fn gps_solve(sys: &ConfinedSystemRadial, cfg: &GpsConfig, count: usize) -> Result<Vec<Eigenstate>> {
    if sys.dim != 3 {
        return Err(ChoError::InvalidInput(format!("GPS is set up for D = 3, got D = {}", sys.dim)));
    }
    let map = cfg.mapping(sys)?;
    let n = cfg.n;
    if count == 0 || count > n - 1 {
        return Err(ChoError::InvalidInput(format!("requested {count} states from {} collocation points", n - 1)));
    }
    let x = gps_collocation_points(n)?;
    let p_n: Vec<f64> = x.iter().map(|&xi| legendre_pair(n, xi).1).collect();
    let dr: Vec<f64> = x.iter().map(|&xi| map.derivatives(xi).0).collect();
    let nn1 = (n * (n + 1)) as f64;
    let centrifugal = (sys.l * (sys.l + 1)) as f64;

    // Interior points 1..N−1 only: the wall rows carry f = 0.
    let m = n - 1;
    let mut h = DMatrix::<f64>::zeros(m, m);
    for i in 0..m {
        let xi = x[i + 1];
        for j in 0..m {
            let xj = x[j + 1];
            let d2 = if i == j { nn1 / (6.0 * (1.0 - xi * xi)) } else { 1.0 / ((xi - xj) * (xi - xj)) };
            h[(i, j)] = d2 / (dr[i + 1] * dr[j + 1]);
        }
        let r = map.r(xi);
        h[(i, i)] += sys.potential(r) + 0.5 * centrifugal / (r * r);
    }
    let pairs = solve_symmetric_eigen(&h, count)?;

    let mut states = Vec::with_capacity(count);
    for (n_r, pair) in pairs.into_iter().enumerate() {
        // Undo the symmetrizing scale: f_j = A_j P_N(x_j) √(N(N+1)/2) / r'_j.
        let mut f = vec![0.0; n + 1];
        for j in 1..n {
            f[j] = pair.vector[j - 1] * p_n[j] * (0.5 * nn1).sqrt() / dr[j];
        }
        let radius = sys.sampling_radius(n_r);
        let grid = Grid::simpson(0.0, radius, DEFAULT_GRID_INTERVALS, Measure::RSquared)?;
        let values = grid.nodes().iter().map(|&r| radial_value(&map, &x, &p_n, &f, r)).collect();
        let labels = Labels::Radial { n_r, l: sys.l, m: 0 };
        states.push(Eigenstate::from_samples(labels, pair.value, grid, values, None)?);
    }
    Ok(states)
}

/// R(r) = √r'·f(x(r))/r, with f interpolated barycentrically in x.
fn radial_value(map: &AlgebraicMap, x: &[f64], p_n: &[f64], f: &[f64], r: f64) -> f64 {
    if r >= map.r_max {
        return 0.0;
    }
    if r == 0.0 {
        // u ~ u'(0)·r, and u'(0) = f'(−1)/√r'(−1) because f(−1) = 0.
        let fp: f64 = (1..x.len()).map(|k| p_n[0] / (p_n[k] * (x[0] - x[k])) * f[k]).sum();
        return fp / map.derivatives(-1.0).0.sqrt();
    }
    let xr = map.x(r);
    map.derivatives(xr).0.sqrt() * lgl_interpolate(x, p_n, f, xr) / r
}

/// Barycentric interpolation through values at the LGL points `x`, whose
/// barycentric weights are proportional to 1/P_N(x_j).
pub(crate) fn lgl_interpolate(x: &[f64], p_n: &[f64], f: &[f64], at: f64) -> f64 {
    let mut num = 0.0;
    let mut den = 0.0;
    for k in 0..x.len() {
        let diff = at - x[k];
        if diff == 0.0 {
            return f[k];
        }
        let w = 1.0 / (p_n[k] * diff);
        num += w * f[k];
        den += w;
    }
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_order_points() {
        assert_eq!(gps_collocation_points(2).unwrap(), vec![-1.0, 0.0, 1.0]);
        let p = gps_collocation_points(3).unwrap();
        let s = 1.0 / 5f64.sqrt();
        assert!((p[1] + s).abs() < 1e-15 && (p[2] - s).abs() < 1e-15);
    }

    #[test]
    fn interior_points_are_roots_of_the_derivative() {
        use crate::numerics::legendre_with_derivative;
        for n in [32, 97, 128] {
            let x = gps_collocation_points(n).unwrap();
            for &xi in &x[1..n] {
                let (_, d) = legendre_with_derivative(n, xi);
                assert!(d.abs() < 1e-9 * (n * n) as f64, "N = {n}, x = {xi}: P' = {d}");
            }
        }
    }

    #[test]
    fn map_endpoints_and_inverse() {
        let map = AlgebraicMap::new(0.5, 2.0).unwrap();
        assert_eq!(map.r(-1.0), 0.0);
        assert!((map.r(1.0) - 2.0).abs() < 1e-15);
        for x in [-0.9, -0.3, 0.2, 0.8] {
            assert!((map.x(map.r(x)) - x).abs() < 1e-14);
        }
    }

    #[test]
    fn rejects_bad_configs() {
        let sys = ConfinedSystemRadial::new(1.0, 0, 1.0).unwrap();
        assert!(GpsConfig::with_order(16).mapping(&sys).is_err());
        let cfg = GpsConfig { map_length: Some(2.0), ..GpsConfig::default() };
        assert!(cfg.mapping(&sys).is_err());
        assert!(gps_solve(&ConfinedSystemRadial::with_dim(1.0, 0, 2, 1.0).unwrap(), &GpsConfig::default(), 1).is_err());
    }
}
