//! Integration grids. A [`Grid`] carries raw quadrature weights; the radial
//! measure (r² or p²) is applied by [`integrate`] rather than folded into the
//! weights, so weights stay positive even with a node at the origin.

use super::polynomials::legendre_with_derivative;
use crate::error::{ChoError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Measure {
    Flat,
    RSquared,
    PSquared,
}

impl Measure {
    #[inline]
    pub fn weight(self, x: f64) -> f64 {
        match self {
            Measure::Flat => 1.0,
            Measure::RSquared | Measure::PSquared => x * x,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    measure: Measure,
}

impl Grid {
    /// Validates the invariants: equal lengths, strictly increasing nodes,
    /// positive weights.
    pub fn new(nodes: Vec<f64>, weights: Vec<f64>, measure: Measure) -> Result<Self> {
        if nodes.len() != weights.len() || nodes.is_empty() {
            return Err(ChoError::InvalidInput(format!(
                "grid needs matching non-empty node/weight arrays ({} vs {})",
                nodes.len(),
                weights.len()
            )));
        }
        if nodes.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(ChoError::InvalidInput("grid nodes must be strictly increasing".into()));
        }
        if weights.iter().any(|&w| !(w > 0.0)) {
            return Err(ChoError::InvalidInput("grid weights must be positive".into()));
        }
        Ok(Self { nodes, weights, measure })
    }

    /// Composite Simpson rule on [a, b] with `intervals` (even) sub-intervals.
    pub fn simpson(a: f64, b: f64, intervals: usize, measure: Measure) -> Result<Self> {
        if intervals < 2 || !intervals.is_multiple_of(2) || !(b > a) {
            return Err(ChoError::InvalidInput(format!(
                "Simpson grid needs b > a and an even interval count >= 2 (got {intervals})"
            )));
        }
        let h = (b - a) / intervals as f64;
        let nodes: Vec<f64> = (0..=intervals).map(|i| a + h * i as f64).collect();
        let weights = (0..=intervals)
            .map(|i| {
                let c = if i == 0 || i == intervals {
                    1.0
                } else if i % 2 == 1 {
                    4.0
                } else {
                    2.0
                };
                c * h / 3.0
            })
            .collect();
        let mut g = Self::new(nodes, weights, measure)?;
        // Pin the end node exactly to b.
        *g.nodes.last_mut().unwrap() = b;
        Ok(g)
    }

    /// n-point Gauss–Legendre rule mapped to [a, b].
    pub fn gauss_legendre(a: f64, b: f64, n: usize, measure: Measure) -> Result<Self> {
        if n == 0 || !(b > a) {
            return Err(ChoError::InvalidInput("Gauss–Legendre grid needs n >= 1 and b > a".into()));
        }
        let (x, w) = gauss_legendre_reference(n);
        let half = 0.5 * (b - a);
        let mid = 0.5 * (b + a);
        Self::new(x.iter().map(|&t| mid + half * t).collect(), w.iter().map(|&v| v * half).collect(), measure)
    }

    /// Gauss–Legendre panels of the given order between consecutive breakpoints.
    pub fn composite_gauss_legendre(breaks: &[f64], order: usize, measure: Measure) -> Result<Self> {
        let (x, w) = gauss_legendre_reference(order);
        let mut nodes = Vec::with_capacity(order * breaks.len());
        let mut weights = Vec::with_capacity(order * breaks.len());
        for pair in breaks.windows(2) {
            let (a, b) = (pair[0], pair[1]);
            if !(b > a) {
                return Err(ChoError::InvalidInput("panel breakpoints must increase".into()));
            }
            let half = 0.5 * (b - a);
            let mid = 0.5 * (b + a);
            for (t, v) in x.iter().zip(&w) {
                nodes.push(mid + half * t);
                weights.push(v * half);
            }
        }
        Self::new(nodes, weights, measure)
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn measure(&self) -> Measure {
        self.measure
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Same nodes and weights under a different measure.
    pub fn with_measure(&self, measure: Measure) -> Self {
        Self { nodes: self.nodes.clone(), weights: self.weights.clone(), measure }
    }

    /// Quadrature weight including the measure factor at node i.
    #[inline]
    pub fn full_weight(&self, i: usize) -> f64 {
        self.weights[i] * self.measure.weight(self.nodes[i])
    }

    /// Sums w_i·μ(x_i)·f_i without validating samples (hot loops).
    pub fn sum(&self, values: &[f64]) -> f64 {
        debug_assert_eq!(values.len(), self.len());
        values.iter().enumerate().map(|(i, v)| self.full_weight(i) * v).sum()
    }
}

/// Σ w_i μ(x_i) f(x_i) over the grid; rejects non-finite samples.
pub fn integrate(values: &[f64], grid: &Grid) -> Result<f64> {
    if values.len() != grid.len() {
        return Err(ChoError::InvalidInput(format!("{} samples for a {}-node grid", values.len(), grid.len())));
    }
    if let Some(index) = values.iter().position(|v| !v.is_finite()) {
        return Err(ChoError::NonFiniteSample { index });
    }
    Ok(grid.sum(values))
}

/// Samples `f` on the grid nodes and integrates.
pub fn integrate_fn<F: Fn(f64) -> f64>(f: F, grid: &Grid) -> Result<f64> {
    let values: Vec<f64> = grid.nodes().iter().map(|&x| f(x)).collect();
    integrate(&values, grid)
}

/// Nodes and weights of the n-point Gauss–Legendre rule on [-1, 1].
pub fn gauss_legendre_reference(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut t = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_with_derivative(n, t);
            let dt = p / dp;
            t -= dt;
            if dt.abs() < 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre_with_derivative(n, t);
        let wi = 2.0 / ((1.0 - t * t) * dp * dp);
        x[i] = -t;
        x[n - 1 - i] = t;
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    if n % 2 == 1 {
        x[n / 2] = 0.0;
    }
    (x, w)
}
