//! Fourth-order finite differences for states known only by samples on a
//! uniform grid. Ghost samples beyond an end node mirror the interior with a
//! chosen parity: odd at a hard wall (ψ = 0 there), and (−1)^l at the origin
//! for a radial function R ~ r^l.

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct EndParity {
    pub left: f64,
    pub right: f64,
}

impl EndParity {
    pub const WALLS: Self = Self { left: -1.0, right: -1.0 };
}

/// The spacing of uniformly spaced nodes, or `None` when the nodes are not evenly spaced.
pub(crate) fn uniform_step(x: &[f64]) -> Option<f64> {
    if x.len() < 5 {
        return None;
    }
    let h = (x[x.len() - 1] - x[0]) / (x.len() - 1) as f64;
    let even = x.windows(2).all(|w| ((w[1] - w[0]) - h).abs() <= 1e-9 * h);
    even.then_some(h)
}

fn at(values: &[f64], i: isize, parity: EndParity) -> f64 {
    let n = values.len() as isize;
    if i < 0 {
        parity.left * values[(-i) as usize]
    } else if i >= n {
        parity.right * values[(2 * (n - 1) - i) as usize]
    } else {
        values[i as usize]
    }
}

pub(crate) fn first_derivative(values: &[f64], h: f64, parity: EndParity) -> Vec<f64> {
    (0..values.len() as isize)
        .map(|i| {
            let f = |k: isize| at(values, i + k, parity);
            (-f(2) + 8.0 * f(1) - 8.0 * f(-1) + f(-2)) / (12.0 * h)
        })
        .collect()
}

pub(crate) fn second_derivative(values: &[f64], h: f64, parity: EndParity) -> Vec<f64> {
    (0..values.len() as isize)
        .map(|i| {
            let f = |k: isize| at(values, i + k, parity);
            (-f(2) + 16.0 * f(1) - 30.0 * f(0) + 16.0 * f(-1) - f(-2)) / (12.0 * h * h)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{Grid, Measure};

    #[test]
    fn sine_on_a_wall_bounded_interval() {
        let grid = Grid::simpson(0.0, std::f64::consts::PI, 400, Measure::Flat).unwrap();
        let h = uniform_step(grid.nodes()).unwrap();
        let v: Vec<f64> = grid.nodes().iter().map(|x| x.sin()).collect();
        let d1 = first_derivative(&v, h, EndParity::WALLS);
        let d2 = second_derivative(&v, h, EndParity::WALLS);
        for (i, &x) in grid.nodes().iter().enumerate() {
            assert!((d1[i] - x.cos()).abs() < 1e-8);
            assert!((d2[i] + x.sin()).abs() < 1e-8);
        }
    }

    #[test]
    fn gauss_legendre_grid_is_not_uniform() {
        let grid = Grid::gauss_legendre(0.0, 1.0, 12, Measure::Flat).unwrap();
        assert!(uniform_step(grid.nodes()).is_none());
    }
}
