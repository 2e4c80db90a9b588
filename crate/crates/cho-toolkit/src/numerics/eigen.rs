use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::error::{ChoError, Result};

/// An eigenvalue with its unit-norm eigenvector.
#[derive(Debug, Clone)]
pub struct EigenPair {
    pub value: f64,
    pub vector: DVector<f64>,
}

/// Lowest `count` eigenpairs of a dense symmetric matrix, ascending.
pub fn solve_symmetric_eigen(matrix: &DMatrix<f64>, count: usize) -> Result<Vec<EigenPair>> {
    let n = matrix.nrows();
    if n == 0 || matrix.ncols() != n {
        return Err(ChoError::InvalidInput("eigensolver needs a non-empty square matrix".into()));
    }
    if count == 0 || count > n {
        return Err(ChoError::InvalidInput(format!("requested {count} eigenpairs of a {n}x{n} matrix")));
    }
    let scale = matrix.amax().max(f64::MIN_POSITIVE);
    let asym = (matrix - matrix.transpose()).amax() / scale;
    if asym > 1e-10 {
        return Err(ChoError::NotSymmetric(asym));
    }
    let sym = 0.5 * (matrix + matrix.transpose());
    let eig = SymmetricEigen::try_new(sym, f64::EPSILON, 0).ok_or(ChoError::EigenConvergence)?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    Ok(order
        .into_iter()
        .take(count)
        .map(|i| EigenPair { value: eig.eigenvalues[i], vector: eig.eigenvectors.column(i).into_owned() })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal() {
        let m = DMatrix::from_diagonal(&DVector::from_vec(vec![2.0, 1.0]));
        let p = solve_symmetric_eigen(&m, 2).unwrap();
        assert_eq!(p[0].value, 1.0);
        assert!((p[0].vector[1].abs() - 1.0).abs() < 1e-15);
        assert_eq!(p[1].value, 2.0);
    }

    #[test]
    fn swap_matrix() {
        let m = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]);
        let p = solve_symmetric_eigen(&m, 2).unwrap();
        assert!((p[0].value + 1.0).abs() < 1e-15 && (p[1].value - 1.0).abs() < 1e-15);
    }

    #[test]
    fn toeplitz_tridiagonal() {
        let n = 5;
        let m = DMatrix::from_fn(n, n, |i, j| match i.abs_diff(j) {
            0 => 2.0,
            1 => -1.0,
            _ => 0.0,
        });
        let p = solve_symmetric_eigen(&m, n).unwrap();
        for (k, pair) in p.iter().enumerate() {
            let exact = 2.0 - 2.0 * ((k + 1) as f64 * std::f64::consts::PI / 6.0).cos();
            assert!((pair.value - exact).abs() < 1e-13);
            let resid = (&m * &pair.vector - pair.value * &pair.vector).amax();
            assert!(resid <= 1e-9 * m.amax());
        }
    }

    #[test]
    fn rejects_asymmetric() {
        let m = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 0.5, 0.0]);
        assert!(matches!(solve_symmetric_eigen(&m, 1), Err(ChoError::NotSymmetric(_))));
    }
}
