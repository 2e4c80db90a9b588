//! Special functions, quadrature, a dense symmetric eigensolver and bracketed
//! root finding shared by all the solvers.

mod bessel;
mod eigen;
mod kummer;
mod polynomials;
mod quadrature;
mod roots;

pub use bessel::{spherical_bessel_j, spherical_bessel_zero};
pub use eigen::{solve_symmetric_eigen, EigenPair};
pub use kummer::{kummer_1f1, kummer_1f1_with_derivatives, SeriesTruncation, MAX_ARGUMENT};
pub use polynomials::{
    assoc_laguerre, assoc_laguerre_derivative, assoc_legendre, hermite, hermite_derivative, legendre_with_derivative,
    ln_factorial, ln_gamma,
};
pub use quadrature::{gauss_legendre_reference, integrate, integrate_fn, Grid, Measure};
pub use roots::{find_root_bracketed, golden_section_min};
