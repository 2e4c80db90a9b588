//! Confined harmonic oscillators: exact and numerical eigensolvers, momentum-space
//! transforms and information-theoretic measures.

// Input checks are written `!(x > 0.0)` so that NaN is rejected along with
// non-positive values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod exact;
pub mod gps;
pub mod itp;
pub mod measures;
pub mod momentum;
pub mod numerics;
pub mod vardiag;

pub use error::{ChoError, Result};
