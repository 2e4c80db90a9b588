use thiserror::Error;

/// Every fallible operation in the crate reports through this type.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ChoError {
    #[error("1F1 series did not converge after {terms} terms (partial sum {partial_sum:e})")]
    SeriesNonConvergence { partial_sum: f64, terms: usize },

    #[error("1F1 argument y = {y} exceeds the supported maximum {max}")]
    ArgumentTooLarge { y: f64, max: f64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("non-finite sample at node {index}")]
    NonFiniteSample { index: usize },

    #[error("no sign change on [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },

    #[error("root finder exceeded {0} iterations")]
    MaxIterations(usize),

    #[error("matrix is not symmetric (relative asymmetry {0:e})")]
    NotSymmetric(f64),

    #[error("symmetric eigensolver failed to converge")]
    EigenConvergence,

    #[error("could not bracket zero {index} of the spherical Bessel function j_{l}")]
    BesselBracket { l: usize, index: usize },

    #[error("energy scan exhausted before locating state {state} (scanned up to E = {limit})")]
    RootScanExhausted { state: usize, limit: f64 },

    #[error("state {state}: expected {expected} nodes, found {found}")]
    NodeCountMismatch { state: usize, expected: usize, found: usize },

    #[error("zero pivot at row {0}")]
    ZeroPivot(usize),

    #[error("imaginary-time propagation did not converge within {0} steps")]
    ItpMaxSteps(usize),

    #[error("imaginary-time energy diverging at step {0}")]
    ItpDiverging(usize),

    #[error("optimal basis parameter {0} sits on the edge of the scan range")]
    AlphaAtEdge(f64),

    #[error("kernel coefficient table covers l <= 9, got l = {0}")]
    KernelOutOfRange(usize),

    #[error("momentum grid too short: density beyond p_max is {tail:e}")]
    MomentumTail { tail: f64 },

    #[error("reference density vanishes where the target is positive (node {0})")]
    SupportViolation(usize),

    #[error("<p^-2> is required when m != 0")]
    MissingExpectation,

    #[error("<T^2> unstable under grid halving (relative change {0:e})")]
    DifferentiationNoise(f64),
}

pub type Result<T> = std::result::Result<T, ChoError>;
