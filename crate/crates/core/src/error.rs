use thiserror::Error;

/// Errors raised by operator construction and the measurement routines built on it.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum UnsharpError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is empty")]
    Empty,

    #[error("matrix contains a non-finite entry")]
    NonFinite,

    #[error("operator is not Hermitian (defect {defect:.3e})")]
    NotHermitian { defect: f64 },

    #[error("operator has eigenvalue {eigenvalue:.6e} outside [{lo}, {hi}]")]
    SpectrumOutOfRange { eigenvalue: f64, lo: f64, hi: f64 },

    #[error("trace is {trace:.12}, expected 1")]
    TraceNotOne { trace: f64 },

    #[error("qubit effect violates |a| <= min(a0, 1 - a0): |a| = {norm:.6e}, bound = {bound:.6e}")]
    InvalidQubitEffect { norm: f64, bound: f64 },

    #[error("effects sum to identity only up to {defect:.3e}")]
    NotNormalized { defect: f64 },

    #[error("POM has no outcomes")]
    EmptyPom,

    #[error("outcome label list has {labels} entries but {effects} effects were given")]
    LabelCount { labels: usize, effects: usize },

    #[error("confusion matrix is not row-stochastic: {0}")]
    NotStochastic(String),

    #[error("observable is not projection-valued (defect {defect:.3e})")]
    NotProjective { defect: f64 },

    #[error("expected a binary observable, found {0} outcomes")]
    NotBinary(usize),

    #[error("vector is not a unit vector (norm {norm:.12})")]
    NotUnitVector { norm: f64 },

    #[error("Bloch vector length {length:.6e} exceeds {limit}")]
    VectorTooLong { length: f64, limit: f64 },

    #[error("axes are not orthogonal (dot product {dot:.3e})")]
    NonOrthogonalAxes { dot: f64 },

    #[error("invalid sphere region: {0}")]
    InvalidRegion(String),

    #[error("malformed outcome grid: {0}")]
    MalformedGrid(String),

    #[error("optimizer did not converge after {iterations} iterations (best violation {best:.3e})")]
    NoConvergence { iterations: usize, best: f64 },

    #[error("probability vector is not in the range of the embedding (residual {residual:.3e})")]
    InconsistentProbabilities { residual: f64 },

    #[error("frame matrix has rank {rank}, informational completeness needs 4")]
    RankDeficient { rank: usize },

    #[error("invalid classical state: {0}")]
    InvalidClassicalState(String),

    #[error("point map is not invertible at a sampled point (defect {defect:.3e})")]
    NonInvertibleMap { defect: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, UnsharpError>;
