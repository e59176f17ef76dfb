use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: expected {expected:?}, found {found:?}")]
    DimMismatch {
        expected: (usize, usize),
        found: (usize, usize),
    },

    #[error("matrix contains NaN or infinite entries")]
    NonFinite,

    #[error("unsupported density-matrix dimension {0} (expected 2, 3, 4 or 6)")]
    UnsupportedDimension(usize),

    #[error("matrix is not Hermitian (max |M - M^dagger| = {defect:e})")]
    NotHermitian { defect: f64 },

    #[error("trace is {trace}, expected 1")]
    TraceNotOne { trace: f64 },

    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:e})")]
    NotPsd { min_eigenvalue: f64 },

    #[error("invalid state parameters: {0}")]
    InvalidParameters(String),

    #[error("{name} = {value} is outside [0, 1]")]
    OutOfRange { name: &'static str, value: f64 },

    #[error("{name} = {value} must be a non-negative number")]
    NegativeInput { name: &'static str, value: f64 },

    #[error("invalid scenario: {0}")]
    InvalidScenario(String),

    #[error("invalid sweep: {0}")]
    InvalidSweep(String),

    #[error("unknown {what} name `{name}`")]
    UnknownName { what: &'static str, name: String },
}
