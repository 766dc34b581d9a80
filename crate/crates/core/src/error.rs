use thiserror::Error;

/// Errors produced by the cloning library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("not normalized (squared norm {0})")]
    NotNormalized(f64),

    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),

    #[error("trace is not 1 (got {0})")]
    InvalidTrace(f64),

    #[error("matrix is not positive semidefinite (min eigenvalue {0:e})")]
    NotPositive(f64),

    #[error("expected a real value, imaginary part is {0:e}")]
    NotReal(f64),

    #[error("{value} lies outside the domain [{min}, {max}]")]
    Domain { value: f64, min: f64, max: f64 },

    #[error("search did not converge: bracket [{lo}, {hi}] after {iterations} iterations")]
    NoConvergence { lo: f64, hi: f64, iterations: usize },

    #[error("no grid point within {tolerance:e} of F = {target} at resolution {resolution}")]
    EmptyFeasibleSet { target: f64, tolerance: f64, resolution: usize },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        let full = e.to_string();
        // serde_json appends its own " at line L column C"
        let suffix = format!(" at line {} column {}", e.line(), e.column());
        let message = full.strip_suffix(&suffix).unwrap_or(&full).to_string();
        Error::Parse {
            line: e.line(),
            column: e.column(),
            message,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
