use thiserror::Error;

/// Errors raised by the numerical kernels, mesh handling and the solver.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid bracket [{lo}, {hi}]: f(lo) = {f_lo}, f(hi) = {f_hi}")]
    InvalidBracket { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },

    #[error("quadrature did not converge within {panels} panels (estimate {estimate}, error {error})")]
    QuadratureNoConvergence { panels: usize, estimate: f64, error: f64 },

    #[error("conjugate gradient stopped after {iterations} iterations with relative residual {residual:e}")]
    CgNotConverged { iterations: usize, residual: f64 },

    #[error("invalid mesh: {0}")]
    InvalidMesh(String),

    #[error("index {index} out of range {lo}..={hi}")]
    OutOfRange { index: usize, lo: usize, hi: usize },

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for failures of an iterative numerical method (as opposed to bad input).
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::QuadratureNoConvergence { .. } | Error::CgNotConverged { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
