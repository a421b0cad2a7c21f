use thiserror::Error;

/// Errors raised by the spectral computations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("vertex degree must be at least 3, got {0}")]
    InvalidDegree(usize),
    #[error("momentum must be positive, got {0}")]
    InvalidMomentum(f64),
    #[error("edge length must be positive and finite, got {0}")]
    InvalidLength(f64),
    #[error("invalid bracket [{lo}, {hi}] with f values {f_lo}, {f_hi}")]
    InvalidBracket { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },
    #[error("invalid interval [{lo}, {hi}]")]
    InvalidInterval { lo: f64, hi: f64 },
    #[error("invalid tolerance configuration: {0}")]
    InvalidTolerance(String),
    #[error("energy must be non-zero for the Bloch reduction")]
    ZeroEnergy,
    #[error("function returned non-finite value {fx} at x = {x}")]
    NotFinite { x: f64, fx: f64 },
    #[error("root search did not converge after {iterations} iterations on [{lo}, {hi}]")]
    NonConvergence { lo: f64, hi: f64, iterations: usize },
    #[error("spectral search exceeded its momentum cap {0}")]
    SearchExhausted(f64),
}

impl Error {
    /// True for failures of the numerical machinery as opposed to bad input.
    pub fn is_numeric(&self) -> bool {
        matches!(
            self,
            Error::NotFinite { .. } | Error::NonConvergence { .. } | Error::SearchExhausted(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
