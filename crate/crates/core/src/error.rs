//! Error type shared across the crate.

use thiserror::Error;

/// Errors produced by grid, spectral, solver and experiment operations.
#[derive(Debug, Error)]
pub enum Error {
    /// Two fields or a field and a weight live on different grids.
    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    /// A parameter is outside its documented range.
    #[error("invalid parameter `{name}`: {message}")]
    InvalidParameter { name: &'static str, message: String },

    /// A norm region contains no grid nodes.
    #[error("region {0} is empty on this grid")]
    EmptyRegion(String),

    /// A spectral symbol evaluated to a non-finite value on the grid's eigenvalue range.
    #[error("symbol is non-finite at eigenvalue L = {0}")]
    NonFiniteSymbol(f64),

    /// The integrator detected a non-finite or runaway field value.
    #[error("blow-up detected at t = {t}: {message}")]
    BlowUp { t: f64, message: String },

    /// The domain is too small for the requested run (waves would reach the outer boundary).
    #[error("boundary guard violated: {0}")]
    BoundaryGuard(String),

    /// Configuration file problem (missing/unknown/invalid key).
    #[error("config error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(name: &'static str, message: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            message: message.into(),
        }
    }
}
