use thiserror::Error;

/// Errors raised by the scattering library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A coefficient denominator vanished (a resonance pole was hit).
    #[error("numerical degeneracy: {0}")]
    Degenerate(String),

    /// A coefficient does not satisfy the circular law closely enough to
    /// be represented by an angle.
    #[error("coefficient ({re}, {im}) is off the circular-law circle (residual {residual:e})")]
    OffCircle { re: f64, im: f64, residual: f64 },

    /// Invalid integration interval or grid.
    #[error("invalid interval [{a}, {b}]")]
    InvalidInterval { a: f64, b: f64 },

    /// Inconsistent or invalid configuration.
    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
