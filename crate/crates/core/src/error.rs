use thiserror::Error;

/// Errors raised by the geometry, quadrature and solver layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// No grid-compatible scenario exists for the requested snapping.
    #[error("infeasible: {0}")]
    Infeasible(String),

    /// An adaptive quadrature did not reach its tolerance.
    #[error("quadrature failed: {0}")]
    Quadrature(String),

    /// A sampling grid is too coarse for the requested scan.
    #[error("insufficient resolution: {0}")]
    Resolution(String),

    /// The interpolation variant requires intersection points on both grids.
    #[error("grid assumption violated: {0}")]
    Assumption(String),

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
