//! Error type shared by the half-line operator laboratory.

/// Errors reported by constructors and operator routines.
#[derive(thiserror::Error, Debug)]
pub enum WeightError {
    /// A quadrature specification violated its preconditions
    /// (non-positive endpoints, reversed interval, too few nodes, ...).
    #[error("invalid quadrature: {0}")]
    InvalidQuadrature(String),

    /// A function table violated its preconditions
    /// (non-positive values, unsorted nodes, too few samples, ...).
    #[error("invalid function: {0}")]
    InvalidFunction(String),

    /// An operation was applied outside its domain
    /// (evaluation point off the grid, divergent local integral,
    /// non-quasi-concave input to a shape routine, ...).
    #[error("domain error: {0}")]
    Domain(String),
}

/// Convenience alias for results in this crate.
pub type Result<V> = core::result::Result<V, WeightError>;
