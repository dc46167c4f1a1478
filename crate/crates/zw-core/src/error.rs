//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Argument is within its error bound of a pole.
    #[error("pole at or near {0}")]
    Pole(String),
    /// A requested error target cannot be met with the configured limits.
    #[error("precision target not met: {0}")]
    Precision(String),
    /// A sequence fed to the determinant machinery is not exact.
    #[error("sequence is not exact: {0}")]
    NotExact(String),
    /// A diagram that must commute does not.
    #[error("diagram does not commute: {0}")]
    Diagram(String),
    /// Stored face/degeneracy maps violate a simplicial identity.
    #[error("simplicial identity violated: {0}")]
    SimplicialIdentity(String),
    /// The truncation window is too small for the requested computation.
    #[error("truncation window violated: {0}")]
    Truncation(String),
    /// Computed invariants are only available for degree <= 2 fields.
    #[error("unsupported degree: {0}")]
    UnsupportedDegree(String),
    /// Malformed data file.
    #[error("parse error: {0}")]
    Parse(String),
    /// A K-group table entry (or other ingested datum) is missing.
    #[error("missing data: {0}")]
    MissingData(String),
    /// The vanishing-order slope fit did not converge to an integer.
    #[error("order detection failed: {0}")]
    OrderDetection(String),
    /// Comparison against zero is meaningless.
    #[error("comparand is zero within its error bound: {0}")]
    ZeroComparand(String),
    /// Catch-all for invalid arguments.
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
