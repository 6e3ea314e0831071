use thiserror::Error;

/// Errors surfaced by the library. Messages carry the offending values so
/// callers (and the CLI) can report without re-deriving context.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A Lebesgue index or other parameter violated its domain.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A point or function had the wrong ambient dimension.
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    /// An angle coordinate fell outside the fundamental domain `[0, 1)`.
    #[error("angle {0} outside [0, 1)")]
    AngleOutOfRange(f64),

    /// Sequential and direct transforms of a product function disagreed.
    #[error("factorization mismatch: sequential and direct transforms differ by {0:.3e}")]
    FactorizationMismatch(f64),

    /// The quadrature box truncates too much mass for the requested oracle.
    #[error("insufficient truncation: tail bound {0:.3e} exceeds 1e-12")]
    InsufficientTruncation(f64),

    /// Grid too coarse to resolve the smallest cap in a sweep.
    #[error("under-resolved grid: {0}")]
    UnderResolvedGrid(String),

    /// A norm in a denominator vanished.
    #[error("zero norm: {0}")]
    ZeroNorm(String),

    /// A growth classification failed its fit-quality gate.
    #[error("inconclusive classification: {0}")]
    Inconclusive(String),
}

pub type Result<T> = std::result::Result<T, Error>;
