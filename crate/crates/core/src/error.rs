use thiserror::Error;

/// Errors raised by the geometry pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Input point set does not span the required dimension.
    #[error("degenerate input: affine rank {rank} (need {required}): {detail}")]
    Degenerate {
        rank: usize,
        required: usize,
        detail: String,
    },

    #[error("invalid polyhedron: {0}")]
    Validation(String),

    #[error("halfspace system is infeasible or unbounded: {0}")]
    Infeasible(String),

    /// Cap decomposition only equals the rectified volume when every vertex figure is planar.
    #[error("cap decomposition is not exact: vertex figure at vertex {vertex} is not coplanar (deviation {deviation:.3e})")]
    DecompositionNotExact { vertex: usize, deviation: f64 },

    #[error("f-vector mismatch at step {step}: expected {expected}, got {actual}")]
    FVectorMismatch {
        step: usize,
        expected: crate::FVector,
        actual: crate::FVector,
    },

    #[error("OFF parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
