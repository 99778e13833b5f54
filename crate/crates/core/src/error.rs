use thiserror::Error;

/// Errors raised by the toolkit. Numeric payloads are reported as `f64`
/// regardless of the working precision.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid dimension: {0}")]
    InvalidDimension(String),

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("invalid tolerance: {0}")]
    InvalidTolerance(String),

    #[error("matrix is not Hermitian (defect {defect:e})")]
    NotHermitian { defect: f64 },

    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:e})")]
    NotPositive { min_eigenvalue: f64 },

    #[error("A*A and B*B differ by {defect:e}")]
    NotEqualGram { defect: f64 },

    #[error("empty operand list")]
    EmptyList,

    #[error("invalid count: {0}")]
    InvalidCount(String),

    #[error("operand {index} is not a contraction (norm {norm})")]
    NotContraction { index: usize, norm: f64 },

    #[error("operand does not lie in the intersection of the algebras (residual {residual:e})")]
    NotInIntersection { residual: f64 },

    #[error("pointwise majorization |f| <= |g| fails at sample {index}")]
    MajorizationFails { index: usize },

    #[error("coefficients are not a partition of unity (defect {defect:e})")]
    NotPartitionOfUnity { defect: f64 },

    #[error("bad operand reference: {0}")]
    BadReference(String),

    #[error("matrix is not normal (defect {defect:e})")]
    NotNormal { defect: f64 },

    #[error("sequence deviates from its declared limit by {deviation:e} on the tail")]
    NotContinuous { deviation: f64 },

    #[error("malformed input: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
