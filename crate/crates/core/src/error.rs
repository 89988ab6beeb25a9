//! Error type shared by every module in the crate.

/// Everything that can go wrong while building or probing a triple system.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("structure tensor is not symmetric in the outer slots (max deviation {deviation:.3e})")]
    AsymmetricTensor { deviation: f64 },

    #[error("map is not complex-linear (conjugate-linear part has norm {norm:.3e})")]
    NotComplexLinear { norm: f64 },

    #[error("factor `{factor}` carries no unital *-algebra structure")]
    MissingAlgebra { factor: String },

    #[error("operation `{op}` is not supported for factor `{factor}`")]
    Unsupported { op: String, factor: String },

    #[error("element is not a tripotent (residual {residual:.3e})")]
    NotATripotent { residual: f64 },

    #[error("tripotents are not mutually orthogonal (residual {residual:.3e})")]
    NotOrthogonal { residual: f64 },

    #[error("map is singular and cannot be inverted")]
    SingularMap,

    #[error("kernel refinement did not stabilize within {max_probes} probes (last dimension {last_dim})")]
    NonConvergence { max_probes: usize, last_dim: usize },

    #[error("equivalent formulations disagree: {0}")]
    Inconsistent(String),

    #[error("cannot parse factor spec `{spec}`: {reason}")]
    ParseSpec { spec: String, reason: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("division by zero in the rational function field")]
    RationalDivisionByZero,

    #[error("cannot parse rational function `{input}`: {reason}")]
    ParseRational { input: String, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
