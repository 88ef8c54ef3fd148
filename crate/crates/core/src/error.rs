use thiserror::Error;

/// Errors raised by the module-theoretic operations and the harness.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: &'static str,
        expected: String,
        found: String,
    },

    #[error("operator is not self-adjoint (residual {residual:.3e})")]
    NotSelfAdjoint { residual: f64 },

    #[error("operator is not positive (smallest eigenvalue {lambda_min:.3e})")]
    NotPositive { lambda_min: f64 },

    #[error("family is not a frame (lower frame bound vanishes)")]
    NotAFrame,

    #[error("not an atomic system for K: range inclusion residual {residual:.3e}")]
    NotAtomicSystem { residual: f64 },

    #[error("vector is not a complete wandering vector (Gram residual {residual:.3e})")]
    NotWandering { residual: f64 },

    #[error("precondition `{name}` failed (residual {residual:.3e})")]
    Precondition { name: &'static str, residual: f64 },

    #[error("unitary system is invalid: {0}")]
    InvalidUnitarySystem(String),

    #[error("schema error at `{path}`: {message}")]
    Schema { path: String, message: String },

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    #[error("instance generation for seed {seed} exceeded {attempts} resampling attempts")]
    ResampleCapExceeded { seed: u64, attempts: usize },

    #[error("invalid instance spec: {0}")]
    InvalidSpec(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn dims(
        context: &'static str,
        expected: impl ToString,
        found: impl ToString,
    ) -> Self {
        Error::DimensionMismatch {
            context,
            expected: expected.to_string(),
            found: found.to_string(),
        }
    }

    pub(crate) fn schema(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Schema {
            path: path.into(),
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
