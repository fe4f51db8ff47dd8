use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown family `{0}`")]
    UnknownFamily(String),

    #[error("dimension n must be at least 1 (got {0})")]
    InvalidDimension(usize),

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("subspace is not an ideal: [{generator}, {member}] leaves the span")]
    NotAnIdeal { generator: String, member: String },

    #[error("no cataloged Casimir {index} for {family}({n})")]
    UnknownCasimir { family: String, n: usize, index: usize },

    #[error("matrix is not unitary with unit determinant (deviation {0:e})")]
    NotUnitary(f64),

    #[error("invalid spin j = {0}: 2j must be a nonnegative integer")]
    InvalidSpin(f64),

    #[error("spin j > 0 requires n = 3 (got n = {0})")]
    SpinNeedsThreeDimensions(usize),

    #[error("degenerate labels: {0}")]
    DegenerateLabels(String),

    #[error("generator is not exponentiable in the operator family: {0}")]
    UnsupportedGeneratorShape(String),

    #[error("commutator left the operator family: {0}")]
    ClosureViolation(String),

    #[error("represented Casimir is not a scalar (off-scalar residual {residual:e})")]
    ScalarityViolation { residual: f64 },

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
