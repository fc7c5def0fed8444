use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("label `{0}` occurs in both operands")]
    LabelCollision(String),
    #[error("circuit must not be empty")]
    EmptyCircuit,
    #[error("duplicate circuit {0:?}")]
    DuplicateCircuit(Vec<String>),
    #[error("ground set of {size} elements exceeds the limit of {limit}")]
    SizeGuard { size: usize, limit: usize },
    #[error("matroid has no circuits")]
    NoCircuits,
    #[error("matroid has an empty ground set")]
    EmptyGround,
    #[error("basepoint `{0}` is a loop")]
    LoopBasepoint(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("t^r chi(-1/t) is not a polynomial with non-negative coefficients: {0}")]
    NonPolynomial(String),
    #[error("independent computations disagree: {0}")]
    MethodDisagreement(String),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("variable `{0}` occurs in both arrangements")]
    VariableCollision(String),
    #[error("arrangement is not central")]
    NotCentral,
    #[error("hyperplane not found: {0}")]
    MissingHyperplane(String),
    #[error("invalid linear form: {0}")]
    InvalidForm(String),
    #[error("stage `{stage}` failed: {message}")]
    Stage { stage: &'static str, message: String },
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn stage(stage: &'static str, err: impl std::fmt::Display) -> Self {
        Error::Stage { stage, message: err.to_string() }
    }
}
