use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("reduction polynomial {0:?} is reducible over GF({1})")]
    ReduciblePolynomial(Vec<u32>, u32),
    #[error("unknown group preset {0:?}")]
    UnknownPreset(String),
    #[error("invalid root datum: {0}")]
    InvalidRootDatum(String),
    #[error("coroot kernel of root {root} has size {size}, expected 1 or 2")]
    CorootKernel { root: usize, size: usize },
    #[error("mismatched group or field data: {0}")]
    Mismatch(String),
    #[error("coefficient field GF({field}) does not contain F_{q}")]
    UnsupportedCoefficientField { q: u32, field: u32 },
    #[error("inconsistent character data: {0}")]
    InconsistentCharacter(String),
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
    #[error("decomposition unavailable: {0}")]
    DecompositionUnavailable(String),
    #[error("group model self-check failed: {0}")]
    SelfCheck(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("integer overflow computing {0}")]
    Overflow(&'static str),
    #[error("parse error: {0}")]
    Parse(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
