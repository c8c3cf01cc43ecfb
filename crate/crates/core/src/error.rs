use thiserror::Error;

/// Errors raised across the toolkit.
///
/// [`Error::name`] gives the stable variant name that the command-line front
/// end prints on the diagnostic stream.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("outcome label {0} is not present in the observable")]
    UnknownLabel(f64),
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),
    #[error("invalid state: {0}")]
    InvalidState(String),
    #[error("invalid observable: {0}")]
    InvalidObservable(String),
    #[error("invalid scenario: {0}")]
    InvalidScenario(String),
    #[error("malformed measure: {0}")]
    MalformedMeasure(String),
    #[error("invalid q-vector: {0}")]
    InvalidQVector(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("state is not entangled")]
    NotEntangled,
    #[error("state is maximally entangled; the Hardy construction does not apply")]
    MaximallyEntangled,
    #[error("no Hardy solution found (best residual {residual:e})")]
    NoSolution { residual: f64 },
    #[error("expression does not exceed the upper bound on the visibility interval")]
    NoCrossing,
    #[error("malformed JSON: {0}")]
    Json(String),
}

impl Error {
    pub fn name(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::UnknownLabel(_) => "UnknownLabel",
            Error::InvalidMatrix(_) => "InvalidMatrix",
            Error::InvalidState(_) => "InvalidState",
            Error::InvalidObservable(_) => "InvalidObservable",
            Error::InvalidScenario(_) => "InvalidScenario",
            Error::MalformedMeasure(_) => "MalformedMeasure",
            Error::InvalidQVector(_) => "InvalidQVector",
            Error::InvalidParameter(_) => "InvalidParameter",
            Error::NotEntangled => "NotEntangled",
            Error::MaximallyEntangled => "MaximallyEntangled",
            Error::NoSolution { .. } => "NoSolution",
            Error::NoCrossing => "NoCrossing",
            Error::Json(_) => "MalformedJson",
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        // Validation failures inside `try_from` conversions surface as custom
        // serde errors; keep the message intact.
        Error::Json(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
