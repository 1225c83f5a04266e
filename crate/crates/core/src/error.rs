use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    /// The twisting map is not invertible but the operation needs `alpha^-1`.
    #[error("regularity required: {0}")]
    Regularity(String),

    #[error("algebra has no unit: {0}")]
    NotUnital(String),

    #[error("not an algebra morphism: {0}")]
    NotAMorphism(String),

    #[error("subspace is not contained in the ambient span: {0}")]
    NotContained(String),

    #[error("hypothesis not satisfied: {0}")]
    HypothesisNotSatisfied(String),

    #[error("internal consistency failure: {message} (witness: {witness})")]
    InternalConsistency { message: String, witness: String },

    #[error("not a (co)cycle: {0}")]
    NotACycle(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    pub fn consistency(message: impl Into<String>, witness: impl Into<String>) -> Self {
        Error::InternalConsistency {
            message: message.into(),
            witness: witness.into(),
        }
    }

    /// Stable machine-readable tag, used as a skip reason in reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Dimension(_) => "DimensionError",
            Error::IndexOutOfRange(_) => "IndexOutOfRange",
            Error::Regularity(_) => "RegularityError",
            Error::NotUnital(_) => "NotUnital",
            Error::NotAMorphism(_) => "NotAMorphism",
            Error::NotContained(_) => "NotContained",
            Error::HypothesisNotSatisfied(_) => "HypothesisNotSatisfied",
            Error::InternalConsistency { .. } => "InternalConsistencyError",
            Error::NotACycle(_) => "NotACycle",
            Error::Parse(_) => "ParseError",
            Error::Io(_) => "IoError",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
