use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("singular matrix: rank {rank} < {dim}")]
    SingularMatrix { rank: usize, dim: usize },

    #[error("twist maps do not commute: {0}")]
    NonCommutingTwists(String),

    #[error("{map} is not a morphism: {identity} fails")]
    NotAMorphism { map: String, identity: String },

    #[error("twist {0} is not an endomorphism of the algebra")]
    TwistNotEndomorphism(String),

    #[error("input is not BiHom-associative: {0}")]
    NotAssociative(String),

    #[error("subspace is not an ideal: {0}")]
    NotAnIdeal(String),

    #[error("bracket is not a Lie algebra: {0}")]
    NotALieAlgebra(String),

    #[error("algebra is not regular: {0}")]
    NotRegular(String),

    #[error("parameter out of domain: {0}")]
    ParameterOutOfDomain(String),

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("module check failed: {0}")]
    ModuleCheckFailed(String),

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error("i/o error: {0}")]
    Io(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }

    pub(crate) fn dims(msg: impl Into<String>) -> Self {
        Error::DimensionMismatch(msg.into())
    }

    /// Whether the failure comes from malformed input rather than from an
    /// algebraic identity that does not hold.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::DimensionMismatch(_)
                | Error::Parse { .. }
                | Error::Io(_)
                | Error::InvalidArgument(_)
                | Error::ParameterOutOfDomain(_)
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
