use crate::linalg::LinalgError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("unknown vertex '{0}'")]
    UnknownVertex(String),
    #[error("unknown arrow '{0}'")]
    UnknownArrow(String),
    #[error("path {0} is not composable")]
    NotComposable(String),
    #[error("relation {0} mixes vertex blocks")]
    MixedBlocks(usize),
    #[error("relation {index} has a path of length {length}, expected 2")]
    BadRelationLength { index: usize, length: usize },
    #[error("weight {requested} exceeds the truncation weight {max}")]
    TruncationExceeded { requested: usize, max: usize },
    #[error("truncation weight must be at least {min}, got {got}")]
    WeightTooSmall { min: usize, got: usize },
    #[error("{0} is too large to index")]
    TooLarge(String),
    #[error("vector is not in the span of {0}")]
    NotInSpan(String),
    #[error("operation requires {0}")]
    Unsupported(String),
    #[error("induced differential does not square to zero: {0}")]
    SquareNotZero(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
