use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("expected a vector of length {expected}, got {got}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("vertex {vertex} is out of range for a quiver with {vertices} vertices")]
    InvalidVertex { vertex: usize, vertices: usize },
    #[error("a quiver needs at least one vertex")]
    NoVertices,
    #[error("dimension vector entry {index} is negative ({value})")]
    NegativeEntry { index: usize, value: i64 },
    #[error("cannot reflect at vertex {0}: it carries a loop")]
    LoopVertex(usize),
    #[error("the zero vector is not allowed here")]
    ZeroVector,
    #[error("malformed rational {0:?}")]
    BadRational(String),
    #[error("parameters do not annihilate the dimension vector: {0}")]
    NotAnnihilated(String),
    #[error("the variety is empty")]
    EmptyVariety,
    #[error("{0} is not in the set of stable dimension vectors")]
    NotInSigma(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl Error {
    /// Domain errors are well-formed requests that the mathematics refuses
    /// (empty varieties, unmet preconditions). Everything else is malformed
    /// input.
    pub fn is_domain(&self) -> bool {
        matches!(
            self,
            Error::LoopVertex(_)
                | Error::ZeroVector
                | Error::EmptyVariety
                | Error::NotInSigma(_)
                | Error::Precondition(_)
                | Error::NotAnnihilated(_)
                | Error::Internal(_)
        )
    }
}
