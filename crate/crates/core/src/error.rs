use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A desk-scale guard refused the request. `guard` names the limit.
    #[error("{message} (guard `{guard}`: limit {limit}, requested {requested})")]
    GuardExceeded {
        guard: &'static str,
        message: &'static str,
        limit: usize,
        requested: usize,
    },

    #[error("unbounded polyhedron")]
    UnboundedPolyhedron,

    #[error("inconsistent multidegree data: {0}")]
    InconsistentMultidegrees(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
