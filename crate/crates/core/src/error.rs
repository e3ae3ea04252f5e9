use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("element not in group: {0}")]
    NotInGroup(String),
    #[error("lattice mismatch: {0}")]
    Lattice(String),
    #[error("singular functional matrix")]
    Singular,
    #[error("invalid skeleton: {0}")]
    Skeleton(String),
    #[error("unknown node {0:?}")]
    UnknownNode(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("invalid bunch: {0}")]
    InvalidBunch(String),
    #[error("invalid table: {0}")]
    Table(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("amalgamation rejected: {0}")]
    Rejected(String),
    #[error("amalgamation failed: {0}")]
    Failed(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
