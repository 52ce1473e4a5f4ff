use thiserror::Error;

/// Errors raised across the workbench.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("malformed input: {0}")]
    MalformedInput(String),

    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown group element {0:?}")]
    UnknownElement(String),

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("subspace is not nilpotent within {0} steps")]
    NotNilpotent(usize),

    #[error("polynomial must be multihomogeneous: {0}")]
    MustBeHomogeneous(String),

    #[error("illegal substitution: {0}")]
    IllegalSubstitution(String),

    #[error("structural error: {0}")]
    Structural(String),

    #[error("unknown catalog set {0:?}")]
    UnknownSet(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Capacity(_) => 3,
            _ => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
