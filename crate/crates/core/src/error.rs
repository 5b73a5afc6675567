use thiserror::Error;

/// Errors surfaced by the simulation kernel.
///
/// The variants map onto the failure classes used throughout the crate:
/// `SizeLimit` for requests beyond the 16×16 workspace, `Structure` for
/// shape/dimension mismatches, `Contract` for inputs that violate an
/// operation's mathematical precondition, and `Domain` for parameters
/// outside their allowed range.
#[derive(Debug, Error)]
pub enum Error {
    #[error("workspace limit exceeded: {rows}x{cols} is larger than {max}x{max}")]
    SizeLimit { rows: usize, cols: usize, max: usize },

    #[error("dimension mismatch: {0}")]
    Structure(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("domain error: {0}")]
    Domain(String),
}

impl Error {
    pub fn structure(msg: impl Into<String>) -> Self {
        Error::Structure(msg.into())
    }

    pub fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }

    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
