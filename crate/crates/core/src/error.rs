use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The requested computation exceeds a configured enumeration bound.
    #[error("capacity exceeded: {what} = {requested} > {limit}")]
    Capacity {
        what: &'static str,
        requested: u128,
        limit: u128,
    },

    /// A closed-form density was requested on the wrong side of the
    /// ramified / unramified split.
    #[error("wrong branch: {0}")]
    WrongBranch(String),

    #[error("non-integral preimage: {0}")]
    NonIntegralPreimage(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
