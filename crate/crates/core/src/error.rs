use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Everything that can go wrong while loading or analysing an instance.
///
/// The variants line up with the CLI exit codes: refusals (1), failed
/// assertions (2) and bad input (3).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),
    /// A precondition such as a manifold certificate does not hold.
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// A theorem's hypothesis is false, so its conclusion is not evaluated.
    #[error("refused: hypothesis `{hypothesis}` does not hold")]
    Refused { hypothesis: String },
    /// A property that must hold on every valid input failed.
    #[error("assertion failed: {0}")]
    Assertion(String),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub fn refused(hypothesis: impl Into<String>) -> Self {
        Error::Refused { hypothesis: hypothesis.into() }
    }

    pub fn assertion(msg: impl Into<String>) -> Self {
        Error::Assertion(msg.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Refused { .. } | Error::Precondition(_) => 1,
            Error::Assertion(_) => 2,
            Error::Input(_) => 3,
        }
    }
}

/// Returns an [`Error::Assertion`] unless `cond` holds.
pub(crate) fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Assertion(msg()))
    }
}
