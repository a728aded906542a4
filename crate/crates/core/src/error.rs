use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A Monte-Carlo run was configured in a way that makes the estimate meaningless.
    #[error("invalid Monte-Carlo configuration: {0}")]
    Config(String),

    /// A model validity condition does not hold (e.g. coherence interval too short).
    #[error("validity condition violated: {0}")]
    Validity(String),

    /// No blocklength up to `ceiling` reaches the requested reliability.
    #[error("target reliability {target} is infeasible for blocklengths up to {ceiling}")]
    Infeasible { target: f64, ceiling: u64 },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
