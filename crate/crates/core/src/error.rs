use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),

    #[error("parameters outside the admissible domain: {0}")]
    Domain(String),

    #[error("{what} exceeds the configured cap of {cap}")]
    Resource { what: String, cap: usize },

    #[error("the intersection is empty")]
    Infeasible,

    #[error("construction failed: {0}")]
    Construction(String),

    #[error("condition is unattainable: {0}")]
    Unattainable(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn resource(what: impl Into<String>, cap: usize) -> Self {
        Error::Resource {
            what: what.into(),
            cap,
        }
    }
}
