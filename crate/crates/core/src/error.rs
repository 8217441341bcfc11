use thiserror::Error;

/// Errors raised by the certified evaluators and the oracle.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Argument outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A requested accuracy cannot be certified; carries the best radius found.
    #[error("accuracy {requested:e} not attainable (best certified radius {best:e})")]
    Accuracy { requested: f64, best: f64 },

    /// An internal table or iteration limit was exceeded.
    #[error("resource limit: {0}")]
    Resource(String),

    /// No rigorous bound applies to the requested configuration.
    #[error("no applicable bound: {0}")]
    NoApplicableBound(String),

    /// Two routes of an oracle computation disagree.
    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

impl Error {
    /// Short machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::Accuracy { .. } => "accuracy",
            Error::Resource(_) => "resource",
            Error::NoApplicableBound(_) => "no_applicable_bound",
            Error::Consistency(_) => "consistency",
        }
    }
}
