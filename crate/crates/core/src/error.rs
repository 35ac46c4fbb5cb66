use crate::spectrum::ProblemKind;

/// Errors produced anywhere in the toolkit.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{what} out of supported range: {value}")]
    Range { what: &'static str, value: f64 },

    #[error("{routine} failed to converge: {detail}")]
    NoConvergence { routine: &'static str, detail: String },

    #[error("rasterization produced an empty mask")]
    EmptyDomain,

    #[error("mask is not 4-connected ({components} components)")]
    Disconnected { components: usize },

    #[error("sparse factorization failed: {0}")]
    Factorization(String),

    #[error("eigensolver stopped after {iterations} restarts; residuals {residuals:?}")]
    EigenNotConverged {
        iterations: usize,
        residuals: Vec<f64>,
    },

    #[error("spectrum metadata mismatch: {0}")]
    Mismatch(String),

    #[error("spectrum too short: need {need} values, have {have}")]
    SpectrumTooShort { need: usize, have: usize },

    #[error("missing {0:?} spectrum")]
    MissingSpectrum(ProblemKind),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("inconsistent input: {0}")]
    Inconsistent(String),

    #[error("unknown inequality id `{0}`")]
    UnknownInequality(String),

    #[error("config: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
