use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A numeric argument fell outside the domain of the function.
    #[error("{name} out of domain: {value} ({reason})")]
    Domain {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    /// Invalid configuration; `field` is a dotted path into the config.
    #[error("invalid configuration at `{field}`: {reason}")]
    Config { field: String, reason: String },

    #[error("unknown preset `{name}` (valid presets: {valid})")]
    UnknownPreset { name: String, valid: String },

    #[error("unknown chart kind `{0}`")]
    UnknownChart(String),

    #[error("chart kind `{kind}` cannot be drawn from {given}")]
    ChartInput { kind: &'static str, given: &'static str },

    /// No neuron qualified as a governor this month.
    #[error("no governors: reward pool cannot be distributed")]
    NoGovernors,

    #[error("month {month} is beyond the simulation horizon of {horizon} months")]
    HorizonExceeded { month: u32, horizon: u32 },

    #[error("nothing to export: frame list is empty")]
    EmptyFrames,

    #[error("scenario `{scenario}` failed: {source}")]
    Scenario {
        scenario: String,
        #[source]
        source: Box<Error>,
    },

    #[error("I/O error at {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed CSV in {}: {reason}", path.display())]
    Csv { path: PathBuf, reason: String },
}

impl Error {
    pub(crate) fn domain(name: &'static str, value: f64, reason: &'static str) -> Self {
        Error::Domain {
            name,
            value,
            reason,
        }
    }

    pub(crate) fn config(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Config {
            field: field.into(),
            reason: reason.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// True for errors caused by user input rather than the environment.
    pub fn is_usage(&self) -> bool {
        match self {
            Error::Io { .. } | Error::Csv { .. } => false,
            Error::Scenario { source, .. } => source.is_usage(),
            _ => true,
        }
    }
}
