use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A distribution or instance parameter lies outside its domain.
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    /// The requested construction has no valid parameterization
    /// (non-positive variance, probabilities outside (0, 1), ...).
    #[error("infeasible instance: {0}")]
    Infeasible(String),

    #[error("statistics are empty (no observations)")]
    EmptyStatistics,

    #[error("horizon {horizon} is too short: {reason}")]
    HorizonTooShort { horizon: u64, reason: String },

    #[error("arm index {index} out of range for {arms} arms")]
    UnknownArm { index: usize, arms: usize },

    #[error("traces have heterogeneous horizons ({first} vs {other})")]
    HeterogeneousHorizons { first: u64, other: u64 },

    /// A bound formula is undefined for this instance.
    #[error("bound not applicable: {0}")]
    NotApplicable(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("scenario `{name}`: {source}")]
    InScenario {
        name: String,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    /// True for errors caused by parameter values that cannot form a valid
    /// bandit instance, as opposed to malformed input.
    pub fn is_infeasible(&self) -> bool {
        match self {
            Error::Infeasible(_) | Error::InvalidParameter { .. } => true,
            Error::InScenario { source, .. } => source.is_infeasible(),
            _ => false,
        }
    }

    pub(crate) fn in_scenario(self, name: &str) -> Self {
        Error::InScenario {
            name: name.to_string(),
            source: Box::new(self),
        }
    }
}
