use thiserror::Error;

use crate::game::JointType;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{name} = {value} is outside the valid interval [{min}, {max}]")]
    Domain {
        name: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },

    #[error("conditional distribution for joint type {joint_type} sums to {sum}, expected 1")]
    NotNormalized { joint_type: JointType, sum: f64 },

    #[error("negative probability {value} at joint type {joint_type}, action index {action}")]
    NegativeProbability {
        joint_type: JointType,
        action: usize,
        value: f64,
    },

    #[error("invalid {what}: {reason}")]
    Invalid { what: &'static str, reason: String },

    #[error("linear program is infeasible")]
    Infeasible,

    #[error("linear program is unbounded")]
    Unbounded,

    #[error("{what}: analytic value {analytic} disagrees with independent value {numeric}")]
    OracleMismatch {
        what: &'static str,
        analytic: f64,
        numeric: f64,
    },
}

impl Error {
    pub(crate) fn invalid(what: &'static str, reason: impl Into<String>) -> Self {
        Error::Invalid {
            what,
            reason: reason.into(),
        }
    }
}
