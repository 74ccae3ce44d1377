use thiserror::Error;

use crate::lp::LpError;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("invalid coalition: {0}")]
    InvalidCoalition(String),

    #[error("salary of agent {agent} is below its minimal salary")]
    SalaryBelowMinimum { agent: u32 },

    #[error("hourly salary model requires a schedule covering every member")]
    MissingSchedule,

    #[error("coalition is not feasible")]
    InfeasibleCoalition,

    #[error("{what} exceeds the configured cap of {cap}")]
    CapExceeded { what: &'static str, cap: usize },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("source and target are adjacent; no agents are required")]
    NoAgentsRequired,

    #[error("generator: {0}")]
    Generator(String),

    #[error(transparent)]
    Lp(#[from] LpError),
}
