use thiserror::Error;

/// Errors produced by construction, verification gates and simulation.
#[derive(Debug, Error)]
pub enum Error {
    #[error("modulus must be an odd integer >= 3, got {0}")]
    InvalidModulus(u64),

    #[error("residues live in different rings (mod {0} vs mod {1})")]
    ModulusMismatch(u64, u64),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("malformed {what}: {detail}")]
    Malformed { what: &'static str, detail: String },

    #[error("{0} failed verification")]
    NotVerified(&'static str),

    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("exhaustive demand set has {needed} vectors, budget is {budget}; use sampled mode")]
    BudgetExceeded { needed: u128, budget: u128 },

    #[error("structural simulation error: {0}")]
    Structural(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn param(msg: impl Into<String>) -> Error {
    Error::Parameter(msg.into())
}

pub(crate) fn malformed(what: &'static str, detail: impl Into<String>) -> Error {
    Error::Malformed {
        what,
        detail: detail.into(),
    }
}
