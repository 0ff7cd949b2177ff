//! Error taxonomy shared by every module.
//!
//! Three kinds of failure are kept apart: contract violations (the
//! caller handed in incompatible or malformed data), blown search
//! budgets (the enumeration was cut off, distinct from "no result"),
//! and failed mathematical checks (a construction did not satisfy an
//! equation it was required to satisfy).

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Incompatible or malformed inputs: mismatched bases, maps whose
    /// endpoints do not line up, squares that do not commute, tables
    /// with out-of-range entries.
    #[error("contract violation: {0}")]
    Contract(String),

    /// A backtracking search visited more partial assignments than the
    /// configured cap. `at` names the level being assigned when the
    /// budget ran out.
    #[error("search budget exceeded (cap {limit} nodes) while assigning level {at}")]
    BudgetExceeded { limit: u64, at: String },

    /// A required equation or property failed during a construction.
    #[error("check failed [{check}]: {detail}")]
    CheckFailed { check: String, detail: String },

    /// A fibration witness could not solve a lifting problem it was
    /// required to solve.
    #[error("not a fibration against required instance: {detail}")]
    NotFibration {
        detail: String,
        problem: Box<crate::lifting::LiftingProblem>,
    },

    /// Scenario or certificate input that does not parse or does not
    /// satisfy its schema.
    #[error("invalid input: {0}")]
    Schema(String),
}

impl Error {
    pub fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }

    pub fn check(check: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::CheckFailed { check: check.into(), detail: detail.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
