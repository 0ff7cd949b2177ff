//! A workbench for finitely presented presheaf categories.
//!
//! The crate builds finite index categories with explicit composition
//! tables, presheaves of finite sets over them, and the limit/colimit
//! constructions needed to manufacture cylinder-style cofibrations
//! (`gtc`), search for lifts, and assemble retract certificates that an
//! independent checker can re-verify from raw component tables.
//!
//! Everything is deterministic: constructed objects carry canonical
//! element orderings, searches explore assignments in a fixed order, and
//! serialized reports are byte-stable across runs.

pub mod certificate;
pub mod error;
pub mod frobenius;
pub mod generate;
pub mod gtc;
pub mod index_cat;
pub mod lifting;
pub mod limits;
pub mod presheaf;
pub mod scenario;
mod search;
pub mod suites;

pub use error::Error;

/// Search budget: a cap on visited partial assignments during
/// backtracking enumeration. Exceeding it is an explicit error,
/// never silent truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: u64,
}

impl Budget {
    pub const DEFAULT_MAX_NODES: u64 = 10_000_000;

    pub fn new(max_nodes: u64) -> Self {
        Budget { max_nodes }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_nodes: Self::DEFAULT_MAX_NODES }
    }
}
