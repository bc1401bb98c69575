//! Kripke-Lewis semantics for belief update and belief revision: a formula
//! language with belief, necessity and conditional operators, finite frames
//! with selection functions, frame-property and schema checkers, a
//! finite-world lifting algebra and a Hilbert-style proof checker.

pub mod formula;
pub mod frame;
pub mod model;
pub mod proofkit;
pub mod schema;
pub mod suite;
pub mod worlds;

use serde::{Deserialize, Serialize};

/// Result of checking a universally quantified claim.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "witness", rename_all = "snake_case")]
pub enum Outcome<W> {
    Holds,
    Violated(W),
}

impl<W> Outcome<W> {
    pub fn holds(&self) -> bool {
        matches!(self, Outcome::Holds)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Outcome::Holds => None,
            Outcome::Violated(w) => Some(w),
        }
    }
}
