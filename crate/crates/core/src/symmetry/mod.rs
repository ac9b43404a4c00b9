//! Automorphism groups and their orbits on vertex tuples.

pub mod orbits;
pub mod perm;
pub mod refine;
pub mod schreier;
pub mod search;
pub mod union_find;

use serde::Serialize;
use thiserror::Error;

use crate::graph::Graph;

pub use orbits::{OrbitBudget, OrbitIndex, OrbitSummary, Strategy};
pub use perm::Perm;
pub use schreier::StabChain;
pub use search::{are_isomorphic, automorphism_group, canonical_form, colored_automorphism_group, PermGroup};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SymmetryError {
    #[error("tuple arity {0} is outside 1..=4")]
    UnsupportedArity(usize),
    #[error("group does not bind to the graph: {0}")]
    GroupMismatch(String),
    #[error("resource budget exceeded while building {what} ({completed} units done)")]
    ResourceBudgetExceeded { what: String, completed: usize },
    #[error("orbit cache rejected: {0}")]
    Cache(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionBoundReport {
    pub omega2: usize,
    pub omega3: usize,
    /// `omega2 <= 3 && omega3 <= 15`.
    pub three_transitive_signature: bool,
    pub complete: bool,
}

/// Orbit counts on pairs and triples, compared with the bounds satisfied by 3-transitive graphs.
pub fn dimension_bound_check(g: &Graph) -> Result<DimensionBoundReport, SymmetryError> {
    let group = automorphism_group(g);
    let omega2 = OrbitIndex::build(g, &group, 2)?.len();
    let omega3 = OrbitIndex::build(g, &group, 3)?.len();
    Ok(DimensionBoundReport {
        omega2,
        omega3,
        three_transitive_signature: omega2 <= 3 && omega3 <= 15,
        complete: g.edge_count() == g.n() * g.n().saturating_sub(1) / 2,
    })
}
