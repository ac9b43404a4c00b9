//! Orbit-compressed coefficient vectors of elements of the k-box space.

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::diagram::Diagram;
use crate::graph::AdjacencyHash;

/// How an element was obtained. Ids refer to earlier elements of the same
/// derivation list (a span basis or a certificate).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Derivation {
    Base { diagram: Diagram },
    Product { left: usize, right: usize },
    Rot { of: usize },
    InvRot { of: usize },
    Flip,
    Literal,
}

/// One exact rational per orbit of the index the vector was computed against.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientVector {
    pub graph_hash: AdjacencyHash,
    pub k: usize,
    pub values: Vec<BigRational>,
    pub derivation: Derivation,
}

impl CoefficientVector {
    pub fn from_integers(graph_hash: AdjacencyHash, k: usize, values: &[i128], derivation: Derivation) -> Self {
        let values = values.iter().map(|&v| BigRational::from_integer(v.into())).collect();
        CoefficientVector { graph_hash, k, values, derivation }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    /// Values as integers when every denominator is one and the value fits.
    pub fn as_i128(&self) -> Option<Vec<i128>> {
        self.values
            .iter()
            .map(|v| if v.denom().is_one() { i128::try_from(v.numer()).ok() } else { None })
            .collect()
    }
}
