//! Simple undirected graphs, finite-field geometry, and the graph families
//! that occur in the classification of 3-transitive graphs.

pub mod cayley;
pub mod families;
pub mod field;
pub mod graph6;
pub mod quadratic;
pub mod srg;

use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::bitset::Bitset;

pub use cayley::{CayleySet, RecursionReport, Sign};
pub use families::FamilySpec;
pub use srg::{SrgParams, ThreePointParams, ThreePointValue};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("modulus {0} is not prime")]
    NonPrimeModulus(u32),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("edge ({0}, {1}) is a loop or out of range")]
    InvalidEdge(usize, usize),
    #[error("graph is not strongly regular: {detail} (witness {u}, {v})")]
    NotStronglyRegular { u: usize, v: usize, detail: String },
    #[error(
        "graph is not 3-point regular: triples {first:?} and {second:?} have {edges} edges \
         but {first_count} vs {second_count} common neighbours"
    )]
    NotThreePointRegular {
        edges: usize,
        first: [usize; 3],
        second: [usize; 3],
        first_count: usize,
        second_count: usize,
    },
}

/// Where a graph came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    Family { name: String, params: Vec<(String, String)> },
    Ingested { source: String },
    Derived { operation: String, of: Box<Provenance> },
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Family { name, params } => {
                write!(f, "{name}")?;
                if !params.is_empty() {
                    let ps: Vec<String> = params.iter().map(|(k, v)| format!("{k}={v}")).collect();
                    write!(f, "({})", ps.join(","))?;
                }
                Ok(())
            }
            Provenance::Ingested { source } => write!(f, "ingested:{source}"),
            Provenance::Derived { operation, of } => write!(f, "{operation}({of})"),
        }
    }
}

/// An immutable simple graph on vertices `0..n` with bitset adjacency rows.
#[derive(Clone)]
pub struct Graph {
    rows: Vec<Bitset>,
    provenance: Provenance,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("edges", &self.edge_count())
            .field("provenance", &self.provenance.to_string())
            .finish()
    }
}

impl Graph {
    pub fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
        provenance: Provenance,
    ) -> Result<Self, GraphError> {
        let mut rows = vec![Bitset::new(n); n];
        for (u, v) in edges {
            if u == v || u >= n || v >= n {
                return Err(GraphError::InvalidEdge(u, v));
            }
            rows[u].insert(v);
            rows[v].insert(u);
        }
        Ok(Graph { rows, provenance })
    }

    /// Builds a graph from an adjacency predicate evaluated on each unordered pair.
    pub fn from_fn(n: usize, provenance: Provenance, mut adjacent: impl FnMut(usize, usize) -> bool) -> Self {
        let mut rows = vec![Bitset::new(n); n];
        for u in 0..n {
            for v in (u + 1)..n {
                if adjacent(u, v) {
                    rows[u].insert(v);
                    rows[v].insert(u);
                }
            }
        }
        let g = Graph { rows, provenance };
        g.debug_check();
        g
    }

    fn debug_check(&self) {
        debug_assert!(self.is_symmetric_loop_free());
    }

    /// Symmetric adjacency with an empty diagonal.
    pub fn is_symmetric_loop_free(&self) -> bool {
        let n = self.n();
        (0..n).all(|u| !self.rows[u].contains(u) && self.rows[u].iter().all(|v| self.rows[v].contains(u)))
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    #[inline]
    pub fn neighbors(&self, u: usize) -> &Bitset {
        &self.rows[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.rows[u].count()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n()).map(|u| self.degree(u)).collect()
    }

    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.degrees();
        match d.first() {
            None => Some(0),
            Some(&first) => d.iter().all(|&x| x == first).then_some(first),
        }
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(Bitset::count).sum::<usize>() / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n() {
            out.extend(self.rows[u].iter().filter(|&v| v > u).map(|v| (u, v)));
        }
        out
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn with_provenance(mut self, provenance: Provenance) -> Self {
        self.provenance = provenance;
        self
    }

    pub fn complement(&self) -> Graph {
        let n = self.n();
        let rows = (0..n)
            .map(|u| {
                let mut r = self.rows[u].complement();
                r.remove(u);
                r
            })
            .collect();
        Graph {
            rows,
            provenance: Provenance::Derived {
                operation: "complement".into(),
                of: Box::new(self.provenance.clone()),
            },
        }
    }

    /// Relabels vertices so that old vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        let n = self.n();
        assert_eq!(perm.len(), n);
        let mut rows = vec![Bitset::new(n); n];
        for u in 0..n {
            for v in self.rows[u].iter() {
                rows[perm[u]].insert(perm[v]);
            }
        }
        Graph { rows, provenance: self.provenance.clone() }
    }

    pub fn is_connected(&self) -> bool {
        let n = self.n();
        if n == 0 {
            return true;
        }
        let mut seen = Bitset::new(n);
        seen.insert(0);
        let mut stack = vec![0];
        while let Some(u) = stack.pop() {
            for v in self.rows[u].iter() {
                if !seen.contains(v) {
                    seen.insert(v);
                    stack.push(v);
                }
            }
        }
        seen.count() == n
    }

    /// SHA-256 over the vertex count and the upper-triangular adjacency bits.
    pub fn adjacency_hash(&self) -> AdjacencyHash {
        let mut h = Sha256::new();
        h.update((self.n() as u64).to_le_bytes());
        for row in &self.rows {
            for w in row.words() {
                h.update(w.to_le_bytes());
            }
        }
        AdjacencyHash(h.finalize().into())
    }

    /// Adjacency-list JSON for debugging.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "n": self.n(),
            "provenance": self.provenance.to_string(),
            "adjacency": (0..self.n()).map(|u| self.rows[u].iter().collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }
}

/// Content hash of an adjacency matrix; keys every cache and certificate.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AdjacencyHash(pub [u8; 32]);

impl AdjacencyHash {
    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn from_hex(s: &str) -> Option<Self> {
        if s.len() != 64 {
            return None;
        }
        let mut out = [0u8; 32];
        for (i, chunk) in s.as_bytes().chunks(2).enumerate() {
            let hex = std::str::from_utf8(chunk).ok()?;
            out[i] = u8::from_str_radix(hex, 16).ok()?;
        }
        Some(AdjacencyHash(out))
    }
}

impl fmt::Debug for AdjacencyHash {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", &self.to_hex()[..16])
    }
}

impl fmt::Display for AdjacencyHash {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl Serialize for AdjacencyHash {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_hex())
    }
}

impl<'de> Deserialize<'de> for AdjacencyHash {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        AdjacencyHash::from_hex(&s).ok_or_else(|| serde::de::Error::custom("bad adjacency hash"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prov() -> Provenance {
        Provenance::Ingested { source: "test".into() }
    }

    #[test]
    fn rejects_loops_and_out_of_range() {
        assert_eq!(Graph::from_edges(3, [(1, 1)], prov()), Err(GraphError::InvalidEdge(1, 1)));
        assert_eq!(Graph::from_edges(3, [(0, 3)], prov()), Err(GraphError::InvalidEdge(0, 3)));
    }

    #[test]
    fn complement_is_involutive() {
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (3, 4)], prov()).unwrap();
        let cc = g.complement().complement();
        assert_eq!(g, cc);
        assert!(g.complement().is_symmetric_loop_free());
    }

    #[test]
    fn hash_hex_round_trip() {
        let g = Graph::from_edges(4, [(0, 1)], prov()).unwrap();
        let h = g.adjacency_hash();
        assert_eq!(AdjacencyHash::from_hex(&h.to_hex()), Some(h));
        let g2 = Graph::from_edges(4, [(0, 2)], prov()).unwrap();
        assert_ne!(g2.adjacency_hash(), h);
    }
}
