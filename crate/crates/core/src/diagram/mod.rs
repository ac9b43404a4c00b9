//! Planar intertwiner diagrams and their coefficient vectors.
//!
//! A diagram has `k` external vertices on the boundary of a disk, an equality
//! partition of the externals (double-strike classes), single-strike edges
//! among externals and `n_int` internal vertices, and is evaluated on a graph
//! by counting homomorphisms with the externals pinned.

pub mod count;
pub mod enumerate;
pub mod planarity;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;
use crate::linalg::SpanBasis;
use crate::symmetry::OrbitIndex;

pub use count::{coeff_vector, raw_value, CountMode};
pub use enumerate::{enumerate_diagrams, noncrossing_partitions, EnumerationBudget};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DiagramError {
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("diagram has {diagram} externals but the orbit index has arity {index}")]
    ArityMismatch { diagram: usize, index: usize },
    #[error("cannot parse diagram text: {0}")]
    Parse(String),
    #[error("orbit index belongs to a different graph")]
    HashMismatch,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Diagram {
    pub k: usize,
    /// Classes sorted internally and by their least element.
    pub partition: Vec<Vec<usize>>,
    pub ext_ext: Vec<(usize, usize)>,
    /// `(external, internal)` pairs.
    pub ext_int: Vec<(usize, usize)>,
    pub int_int: Vec<(usize, usize)>,
    pub n_int: usize,
}

impl Diagram {
    /// Normalizes orderings; does not validate.
    pub fn new(
        k: usize,
        partition: Vec<Vec<usize>>,
        ext_ext: Vec<(usize, usize)>,
        ext_int: Vec<(usize, usize)>,
        int_int: Vec<(usize, usize)>,
        n_int: usize,
    ) -> Self {
        let mut partition: Vec<Vec<usize>> = partition
            .into_iter()
            .map(|mut c| {
                c.sort_unstable();
                c
            })
            .collect();
        partition.sort();
        let norm = |mut v: Vec<(usize, usize)>| {
            for e in v.iter_mut() {
                if e.0 > e.1 {
                    *e = (e.1, e.0);
                }
            }
            v.sort_unstable();
            v
        };
        let mut ext_int = ext_int;
        ext_int.sort_unstable();
        Diagram { k, partition, ext_ext: norm(ext_ext), ext_int, int_int: norm(int_int), n_int }
    }

    /// The edge-free diagram of a partition.
    pub fn from_partition(k: usize, partition: Vec<Vec<usize>>) -> Self {
        Self::new(k, partition, vec![], vec![], vec![], 0)
    }

    pub fn discrete(k: usize) -> Self {
        Self::from_partition(k, (0..k).map(|i| vec![i]).collect())
    }

    pub fn edge_count(&self) -> usize {
        self.ext_ext.len() + self.ext_int.len() + self.int_int.len()
    }

    /// Class index of each external.
    pub fn class_of(&self) -> Vec<usize> {
        let mut out = vec![usize::MAX; self.k];
        for (c, class) in self.partition.iter().enumerate() {
            for &i in class {
                out[i] = c;
            }
        }
        out
    }

    /// Vertices `0..k` are externals and `k..k+n_int` internals.
    pub fn all_edges(&self) -> Vec<(usize, usize)> {
        let k = self.k;
        let mut out = self.ext_ext.clone();
        out.extend(self.ext_int.iter().map(|&(e, i)| (e, k + i)));
        out.extend(self.int_int.iter().map(|&(a, b)| (k + a, k + b)));
        out
    }

    pub fn internal_valency(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n_int];
        for &(_, i) in &self.ext_int {
            deg[i] += 1;
        }
        for &(a, b) in &self.int_int {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg
    }

    /// Checks indices, the partition, absence of loops and parallel edges, the
    /// internal valency bound and planarity.
    pub fn validate(&self) -> Result<(), DiagramError> {
        let bad = |m: String| Err(DiagramError::InvalidDiagram(m));
        let k = self.k;
        let mut seen = vec![false; k];
        for class in &self.partition {
            if class.is_empty() {
                return bad("empty class".into());
            }
            for &i in class {
                if i >= k || std::mem::replace(&mut seen[i], true) {
                    return bad(format!("external {i} repeated or out of range"));
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return bad("partition does not cover every external".into());
        }
        let mut edges = self.all_edges();
        for &(a, b) in &edges {
            if a == b || a >= k + self.n_int || b >= k + self.n_int {
                return bad(format!("edge ({a}, {b}) is a loop or out of range"));
            }
        }
        if self.ext_ext.iter().any(|e| e.0 >= k || e.1 >= k) || self.ext_int.iter().any(|e| e.0 >= k) {
            return bad("external index out of range".into());
        }
        edges.sort_unstable();
        if edges.windows(2).any(|w| w[0] == w[1]) {
            return bad("parallel single-strike edges".into());
        }
        if let Some(i) = self.internal_valency().iter().position(|&d| d <= 2) {
            return bad(format!("internal vertex {i} has valency at most 2"));
        }
        if !planarity::diagram_is_planar(self) {
            return bad("no planar drawing inside the disk".into());
        }
        Ok(())
    }

    /// Single-line text form, e.g. `k=4;p=0,2|1|3;ee=;ei=0-0,1-0,3-0;ii=;n=1`.
    pub fn encode(&self) -> String {
        let classes: Vec<String> = self
            .partition
            .iter()
            .map(|c| c.iter().map(usize::to_string).collect::<Vec<_>>().join(","))
            .collect();
        let pairs = |v: &[(usize, usize)]| v.iter().map(|(a, b)| format!("{a}-{b}")).collect::<Vec<_>>().join(",");
        format!(
            "k={};p={};ee={};ei={};ii={};n={}",
            self.k,
            classes.join("|"),
            pairs(&self.ext_ext),
            pairs(&self.ext_int),
            pairs(&self.int_int),
            self.n_int
        )
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.encode())
    }
}

impl fmt::Debug for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Diagram({})", self.encode())
    }
}

impl FromStr for Diagram {
    type Err = DiagramError;

    /// Accepts exactly the output of [`Diagram::encode`].
    fn from_str(s: &str) -> Result<Self, DiagramError> {
        let err = |m: &str| DiagramError::Parse(format!("{m} in {s:?}"));
        let fields: Vec<&str> = s.split(';').collect();
        let keys = ["k", "p", "ee", "ei", "ii", "n"];
        if fields.len() != keys.len() {
            return Err(err("expected six fields"));
        }
        let mut vals = Vec::new();
        for (f, key) in fields.iter().zip(keys) {
            let v = f
                .strip_prefix(key)
                .and_then(|r| r.strip_prefix('='))
                .ok_or_else(|| err(&format!("missing {key}=")))?;
            vals.push(v);
        }
        let num = |t: &str| t.parse::<usize>().map_err(|_| err(&format!("bad number {t:?}")));
        let pairs = |t: &str| -> Result<Vec<(usize, usize)>, DiagramError> {
            if t.is_empty() {
                return Ok(vec![]);
            }
            t.split(',')
                .map(|p| {
                    let (a, b) = p.split_once('-').ok_or_else(|| err("bad pair"))?;
                    Ok((num(a)?, num(b)?))
                })
                .collect()
        };
        let k = num(vals[0])?;
        let partition = if vals[1].is_empty() {
            vec![]
        } else {
            vals[1]
                .split('|')
                .map(|c| c.split(',').map(num).collect::<Result<Vec<_>, _>>())
                .collect::<Result<Vec<_>, _>>()?
        };
        let d = Diagram::new(k, partition, pairs(vals[2])?, pairs(vals[3])?, pairs(vals[4])?, num(vals[5])?);
        if d.encode() != s {
            return Err(err("not in canonical form"));
        }
        Ok(d)
    }
}

impl Serialize for Diagram {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.encode())
    }
}

impl<'de> Deserialize<'de> for Diagram {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The 3-external diagram with one internal vertex joined to every external.
pub fn gamma0() -> Diagram {
    Diagram::new(3, vec![vec![0], vec![1], vec![2]], vec![], vec![(0, 0), (1, 0), (2, 0)], vec![], 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Gamma0Reduction {
    Reduces,
    DoesNotReduce,
}

/// Whether the vector of [`gamma0`] lies in the span of the internal-free
/// 3-diagrams other than the triangle.
pub fn gamma0_reduction_check(g: &Graph, index3: &OrbitIndex) -> Result<Gamma0Reduction, DiagramError> {
    let triangle = Diagram::new(3, vec![vec![0], vec![1], vec![2]], vec![(0, 1), (0, 2), (1, 2)], vec![], vec![], 0);
    let mut basis = SpanBasis::new(index3.len());
    let catalog = enumerate_diagrams(3, EnumerationBudget { max_internal: 0, max_edges: 3 });
    for (id, d) in catalog.iter().filter(|d| **d != triangle).enumerate() {
        basis.insert(id, &coeff_vector(g, index3, d)?.values);
    }
    let target = coeff_vector(g, index3, &gamma0())?;
    Ok(if basis.contains(&target.values) { Gamma0Reduction::Reduces } else { Gamma0Reduction::DoesNotReduce })
}
