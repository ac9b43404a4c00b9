//! Strong regularity and 3-point regularity checks.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Graph, GraphError};
use crate::bitset::Bitset;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SrgParams {
    pub v: usize,
    pub k: usize,
    pub lambda: usize,
    pub mu: usize,
}

impl SrgParams {
    /// `k (k - lambda - 1) = (v - k - 1) mu`.
    pub fn is_feasible(&self) -> bool {
        self.k * (self.k - self.lambda - 1) == (self.v - self.k - 1) * self.mu
    }
}

impl fmt::Display for SrgParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.v, self.k, self.lambda, self.mu)
    }
}

/// Checks that the graph is connected, regular, neither complete nor empty, and
/// that common-neighbour counts depend only on adjacency.
pub fn verify_srg(g: &Graph) -> Result<SrgParams, GraphError> {
    let n = g.n();
    let not_srg = |u, v, detail: &str| GraphError::NotStronglyRegular { u, v, detail: detail.into() };
    if n < 2 {
        return Err(not_srg(0, 0, "fewer than two vertices"));
    }
    let degrees = g.degrees();
    if let Some(u) = degrees.iter().position(|&d| d != degrees[0]) {
        return Err(not_srg(0, u, "not regular"));
    }
    let k = degrees[0];
    if k == 0 || k == n - 1 {
        return Err(not_srg(0, 0, "empty or complete"));
    }
    if !g.is_connected() {
        return Err(not_srg(0, 0, "disconnected"));
    }
    let mut lambda: Option<(usize, usize, usize)> = None;
    let mut mu: Option<(usize, usize, usize)> = None;
    for u in 0..n {
        for v in (u + 1)..n {
            let c = g.neighbors(u).intersection_count(g.neighbors(v));
            let slot = if g.adjacent(u, v) { &mut lambda } else { &mut mu };
            match *slot {
                None => *slot = Some((c, u, v)),
                Some((c0, u0, v0)) if c0 != c => {
                    let what = if g.adjacent(u, v) { "lambda" } else { "mu" };
                    return Err(not_srg(u, v, &format!("{what} is {c} here but {c0} at ({u0}, {v0})")));
                }
                _ => {}
            }
        }
    }
    let params = SrgParams { v: n, k, lambda: lambda.map_or(0, |x| x.0), mu: mu.map_or(0, |x| x.0) };
    debug_assert!(params.is_feasible());
    Ok(params)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ThreePointValue {
    Count(usize),
    /// No triple with this many edges occurs in the graph.
    Unrealizable,
}

impl fmt::Display for ThreePointValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ThreePointValue::Count(c) => write!(f, "{c}"),
            ThreePointValue::Unrealizable => write!(f, "-"),
        }
    }
}

/// `q[i]` is the common-neighbour count of a triple with `i` edges among it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThreePointParams {
    pub q: [ThreePointValue; 4],
}

impl ThreePointParams {
    pub fn counts(&self) -> [Option<usize>; 4] {
        self.q.map(|v| match v {
            ThreePointValue::Count(c) => Some(c),
            ThreePointValue::Unrealizable => None,
        })
    }
}

impl fmt::Display for ThreePointParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.q[0], self.q[1], self.q[2], self.q[3])
    }
}

pub fn three_point_parameters(g: &Graph) -> Result<ThreePointParams, GraphError> {
    let n = g.n();
    let mut seen: [Option<(usize, [usize; 3])>; 4] = [None; 4];
    let mut common = Bitset::new(n);
    for a in 0..n {
        for b in (a + 1)..n {
            let ab = g.adjacent(a, b) as usize;
            common.clone_from(g.neighbors(a));
            common.intersect_with(g.neighbors(b));
            for c in (b + 1)..n {
                let edges = ab + g.adjacent(a, c) as usize + g.adjacent(b, c) as usize;
                let count = common.intersection_count(g.neighbors(c));
                match seen[edges] {
                    None => seen[edges] = Some((count, [a, b, c])),
                    Some((first_count, first)) if first_count != count => {
                        return Err(GraphError::NotThreePointRegular {
                            edges,
                            first,
                            second: [a, b, c],
                            first_count,
                            second_count: count,
                        })
                    }
                    _ => {}
                }
            }
        }
    }
    Ok(ThreePointParams {
        q: seen.map(|s| s.map_or(ThreePointValue::Unrealizable, |(c, _)| ThreePointValue::Count(c))),
    })
}
