//! Evaluation of a diagram on a graph: equality test on the double-strike
//! classes times the number of homomorphisms with externals pinned.

use rayon::prelude::*;

use super::{Diagram, DiagramError};
use crate::bitset::Bitset;
use crate::graph::Graph;
use crate::symmetry::OrbitIndex;
use crate::vector::{CoefficientVector, Derivation};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CountMode {
    /// Adjacency-preserving maps; the mode used everywhere in certificates.
    #[default]
    Homomorphism,
    /// Internal vertices map injectively and away from the external images.
    /// Exposed only for comparison.
    Injective,
}

/// A diagram prepared for repeated evaluation: internal visit order and the
/// already-placed neighbours of each internal at its turn.
#[derive(Clone, Debug)]
pub struct Counter {
    k: usize,
    classes: Vec<Vec<usize>>,
    ext_ext: Vec<(usize, usize)>,
    order: Vec<usize>,
    /// For position `p`, the externals adjacent to `order[p]`.
    ext_nbrs: Vec<Vec<usize>>,
    /// For position `p`, earlier positions adjacent to `order[p]`.
    int_nbrs: Vec<Vec<usize>>,
    /// Positions from which no two remaining internals are adjacent.
    independent_from: usize,
    mode: CountMode,
}

impl Counter {
    /// Greedy order: next is the internal with the most placed neighbours
    /// (externals count as placed), ties to the smaller index.
    pub fn new(d: &Diagram, mode: CountMode) -> Self {
        let n = d.n_int;
        let mut ext_deg = vec![0usize; n];
        for &(_, i) in &d.ext_int {
            ext_deg[i] += 1;
        }
        let mut placed = vec![false; n];
        let mut order = Vec::with_capacity(n);
        for _ in 0..n {
            let score = |v: usize| {
                ext_deg[v]
                    + d.int_int
                        .iter()
                        .filter(|&&(a, b)| (a == v && placed[b]) || (b == v && placed[a]))
                        .count()
            };
            let best = (0..n).filter(|&v| !placed[v]).max_by_key(|&v| (score(v), std::cmp::Reverse(v))).unwrap();
            placed[best] = true;
            order.push(best);
        }
        Self::with_order(d, order, mode)
    }

    /// Uses the given visit order of internals (a permutation of `0..n_int`).
    pub fn with_order(d: &Diagram, order: Vec<usize>, mode: CountMode) -> Self {
        let n = d.n_int;
        assert_eq!(order.len(), n);
        let mut pos = vec![usize::MAX; n];
        for (p, &v) in order.iter().enumerate() {
            pos[v] = p;
        }
        let mut ext_nbrs = vec![Vec::new(); n];
        for &(e, i) in &d.ext_int {
            ext_nbrs[pos[i]].push(e);
        }
        let mut int_nbrs = vec![Vec::new(); n];
        let mut independent_from = 0;
        for &(a, b) in &d.int_int {
            let (pa, pb) = (pos[a], pos[b]);
            let (early, late) = (pa.min(pb), pa.max(pb));
            int_nbrs[late].push(early);
            independent_from = independent_from.max(early + 1);
        }
        Counter {
            k: d.k,
            classes: d.partition.clone(),
            ext_ext: d.ext_ext.clone(),
            order,
            ext_nbrs,
            int_nbrs,
            independent_from,
            mode,
        }
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// `d_Γ · c_Γ` at the tuple `x`.
    pub fn value(&self, g: &Graph, x: &[usize]) -> u128 {
        assert_eq!(x.len(), self.k, "tuple arity");
        if self.classes.iter().any(|c| c.iter().any(|&i| x[i] != x[c[0]])) {
            return 0;
        }
        if self.ext_ext.iter().any(|&(a, b)| !g.adjacent(x[a], x[b])) {
            return 0;
        }
        let n = g.n();
        let mut images = vec![0usize; self.order.len()];
        let mut used = Bitset::new(n);
        if self.mode == CountMode::Injective {
            for &v in x {
                used.insert(v);
            }
        }
        self.extend(g, x, 0, &mut images, &mut used)
    }

    fn candidates(&self, g: &Graph, x: &[usize], p: usize, images: &[usize]) -> Bitset {
        let mut cand = Bitset::full(g.n());
        for &e in &self.ext_nbrs[p] {
            cand.intersect_with(g.neighbors(x[e]));
        }
        for &q in &self.int_nbrs[p] {
            cand.intersect_with(g.neighbors(images[q]));
        }
        cand
    }

    fn extend(&self, g: &Graph, x: &[usize], p: usize, images: &mut [usize], used: &mut Bitset) -> u128 {
        if p == self.order.len() {
            return 1;
        }
        if self.mode == CountMode::Homomorphism && p >= self.independent_from {
            // the remaining internals only see placed vertices
            let mut prod: u128 = 1;
            for q in p..self.order.len() {
                let c = self.candidates(g, x, q, images).count() as u128;
                if c == 0 {
                    return 0;
                }
                prod *= c;
            }
            return prod;
        }
        let mut cand = self.candidates(g, x, p, images);
        if self.mode == CountMode::Injective {
            cand.difference_with(used);
        }
        let mut total = 0;
        for v in cand.iter() {
            images[p] = v;
            used.insert(v);
            total += self.extend(g, x, p + 1, images, used);
            used.remove(v);
        }
        total
    }
}

/// Raw (uncompressed) coefficient of `d` at the tuple `x`.
pub fn raw_value(g: &Graph, d: &Diagram, x: &[usize], mode: CountMode) -> u128 {
    Counter::new(d, mode).value(g, x)
}

/// The orbit-compressed coefficient vector of `d`, one exact value per orbit.
pub fn coeff_vector(g: &Graph, index: &OrbitIndex, d: &Diagram) -> Result<CoefficientVector, DiagramError> {
    coeff_vector_with(g, index, d, CountMode::Homomorphism)
}

pub fn coeff_vector_with(
    g: &Graph,
    index: &OrbitIndex,
    d: &Diagram,
    mode: CountMode,
) -> Result<CoefficientVector, DiagramError> {
    if d.k != index.k() {
        return Err(DiagramError::ArityMismatch { diagram: d.k, index: index.k() });
    }
    let hash = g.adjacency_hash();
    if hash != index.graph_hash() {
        return Err(DiagramError::HashMismatch);
    }
    d.validate()?;
    let counter = Counter::new(d, mode);
    let values: Vec<u128> = index.representatives().par_iter().map(|rep| counter.value(g, rep)).collect();
    let values: Vec<i128> = values.into_iter().map(|v| i128::try_from(v).expect("count fits in i128")).collect();
    Ok(CoefficientVector::from_integers(hash, d.k, &values, Derivation::Base { diagram: d.clone() }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families;
    use crate::symmetry::automorphism_group;

    #[test]
    fn trivial_diagrams() {
        let g = families::cycle(5).unwrap();
        let grp = automorphism_group(&g);
        let idx = OrbitIndex::build(&g, &grp, 4).unwrap();
        let ones = coeff_vector(&g, &idx, &Diagram::discrete(4)).unwrap();
        assert!(ones.as_i128().unwrap().iter().all(|&v| v == 1));
        let eq01 = Diagram::from_partition(4, vec![vec![0, 1], vec![2], vec![3]]);
        let v = coeff_vector(&g, &idx, &eq01).unwrap().as_i128().unwrap();
        for (id, rep) in idx.representatives().iter().enumerate() {
            assert_eq!(v[id], (rep[0] == rep[1]) as i128);
        }
    }

    #[test]
    fn gamma0_on_pentagon_counts_common_neighbours() {
        let g = families::cycle(5).unwrap();
        let d = super::super::gamma0();
        for x in [[0, 1, 2], [0, 0, 2], [1, 1, 1], [0, 2, 3]] {
            let common = (0..5).filter(|&v| x.iter().all(|&u| g.adjacent(u, v))).count() as u128;
            assert_eq!(raw_value(&g, &d, &x, CountMode::Homomorphism), common);
        }
    }

    #[test]
    fn injective_mode_excludes_collisions() {
        // two internals, each joined to all three externals (not planar, but countable)
        let d = Diagram::new(
            3,
            vec![vec![0], vec![1], vec![2]],
            vec![],
            vec![(0, 0), (1, 0), (2, 0), (0, 1), (1, 1), (2, 1)],
            vec![],
            2,
        );
        let g = families::complete(5).unwrap();
        // homomorphisms: both internals range over the two vertices outside the tuple
        assert_eq!(raw_value(&g, &d, &[0, 1, 2], CountMode::Homomorphism), 4);
        assert_eq!(raw_value(&g, &d, &[0, 1, 2], CountMode::Injective), 2);
    }
}
