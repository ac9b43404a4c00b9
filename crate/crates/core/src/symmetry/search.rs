//! Automorphism groups and canonical forms by individualization and refinement.

use num_bigint::BigUint;

use super::perm::Perm;
use super::refine::Partition;
use super::schreier::StabChain;
use super::union_find::UnionFind;
use crate::graph::{Graph, Provenance};

/// A permutation group bound to the graph it was computed from.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    chain: StabChain,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Perm>) -> Self {
        let chain = StabChain::new(degree, &generators, &[]);
        PermGroup { degree, generators, chain }
    }

    pub fn trivial(degree: usize) -> Self {
        Self::new(degree, Vec::new())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn chain(&self) -> &StabChain {
        &self.chain
    }

    pub fn order(&self) -> BigUint {
        self.chain.order()
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.chain.contains(p)
    }

    /// Orbit representative (the minimum) of every point.
    pub fn orbit_mins(&self) -> Vec<usize> {
        point_orbits(self.degree, &self.generators)
    }

    pub fn num_orbits(&self) -> usize {
        let mins = self.orbit_mins();
        (0..self.degree).filter(|&i| mins[i] == i).count()
    }

    /// Generators of the pointwise stabilizer of `points`.
    pub fn pointwise_stabilizer(&self, points: &[usize]) -> PermGroup {
        let chain = StabChain::new(self.degree, &self.generators, points);
        let gens = chain.stabilizer_generators(points.len());
        PermGroup::new(self.degree, gens)
    }
}

pub fn point_orbits(n: usize, gens: &[Perm]) -> Vec<usize> {
    let mut uf = UnionFind::new(n);
    for g in gens {
        for i in 0..n {
            uf.union(i, g.apply(i));
        }
    }
    uf.roots()
}

pub fn is_automorphism(g: &Graph, p: &Perm) -> bool {
    is_colored_automorphism(g, &vec![0; g.n()], p)
}

fn is_colored_automorphism(g: &Graph, colors: &[usize], p: &Perm) -> bool {
    let n = g.n();
    if p.degree() != n {
        return false;
    }
    (0..n).all(|u| {
        colors[u] == colors[p.apply(u)]
            && g.degree(u) == g.degree(p.apply(u))
            && g.neighbors(u).iter().all(|v| g.adjacent(p.apply(u), p.apply(v)))
    })
}

struct FirstPath {
    /// Partition at each level, before individualizing `base[level]`.
    nodes: Vec<Partition>,
    /// Trace of the individualization at each level.
    traces: Vec<Vec<u64>>,
    base: Vec<usize>,
    leaf: Vec<usize>,
}

struct Searcher<'a> {
    g: &'a Graph,
    colors: &'a [usize],
    path: FirstPath,
}

impl<'a> Searcher<'a> {
    fn new(g: &'a Graph, colors: &'a [usize]) -> Self {
        let mut root_trace = Vec::new();
        let mut p = Partition::equitable(g, colors, &mut root_trace);
        let mut nodes = Vec::new();
        let mut traces = Vec::new();
        let mut base = Vec::new();
        while let Some(t) = p.target_cell() {
            let b = p.cell(t)[0];
            nodes.push(p.clone());
            let mut tr = Vec::new();
            p.individualize(g, b, &mut tr);
            traces.push(tr);
            base.push(b);
        }
        let leaf = p.elems().to_vec();
        Searcher { g, colors, path: FirstPath { nodes, traces, base, leaf } }
    }

    fn leaf_perm(&self, leaf: &[usize]) -> Perm {
        let mut img = vec![0; leaf.len()];
        for (i, &v) in self.path.leaf.iter().enumerate() {
            img[v] = leaf[i];
        }
        Perm::from_images(img)
    }

    /// Looks for an automorphism extending the node `p` at `level` (already
    /// individualized and matching the first path's trace there).
    fn extend(&self, p: &Partition, level: usize) -> Option<Perm> {
        if level == self.path.base.len() {
            if !p.is_discrete() {
                return None;
            }
            let perm = self.leaf_perm(p.elems());
            return is_colored_automorphism(self.g, self.colors, &perm).then_some(perm);
        }
        let reference = &self.path.nodes[level];
        let t = reference.target_cell().unwrap();
        if p.target_cell() != Some(t) {
            return None;
        }
        for &v in p.cell(t) {
            let mut child = p.clone();
            let mut tr = Vec::new();
            child.individualize(self.g, v, &mut tr);
            if tr != self.path.traces[level] {
                continue;
            }
            if let Some(perm) = self.extend(&child, level + 1) {
                return Some(perm);
            }
        }
        None
    }

    fn run(&self) -> (Vec<Perm>, Vec<usize>) {
        let n = self.g.n();
        let depth = self.path.base.len();
        let mut gens: Vec<Perm> = Vec::new();
        let mut orbit_sizes = vec![1; depth];
        for level in (0..depth).rev() {
            let node = &self.path.nodes[level];
            let b = self.path.base[level];
            let cell = node.cell(node.cell_of(b)).to_vec();
            let mut uf = UnionFind::new(n);
            for g in &gens {
                for i in 0..n {
                    uf.union(i, g.apply(i));
                }
            }
            let mut failed: Vec<usize> = Vec::new();
            let mut sorted = cell.clone();
            sorted.sort_unstable();
            for gamma in sorted {
                if uf.find(gamma) == uf.find(b) || failed.iter().any(|&f| uf.find(f) == uf.find(gamma)) {
                    continue;
                }
                let mut child = node.clone();
                let mut tr = Vec::new();
                child.individualize(self.g, gamma, &mut tr);
                let found = if tr == self.path.traces[level] { self.extend(&child, level + 1) } else { None };
                match found {
                    Some(perm) => {
                        debug_assert!((0..level).all(|i| perm.apply(self.path.base[i]) == self.path.base[i]));
                        for i in 0..n {
                            uf.union(i, perm.apply(i));
                        }
                        gens.push(perm);
                    }
                    None => failed.push(gamma),
                }
            }
            let root = uf.find(b);
            orbit_sizes[level] = cell.iter().filter(|&&v| uf.find(v) == root).count();
        }
        (gens, orbit_sizes)
    }
}

/// Full automorphism group of `g`.
pub fn automorphism_group(g: &Graph) -> PermGroup {
    colored_automorphism_group(g, &vec![0; g.n()])
}

/// Automorphisms preserving the vertex colouring.
pub fn colored_automorphism_group(g: &Graph, colors: &[usize]) -> PermGroup {
    let s = Searcher::new(g, colors);
    let (gens, orbit_sizes) = s.run();
    let group = PermGroup::new(g.n(), gens);
    debug_assert_eq!(
        group.order(),
        orbit_sizes.iter().map(|&x| BigUint::from(x)).product::<BigUint>(),
        "search tree and Schreier–Sims disagree on the group order"
    );
    group
}

/// Canonical relabeling of a graph: `canonical_labeling(g)[v]` is the new name of `v`.
/// Isomorphic graphs (respecting colours) get identical relabeled graphs.
pub fn canonical_labeling(g: &Graph, colors: &[usize], group: &PermGroup) -> Vec<usize> {
    let mut trace = Vec::new();
    let root = Partition::equitable(g, colors, &mut trace);
    let mut best: Option<(Vec<u64>, Vec<u64>, Vec<usize>)> = None;
    let mut prefix = Vec::new();
    canon_search(g, colors, group, &root, &mut trace, &mut prefix, &mut best);
    let leaf = best.expect("search reaches a leaf").2;
    let mut label = vec![0; g.n()];
    for (i, &v) in leaf.iter().enumerate() {
        label[v] = i;
    }
    label
}

fn canon_search(
    g: &Graph,
    colors: &[usize],
    group: &PermGroup,
    p: &Partition,
    trace: &mut Vec<u64>,
    prefix: &mut Vec<usize>,
    best: &mut Option<(Vec<u64>, Vec<u64>, Vec<usize>)>,
) {
    let Some(t) = p.target_cell() else {
        let leaf = p.elems().to_vec();
        let mut pos = vec![0; g.n()];
        for (i, &v) in leaf.iter().enumerate() {
            pos[v] = i;
        }
        let relabeled = g.relabel(&pos);
        let mut key: Vec<u64> = Vec::new();
        for u in 0..g.n() {
            key.push(colors[leaf[u]] as u64);
        }
        for u in 0..g.n() {
            key.extend_from_slice(relabeled.neighbors(u).words());
        }
        let better = match best {
            None => true,
            Some((bt, bk, _)) => (&*trace, &key) < (&*bt, &*bk),
        };
        if better {
            *best = Some((trace.clone(), key, leaf));
        }
        return;
    };
    if let Some((bt, _, _)) = best {
        // traces are compared lexicographically; a prefix already above the best cannot win
        let m = trace.len().min(bt.len());
        if trace[..m] > bt[..m] {
            return;
        }
    }
    let stab = group.pointwise_stabilizer(prefix);
    let mins = stab.orbit_mins();
    let cell = p.cell(t).to_vec();
    let mut seen_orbits = Vec::new();
    for v in cell {
        if seen_orbits.contains(&mins[v]) {
            continue;
        }
        seen_orbits.push(mins[v]);
        let mut child = p.clone();
        let mark = trace.len();
        child.individualize(g, v, trace);
        prefix.push(v);
        canon_search(g, colors, group, &child, trace, prefix, best);
        prefix.pop();
        trace.truncate(mark);
    }
}

/// The canonically relabeled graph.
pub fn canonical_form(g: &Graph) -> Graph {
    let group = automorphism_group(g);
    let colors = vec![0; g.n()];
    let label = canonical_labeling(g, &colors, &group);
    g.relabel(&label).with_provenance(Provenance::Derived {
        operation: "canonical".into(),
        of: Box::new(g.provenance().clone()),
    })
}

pub fn are_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.n() == b.n() && a.edge_count() == b.edge_count() && canonical_form(a) == canonical_form(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families;

    #[test]
    fn small_group_orders() {
        let cases = [
            (families::cycle(5).unwrap(), 10u64),
            (families::complete(5).unwrap(), 120),
            (families::path(4).unwrap(), 2),
            (families::hamming(3).unwrap(), 72),
            (families::disjoint_complete(2, 3).unwrap(), 72),
            (families::complete(1).unwrap(), 1),
        ];
        for (g, order) in cases {
            let grp = automorphism_group(&g);
            assert_eq!(grp.order(), BigUint::from(order), "{:?}", g);
            assert!(grp.generators().iter().all(|p| is_automorphism(&g, p)));
        }
    }

    #[test]
    fn canonical_form_is_relabeling_invariant() {
        let g = families::hamming(3).unwrap();
        let perm: Vec<usize> = vec![4, 7, 1, 0, 8, 2, 6, 3, 5];
        let h = g.relabel(&perm);
        assert_eq!(canonical_form(&g), canonical_form(&h));
        assert!(are_isomorphic(&g, &h));
        assert!(!are_isomorphic(&families::cycle(6).unwrap(), &families::disjoint_complete(2, 3).unwrap()));
    }
}
