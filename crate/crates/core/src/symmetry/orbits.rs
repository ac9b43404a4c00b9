//! Orbits of the automorphism group on ordered vertex k-tuples.
//!
//! Small cases (`n^k` up to [`DENSE_THRESHOLD`]) use a union-find closure over
//! every tuple. Larger cases walk a tree of point stabilizers: the orbits of
//! k-tuples whose first entry is the orbit minimum `m` are the orbits of the
//! stabilizer of `m` on the remaining (k-1)-tuples.

use std::io::{Read, Write};
use std::path::Path;
use std::time::Instant;

use serde::Serialize;

use super::perm::Perm;
use super::schreier::StabChain;
use super::search::{is_automorphism, PermGroup};
use super::union_find::UnionFind;
use super::SymmetryError;
use crate::graph::{AdjacencyHash, Graph};

pub const DENSE_THRESHOLD: usize = 2_000_000;
const CACHE_MAGIC: &[u8; 8] = b"QSYMORBI";
const CACHE_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Strategy {
    Dense,
    Chain,
}

impl Strategy {
    pub fn choose(n: usize, k: usize) -> Strategy {
        match n.checked_pow(k as u32) {
            Some(t) if t <= DENSE_THRESHOLD => Strategy::Dense,
            _ => Strategy::Chain,
        }
    }
}

/// Limits for building an index; `None` means unlimited.
#[derive(Clone, Copy, Debug, Default)]
pub struct OrbitBudget {
    pub max_chain_nodes: Option<usize>,
    pub deadline: Option<Instant>,
}

#[derive(Clone, Debug)]
struct Node {
    /// Orbit minimum of every point under this node's group.
    mins: Vec<u32>,
    /// An element of this node's group taking each point to its orbit minimum.
    to_min: Vec<Perm>,
    /// Child node or leaf orbit id, indexed by orbit minimum.
    next: Vec<u32>,
}

#[derive(Clone, Debug)]
enum Lookup {
    Dense { ids: Vec<u32> },
    Chain { nodes: Vec<Node> },
}

#[derive(Clone, Debug)]
pub struct OrbitIndex {
    n: usize,
    k: usize,
    hash: AdjacencyHash,
    generators: Vec<Perm>,
    reps: Vec<Vec<usize>>,
    sizes: Vec<u64>,
    lookup: Lookup,
}

impl OrbitIndex {
    /// Orbits of `group` on `k`-tuples of vertices of `g`, with the strategy
    /// picked from the tuple count.
    pub fn build(g: &Graph, group: &PermGroup, k: usize) -> Result<Self, SymmetryError> {
        Self::build_with(g, group, k, Strategy::choose(g.n(), k), OrbitBudget::default())
    }

    pub fn build_with(
        g: &Graph,
        group: &PermGroup,
        k: usize,
        strategy: Strategy,
        budget: OrbitBudget,
    ) -> Result<Self, SymmetryError> {
        if !(1..=4).contains(&k) {
            return Err(SymmetryError::UnsupportedArity(k));
        }
        if group.degree() != g.n() {
            return Err(SymmetryError::GroupMismatch("degree differs from vertex count".into()));
        }
        if let Some(p) = group.generators().iter().find(|p| !is_automorphism(g, p)) {
            return Err(SymmetryError::GroupMismatch(format!("generator {p:?} is not an automorphism")));
        }
        let gens = group.generators().to_vec();
        let mut index = match strategy {
            Strategy::Dense => Self::dense(g.n(), k, &gens)?,
            Strategy::Chain => Self::chain(g.n(), k, &gens, budget)?,
        };
        index.hash = g.adjacency_hash();
        Ok(index)
    }

    fn dense(n: usize, k: usize, gens: &[Perm]) -> Result<Self, SymmetryError> {
        let total = n.checked_pow(k as u32).filter(|&t| t <= u32::MAX as usize).ok_or(
            SymmetryError::ResourceBudgetExceeded { what: "dense tuple table".into(), completed: 0 },
        )?;
        let mut uf = UnionFind::new(total);
        let mut digits = vec![0usize; k];
        for g in gens {
            for t in 0..total {
                decode(t, n, &mut digits);
                let img = digits.iter().fold(0, |acc, &d| acc * n + g.apply(d));
                uf.union(t, img);
            }
        }
        let roots = uf.roots();
        let mut ids = vec![u32::MAX; total];
        let mut reps = Vec::new();
        let mut sizes = Vec::new();
        for t in 0..total {
            let r = roots[t];
            if r == t {
                ids[t] = reps.len() as u32;
                let mut d = vec![0; k];
                decode(t, n, &mut d);
                reps.push(d);
                sizes.push(0);
            }
            ids[t] = ids[r];
            sizes[ids[t] as usize] += 1;
        }
        Ok(OrbitIndex {
            n,
            k,
            hash: AdjacencyHash([0; 32]),
            generators: gens.to_vec(),
            reps,
            sizes,
            lookup: Lookup::Dense { ids },
        })
    }

    fn chain(n: usize, k: usize, gens: &[Perm], budget: OrbitBudget) -> Result<Self, SymmetryError> {
        let mut nodes = Vec::new();
        let mut reps = Vec::new();
        let mut sizes = Vec::new();
        let mut prefix = Vec::new();
        build_node(n, k, gens.to_vec(), &mut prefix, 1, &mut nodes, &mut reps, &mut sizes, &budget)?;
        Ok(OrbitIndex {
            n,
            k,
            hash: AdjacencyHash([0; 32]),
            generators: gens.to_vec(),
            reps,
            sizes,
            lookup: Lookup::Chain { nodes },
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn graph_hash(&self) -> AdjacencyHash {
        self.hash
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn strategy(&self) -> Strategy {
        match self.lookup {
            Lookup::Dense { .. } => Strategy::Dense,
            Lookup::Chain { .. } => Strategy::Chain,
        }
    }

    /// Lexicographically minimal tuple of each orbit, in increasing order.
    pub fn representatives(&self) -> &[Vec<usize>] {
        &self.reps
    }

    pub fn representative(&self, id: usize) -> &[usize] {
        &self.reps[id]
    }

    /// Number of tuples in each orbit.
    pub fn orbit_sizes(&self) -> &[u64] {
        &self.sizes
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    /// Orbit id of a tuple.
    pub fn lookup(&self, t: &[usize]) -> usize {
        assert_eq!(t.len(), self.k, "tuple arity");
        match &self.lookup {
            Lookup::Dense { ids } => ids[t.iter().fold(0, |acc, &x| acc * self.n + x)] as usize,
            Lookup::Chain { nodes } => {
                let mut cur = [0usize; 4];
                cur[..self.k].copy_from_slice(t);
                let mut node = &nodes[0];
                for i in 0..self.k {
                    let x = cur[i];
                    let m = node.mins[x] as usize;
                    let h = &node.to_min[x];
                    for c in &mut cur[i + 1..self.k] {
                        *c = h.apply(*c);
                    }
                    let next = node.next[m] as usize;
                    if i + 1 == self.k {
                        return next;
                    }
                    node = &nodes[next];
                }
                unreachable!()
            }
        }
    }

    /// Writes a cache file keyed by the graph's adjacency hash.
    pub fn save(&self, path: &Path) -> std::io::Result<()> {
        let mut out = Vec::new();
        out.extend_from_slice(CACHE_MAGIC);
        out.extend_from_slice(&CACHE_VERSION.to_le_bytes());
        out.extend_from_slice(&self.hash.0);
        for x in [self.n, self.k, self.strategy() as usize, self.generators.len(), self.reps.len()] {
            out.extend_from_slice(&(x as u32).to_le_bytes());
        }
        for g in &self.generators {
            for x in g.images() {
                out.extend_from_slice(&(x as u32).to_le_bytes());
            }
        }
        for r in &self.reps {
            for &x in r {
                out.extend_from_slice(&(x as u32).to_le_bytes());
            }
        }
        let tmp = path.with_extension("tmp");
        std::fs::File::create(&tmp)?.write_all(&out)?;
        std::fs::rename(tmp, path)
    }

    /// Loads a cache file for `g`, refusing it on any version or hash mismatch.
    /// The lookup structure is rebuilt from the stored generators and checked
    /// against the stored representatives.
    pub fn load(path: &Path, g: &Graph) -> Result<Self, SymmetryError> {
        let mut bytes = Vec::new();
        std::fs::File::open(path)
            .and_then(|mut f| f.read_to_end(&mut bytes))
            .map_err(|e| SymmetryError::Cache(e.to_string()))?;
        let mut r = ByteReader { b: &bytes, at: 0 };
        if r.take(8)? != CACHE_MAGIC {
            return Err(SymmetryError::Cache("bad magic".into()));
        }
        if r.u32()? != CACHE_VERSION {
            return Err(SymmetryError::Cache("unsupported version".into()));
        }
        if r.take(32)? != g.adjacency_hash().0 {
            return Err(SymmetryError::Cache("adjacency hash mismatch".into()));
        }
        let n = r.u32()? as usize;
        let k = r.u32()? as usize;
        let strategy = if r.u32()? == 0 { Strategy::Dense } else { Strategy::Chain };
        let ngens = r.u32()? as usize;
        let nreps = r.u32()? as usize;
        if n != g.n() {
            return Err(SymmetryError::Cache("vertex count mismatch".into()));
        }
        let mut gens = Vec::with_capacity(ngens);
        for _ in 0..ngens {
            let img = (0..n).map(|_| r.u32().map(|x| x as usize)).collect::<Result<Vec<_>, _>>()?;
            gens.push(Perm::try_from_images(img).ok_or_else(|| SymmetryError::Cache("bad generator".into()))?);
        }
        let mut reps = Vec::with_capacity(nreps);
        for _ in 0..nreps {
            reps.push((0..k).map(|_| r.u32().map(|x| x as usize)).collect::<Result<Vec<_>, _>>()?);
        }
        if r.at != bytes.len() {
            return Err(SymmetryError::Cache("trailing bytes".into()));
        }
        let group = PermGroup::new(n, gens);
        let index = Self::build_with(g, &group, k, strategy, OrbitBudget::default())?;
        if index.reps != reps {
            return Err(SymmetryError::Cache("representatives differ after rebuild".into()));
        }
        Ok(index)
    }

    /// Summary used in certificates and reports.
    pub fn summary(&self) -> OrbitSummary {
        OrbitSummary { k: self.k, count: self.len(), representatives: self.reps.clone() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct OrbitSummary {
    pub k: usize,
    pub count: usize,
    pub representatives: Vec<Vec<usize>>,
}

struct ByteReader<'a> {
    b: &'a [u8],
    at: usize,
}

impl ByteReader<'_> {
    fn take(&mut self, len: usize) -> Result<&[u8], SymmetryError> {
        let s = self.b.get(self.at..self.at + len).ok_or_else(|| SymmetryError::Cache("truncated".into()))?;
        self.at += len;
        Ok(s)
    }

    fn u32(&mut self) -> Result<u32, SymmetryError> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }
}

fn decode(mut t: usize, n: usize, out: &mut [usize]) {
    for d in out.iter_mut().rev() {
        *d = t % n;
        t /= n;
    }
}

#[allow(clippy::too_many_arguments)]
fn build_node(
    n: usize,
    k: usize,
    gens: Vec<Perm>,
    prefix: &mut Vec<usize>,
    weight: u64,
    nodes: &mut Vec<Node>,
    reps: &mut Vec<Vec<usize>>,
    sizes: &mut Vec<u64>,
    budget: &OrbitBudget,
) -> Result<usize, SymmetryError> {
    if budget.max_chain_nodes.is_some_and(|m| nodes.len() >= m)
        || budget.deadline.is_some_and(|d| Instant::now() >= d)
    {
        return Err(SymmetryError::ResourceBudgetExceeded { what: "orbit chain".into(), completed: nodes.len() });
    }
    let idx = nodes.len();
    let (mins, to_min, orbit_len) = orbits_with_transversals(n, &gens);
    nodes.push(Node { mins, to_min, next: vec![u32::MAX; n] });
    let depth = prefix.len();
    for (m, &len) in orbit_len.iter().enumerate() {
        if nodes[idx].mins[m] as usize != m {
            continue;
        }
        prefix.push(m);
        let w = weight * len as u64;
        let next = if depth + 1 == k {
            reps.push(prefix.clone());
            sizes.push(w);
            reps.len() - 1
        } else {
            let stab = StabChain::new(n, &gens, &[m]).stabilizer_generators(1);
            build_node(n, k, stab, prefix, w, nodes, reps, sizes, budget)?
        };
        prefix.pop();
        nodes[idx].next[m] = next as u32;
    }
    Ok(idx)
}

/// Orbit minima, elements mapping each point to its minimum, and orbit lengths (at minima).
fn orbits_with_transversals(n: usize, gens: &[Perm]) -> (Vec<u32>, Vec<Perm>, Vec<usize>) {
    let mut mins = vec![u32::MAX; n];
    let mut from_min: Vec<Option<Perm>> = vec![None; n];
    let mut len = vec![0; n];
    for m in 0..n {
        if mins[m] != u32::MAX {
            continue;
        }
        mins[m] = m as u32;
        from_min[m] = Some(Perm::identity(n));
        let mut queue = vec![m];
        let mut i = 0;
        while i < queue.len() {
            let b = queue[i];
            i += 1;
            for g in gens {
                let c = g.apply(b);
                if mins[c] == u32::MAX {
                    mins[c] = m as u32;
                    from_min[c] = Some(from_min[b].as_ref().unwrap().then(g));
                    queue.push(c);
                }
            }
        }
        len[m] = queue.len();
    }
    let to_min = from_min.into_iter().map(|p| p.unwrap().inverse()).collect();
    (mins, to_min, len)
}
