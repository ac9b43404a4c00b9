//! Planarity of small graphs, and the disk-planarity condition for diagrams.
//!
//! Each biconnected block is tested with the Demoucron–Malgrange–Pertuiset
//! path-addition algorithm, which is quadratic but simple; diagram graphs have
//! a few dozen edges at most.

use std::collections::BTreeSet;

use super::Diagram;

/// Planarity of the simple graph underlying `edges` (loops and repeats ignored).
pub fn is_planar(n: usize, edges: &[(usize, usize)]) -> bool {
    let set: BTreeSet<(usize, usize)> =
        edges.iter().filter(|(a, b)| a != b).map(|&(a, b)| (a.min(b), a.max(b))).collect();
    let edges: Vec<(usize, usize)> = set.into_iter().collect();
    if n >= 3 && edges.len() > 3 * n - 6 {
        return false;
    }
    blocks(n, &edges).into_iter().all(|b| b.len() < 9 || block_is_planar(&b))
}

/// Edge sets of the biconnected components.
fn blocks(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<(usize, usize)>> {
    let mut adj = vec![Vec::new(); n];
    for (idx, &(a, b)) in edges.iter().enumerate() {
        adj[a].push((b, idx));
        adj[b].push((a, idx));
    }
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut time = 0;
    let mut stack: Vec<usize> = Vec::new();
    let mut out = Vec::new();
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        // iterative Tarjan: frames hold (vertex, parent edge, next adjacency position)
        let mut frames: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        disc[root] = time;
        low[root] = time;
        time += 1;
        while let Some(&mut (v, pe, ref mut i)) = frames.last_mut() {
            if *i < adj[v].len() {
                let (w, e) = adj[v][*i];
                *i += 1;
                if e == pe {
                    continue;
                }
                if disc[w] == usize::MAX {
                    stack.push(e);
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    frames.push((w, e, 0));
                } else if disc[w] < disc[v] {
                    stack.push(e);
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                frames.pop();
                if let Some(&(u, _, _)) = frames.last() {
                    low[u] = low[u].min(low[v]);
                    if low[v] >= disc[u] {
                        let mut comp = Vec::new();
                        while let Some(e) = stack.pop() {
                            comp.push(edges[e]);
                            if e == pe {
                                break;
                            }
                        }
                        out.push(comp);
                    }
                }
            }
        }
    }
    out
}

fn block_is_planar(block: &[(usize, usize)]) -> bool {
    let mut verts: Vec<usize> = block.iter().flat_map(|&(a, b)| [a, b]).collect();
    verts.sort_unstable();
    verts.dedup();
    let local = |v: usize| verts.binary_search(&v).unwrap();
    let m = verts.len();
    let mut adj = vec![Vec::new(); m];
    for &(a, b) in block {
        let (a, b) = (local(a), local(b));
        adj[a].push(b);
        adj[b].push(a);
    }
    for a in adj.iter_mut() {
        a.sort_unstable();
    }
    let cycle = find_cycle(&adj);
    let mut in_h = vec![false; m];
    let mut h_edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    for (i, &v) in cycle.iter().enumerate() {
        in_h[v] = true;
        let w = cycle[(i + 1) % cycle.len()];
        h_edges.insert((v.min(w), v.max(w)));
    }
    let mut faces: Vec<Vec<usize>> = vec![cycle.clone(), cycle];
    loop {
        let frags = fragments(&adj, &in_h, &h_edges);
        if frags.is_empty() {
            return true;
        }
        let mut choice: Option<(usize, usize)> = None;
        for (fi, frag) in frags.iter().enumerate() {
            let admissible: Vec<usize> = (0..faces.len())
                .filter(|&f| frag.attachments.iter().all(|a| faces[f].contains(a)))
                .collect();
            match admissible.len() {
                0 => return false,
                1 => {
                    choice = Some((fi, admissible[0]));
                    break;
                }
                _ => {
                    if choice.is_none() {
                        choice = Some((fi, admissible[0]));
                    }
                }
            }
        }
        let (fi, face_idx) = choice.unwrap();
        let path = frags[fi].path(&adj, &in_h);
        for w in path.windows(2) {
            h_edges.insert((w[0].min(w[1]), w[0].max(w[1])));
        }
        for &v in &path {
            in_h[v] = true;
        }
        let face = faces.swap_remove(face_idx);
        let (a, b) = (path[0], *path.last().unwrap());
        let i = face.iter().position(|&x| x == a).unwrap();
        let j = face.iter().position(|&x| x == b).unwrap();
        let interior = &path[1..path.len() - 1];
        let arc = |from: usize, to: usize| {
            let mut out = vec![face[from]];
            let mut p = from;
            while p != to {
                p = (p + 1) % face.len();
                out.push(face[p]);
            }
            out
        };
        let mut f1 = arc(i, j);
        f1.extend(interior.iter().rev());
        let mut f2 = arc(j, i);
        f2.extend(interior.iter());
        faces.push(f1);
        faces.push(f2);
    }
}

fn find_cycle(adj: &[Vec<usize>]) -> Vec<usize> {
    let m = adj.len();
    let mut parent = vec![usize::MAX; m];
    let mut depth = vec![usize::MAX; m];
    let mut stack = vec![(0usize, 0usize)];
    depth[0] = 0;
    while let Some((v, i)) = stack.pop() {
        if i < adj[v].len() {
            stack.push((v, i + 1));
            let w = adj[v][i];
            if depth[w] == usize::MAX {
                depth[w] = depth[v] + 1;
                parent[w] = v;
                stack.push((w, 0));
            } else if w != parent[v] && depth[w] < depth[v] {
                let mut cyc = vec![v];
                let mut x = v;
                while x != w {
                    x = parent[x];
                    cyc.push(x);
                }
                return cyc;
            }
        }
    }
    unreachable!("a biconnected block with at least three edges has a cycle")
}

struct Fragment {
    attachments: Vec<usize>,
    /// Either a single chord or a component of unembedded vertices.
    chord: Option<(usize, usize)>,
    component: Vec<usize>,
}

impl Fragment {
    /// A path through the fragment joining two distinct attachments.
    fn path(&self, adj: &[Vec<usize>], in_h: &[bool]) -> Vec<usize> {
        if let Some((a, b)) = self.chord {
            return vec![a, b];
        }
        let a = self.attachments[0];
        let in_comp = |v: usize| self.component.binary_search(&v).is_ok();
        let start = *adj[a].iter().find(|&&c| in_comp(c)).unwrap();
        let mut prev = vec![usize::MAX; adj.len()];
        prev[start] = start;
        let mut queue = vec![start];
        let mut qi = 0;
        while qi < queue.len() {
            let v = queue[qi];
            qi += 1;
            if let Some(&b) = adj[v].iter().find(|&&b| in_h[b] && b != a) {
                let mut path = vec![b, v];
                let mut x = v;
                while x != start {
                    x = prev[x];
                    path.push(x);
                }
                path.push(a);
                path.reverse();
                return path;
            }
            for &w in &adj[v] {
                if in_comp(w) && prev[w] == usize::MAX {
                    prev[w] = v;
                    queue.push(w);
                }
            }
        }
        unreachable!("fragments of a biconnected block have two attachments")
    }
}

fn fragments(adj: &[Vec<usize>], in_h: &[bool], h_edges: &BTreeSet<(usize, usize)>) -> Vec<Fragment> {
    let m = adj.len();
    let mut out = Vec::new();
    for v in 0..m {
        for &w in &adj[v] {
            if v < w && in_h[v] && in_h[w] && !h_edges.contains(&(v, w)) {
                out.push(Fragment { attachments: vec![v, w], chord: Some((v, w)), component: vec![] });
            }
        }
    }
    let mut seen = vec![false; m];
    for s in 0..m {
        if in_h[s] || seen[s] {
            continue;
        }
        let mut comp = vec![s];
        seen[s] = true;
        let mut att = BTreeSet::new();
        let mut i = 0;
        while i < comp.len() {
            let v = comp[i];
            i += 1;
            for &w in &adj[v] {
                if in_h[w] {
                    att.insert(w);
                } else if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(Fragment { attachments: att.into_iter().collect(), chord: None, component: comp });
    }
    out
}

/// The augmented graph of a diagram for one choice of class member at every
/// external edge end: single-strike edges, the boundary cycle, an apex joined
/// to every external, and double-strike paths through each class.
fn augmented_edges(d: &Diagram, attach: &[usize]) -> (usize, Vec<(usize, usize)>) {
    let k = d.k;
    let apex = k + d.n_int;
    let mut edges = Vec::new();
    if k >= 2 {
        for i in 0..k {
            edges.push((i, (i + 1) % k));
        }
    }
    for i in 0..k {
        edges.push((i, apex));
    }
    for class in &d.partition {
        for w in class.windows(2) {
            edges.push((w[0], w[1]));
        }
    }
    let mut slot = 0;
    let mut end = |x: usize| {
        let v = attach[slot];
        slot += 1;
        debug_assert!(x < k);
        v
    };
    for &(a, b) in &d.ext_ext {
        let (a2, b2) = (end(a), end(b));
        edges.push((a2, b2));
    }
    for &(e, i) in &d.ext_int {
        let e2 = end(e);
        edges.push((e2, k + i));
    }
    for &(a, b) in &d.int_int {
        edges.push((k + a, k + b));
    }
    (apex + 1, edges)
}

/// True if the diagram can be drawn inside a disk with the externals in order
/// on the boundary and no crossings, where an edge ending at an external may
/// be drawn to any member of that external's equality class.
pub fn diagram_is_planar(d: &Diagram) -> bool {
    let class_of = d.class_of();
    let mut ends: Vec<usize> = Vec::new();
    for &(a, b) in &d.ext_ext {
        ends.push(a);
        ends.push(b);
    }
    ends.extend(d.ext_int.iter().map(|&(e, _)| e));
    let options: Vec<&Vec<usize>> = ends.iter().map(|&e| &d.partition[class_of[e]]).collect();
    let mut choice = vec![0usize; options.len()];
    loop {
        let attach: Vec<usize> = choice.iter().zip(&options).map(|(&c, o)| o[c]).collect();
        let (n, edges) = augmented_edges(d, &attach);
        if is_planar(n, &edges) {
            return true;
        }
        // odometer over attachment choices
        let mut i = 0;
        loop {
            if i == choice.len() {
                return false;
            }
            choice[i] += 1;
            if choice[i] < options[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> Vec<(usize, usize)> {
        (0..n).flat_map(|a| ((a + 1)..n).map(move |b| (a, b))).collect()
    }

    #[test]
    fn kuratowski_graphs() {
        assert!(is_planar(4, &complete(4)));
        assert!(!is_planar(5, &complete(5)));
        let k33: Vec<_> = (0..3).flat_map(|a| (3..6).map(move |b| (a, b))).collect();
        assert!(!is_planar(6, &k33));
        let mut k33_minus = k33.clone();
        k33_minus.pop();
        assert!(is_planar(6, &k33_minus));
    }

    #[test]
    fn petersen_and_subdivided_k5() {
        let mut petersen = Vec::new();
        for i in 0..5 {
            petersen.push((i, (i + 1) % 5));
            petersen.push((i, i + 5));
            petersen.push((5 + i, 5 + (i + 2) % 5));
        }
        assert!(!is_planar(10, &petersen));
        // K5 with every edge subdivided has 15 vertices and 20 edges, below the Euler bound
        let mut sub = Vec::new();
        for (idx, (a, b)) in complete(5).into_iter().enumerate() {
            sub.push((a, 5 + idx));
            sub.push((5 + idx, b));
        }
        assert!(!is_planar(15, &sub));
    }

    #[test]
    fn wheels_and_grids_are_planar() {
        let mut wheel: Vec<_> = (0..8).map(|i| (i, (i + 1) % 8)).collect();
        wheel.extend((0..8).map(|i| (i, 8)));
        assert!(is_planar(9, &wheel));
        let mut grid = Vec::new();
        for r in 0..4 {
            for c in 0..4 {
                let v = r * 4 + c;
                if c < 3 {
                    grid.push((v, v + 1));
                }
                if r < 3 {
                    grid.push((v, v + 4));
                }
            }
        }
        assert!(is_planar(16, &grid));
    }
}
