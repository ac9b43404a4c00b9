//! Deterministic catalog of valid diagrams up to relabeling of internals.

use std::collections::BTreeSet;

use super::Diagram;

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct EnumerationBudget {
    pub max_internal: usize,
    pub max_edges: usize,
}

/// All set partitions of `0..k` with no crossing pair of classes, as sorted
/// class lists.
pub fn noncrossing_partitions(k: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let mut label = vec![0usize; k];
    fn rec(i: usize, next: usize, label: &mut Vec<usize>, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == label.len() {
            let mut classes: Vec<Vec<usize>> = vec![Vec::new(); next];
            for (v, &c) in label.iter().enumerate() {
                classes[c].push(v);
            }
            if !crosses(label) {
                out.push(classes);
            }
            return;
        }
        for c in 0..=next {
            label[i] = c;
            rec(i + 1, next.max(c + 1), label, out);
        }
    }
    if k == 0 {
        return vec![vec![]];
    }
    rec(0, 0, &mut label, &mut out);
    out.sort();
    out
}

fn crosses(label: &[usize]) -> bool {
    let k = label.len();
    for a in 0..k {
        for b in a + 1..k {
            for c in b + 1..k {
                for d in c + 1..k {
                    if label[a] == label[c] && label[b] == label[d] && label[a] != label[b] {
                        return true;
                    }
                }
            }
        }
    }
    false
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Slot {
    ClassClass(usize, usize),
    ClassInt(usize, usize),
    IntInt(usize, usize),
}

/// Every valid `k`-diagram with at most `max_internal` internals and
/// `max_edges` single-strike edges, ordered by (internal count, edge count,
/// encoding). External edge ends sit at the least member of their class,
/// every internal has valency at least three and every connected piece of
/// internals reaches an external.
pub fn enumerate_diagrams(k: usize, budget: EnumerationBudget) -> Vec<Diagram> {
    let mut found: BTreeSet<(usize, usize, String)> = BTreeSet::new();
    for partition in noncrossing_partitions(k) {
        let m = partition.len();
        for n_int in 0..=budget.max_internal {
            let mut slots = Vec::new();
            for a in 0..m {
                for b in a + 1..m {
                    slots.push(Slot::ClassClass(a, b));
                }
            }
            for c in 0..m {
                for i in 0..n_int {
                    slots.push(Slot::ClassInt(c, i));
                }
            }
            for i in 0..n_int {
                for j in i + 1..n_int {
                    slots.push(Slot::IntInt(i, j));
                }
            }
            let mut chosen = Vec::new();
            choose(&slots, 0, budget.max_edges, &mut chosen, &mut |sel: &[Slot]| {
                if let Some(d) = build(k, &partition, n_int, sel) {
                    found.insert((d.n_int, d.edge_count(), d.encode()));
                }
            });
        }
    }
    found.into_iter().map(|(_, _, s)| s.parse().expect("emitted encodings parse")).collect()
}

fn choose(slots: &[Slot], from: usize, left: usize, chosen: &mut Vec<Slot>, f: &mut impl FnMut(&[Slot])) {
    f(chosen);
    if left == 0 {
        return;
    }
    for i in from..slots.len() {
        chosen.push(slots[i]);
        choose(slots, i + 1, left - 1, chosen, f);
        chosen.pop();
    }
}

fn build(k: usize, partition: &[Vec<usize>], n_int: usize, sel: &[Slot]) -> Option<Diagram> {
    let mut deg = vec![0usize; n_int];
    // internals that reach an external, by fixed point over int-int edges
    let mut reach = vec![false; n_int];
    let (mut ee, mut ei, mut ii) = (Vec::new(), Vec::new(), Vec::new());
    for &s in sel {
        match s {
            Slot::ClassClass(a, b) => ee.push((partition[a][0], partition[b][0])),
            Slot::ClassInt(c, i) => {
                deg[i] += 1;
                reach[i] = true;
                ei.push((partition[c][0], i));
            }
            Slot::IntInt(i, j) => {
                deg[i] += 1;
                deg[j] += 1;
                ii.push((i, j));
            }
        }
    }
    if deg.iter().any(|&d| d < 3) {
        return None;
    }
    loop {
        let mut changed = false;
        for &(i, j) in &ii {
            if reach[i] != reach[j] {
                reach[i] = true;
                reach[j] = true;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    if reach.iter().any(|r| !r) {
        return None;
    }
    let d = canonical_relabel(Diagram::new(k, partition.to_vec(), ee, ei, ii, n_int));
    d.validate().ok()?;
    Some(d)
}

/// The relabeling of internals with the least encoding.
fn canonical_relabel(d: Diagram) -> Diagram {
    let n = d.n_int;
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<(String, Diagram)> = None;
    loop {
        let e = Diagram::new(
            d.k,
            d.partition.clone(),
            d.ext_ext.clone(),
            d.ext_int.iter().map(|&(x, i)| (x, perm[i])).collect(),
            d.int_int.iter().map(|&(a, b)| (perm[a], perm[b])).collect(),
            n,
        );
        let s = e.encode();
        if best.as_ref().is_none_or(|(b, _)| s < *b) {
            best = Some((s, e));
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    best.unwrap().1
}

fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}
