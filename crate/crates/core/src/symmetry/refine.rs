//! Ordered partitions and equitable refinement.

use std::collections::VecDeque;

use crate::bitset::Bitset;
use crate::graph::Graph;

/// An ordered partition of `0..n`; cells are contiguous ranges of `elems`
/// and are named by their start position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    elems: Vec<usize>,
    pos: Vec<usize>,
    /// Start of the cell containing each position.
    start: Vec<usize>,
    /// End (exclusive) of the cell starting at each position.
    end: Vec<usize>,
}

impl Partition {
    pub fn unit(n: usize) -> Self {
        Self::from_colors(&vec![0; n])
    }

    /// Cells ordered by color value.
    pub fn from_colors(colors: &[usize]) -> Self {
        let n = colors.len();
        let mut elems: Vec<usize> = (0..n).collect();
        elems.sort_by_key(|&v| (colors[v], v));
        let mut pos = vec![0; n];
        for (i, &v) in elems.iter().enumerate() {
            pos[v] = i;
        }
        let mut start = vec![0; n];
        let mut end = vec![0; n];
        let mut i = 0;
        while i < n {
            let mut j = i;
            while j < n && colors[elems[j]] == colors[elems[i]] {
                j += 1;
            }
            for s in &mut start[i..j] {
                *s = i;
            }
            end[i] = j;
            i = j;
        }
        Partition { elems, pos, start, end }
    }

    pub fn n(&self) -> usize {
        self.elems.len()
    }

    pub fn elems(&self) -> &[usize] {
        &self.elems
    }

    pub fn cell_of(&self, v: usize) -> usize {
        self.start[self.pos[v]]
    }

    pub fn cell(&self, start: usize) -> &[usize] {
        &self.elems[start..self.end[start]]
    }

    /// Starts of all cells, in order.
    pub fn cells(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut i = 0;
        while i < self.n() {
            out.push(i);
            i = self.end[i];
        }
        out
    }

    pub fn num_cells(&self) -> usize {
        self.cells().len()
    }

    pub fn is_discrete(&self) -> bool {
        (0..self.n()).all(|i| self.end[self.start[i]] - self.start[i] == 1)
    }

    /// First smallest non-singleton cell.
    pub fn target_cell(&self) -> Option<usize> {
        self.cells()
            .into_iter()
            .filter(|&s| self.end[s] - s > 1)
            .min_by_key(|&s| (self.end[s] - s, s))
    }

    fn set_cell(&mut self, s: usize, e: usize) {
        for x in &mut self.start[s..e] {
            *x = s;
        }
        self.end[s] = e;
    }

    /// Splits `v` off the front of its cell and refines.
    pub fn individualize(&mut self, g: &Graph, v: usize, trace: &mut Vec<u64>) {
        let s = self.cell_of(v);
        let e = self.end[s];
        trace.push(u64::MAX);
        trace.push(s as u64);
        trace.push((e - s) as u64);
        if e - s == 1 {
            return;
        }
        let p = self.pos[v];
        self.elems.swap(s, p);
        self.pos[self.elems[p]] = p;
        self.pos[v] = s;
        self.set_cell(s, s + 1);
        self.set_cell(s + 1, e);
        self.refine(g, &[s], trace);
    }

    /// Refines to the coarsest equitable partition finer than `self`, using
    /// the cells starting at `splitters` as initial splitters. The trace
    /// records every split and depends only on the isomorphism type of the
    /// (graph, partition) pair.
    pub fn refine(&mut self, g: &Graph, splitters: &[usize], trace: &mut Vec<u64>) {
        let n = self.n();
        let mut queue: VecDeque<usize> = splitters.iter().copied().collect();
        let mut queued = vec![false; n];
        for &s in splitters {
            queued[s] = true;
        }
        let mut counts = vec![0usize; n];
        while let Some(w) = queue.pop_front() {
            queued[w] = false;
            if self.is_discrete() {
                break;
            }
            let mut w_set = Bitset::new(n);
            for &x in self.cell(w) {
                w_set.insert(x);
            }
            trace.push(w as u64);
            for c in self.cells() {
                let e = self.end[c];
                if e - c == 1 {
                    continue;
                }
                for i in c..e {
                    let v = self.elems[i];
                    counts[v] = g.neighbors(v).intersection_count(&w_set);
                }
                let first = counts[self.elems[c]];
                if self.elems[c..e].iter().all(|&v| counts[v] == first) {
                    continue;
                }
                self.elems[c..e].sort_by_key(|&v| (counts[v], v));
                for i in c..e {
                    self.pos[self.elems[i]] = i;
                }
                let mut frags = Vec::new();
                let mut i = c;
                while i < e {
                    let mut j = i;
                    while j < e && counts[self.elems[j]] == counts[self.elems[i]] {
                        j += 1;
                    }
                    frags.push((i, j));
                    i = j;
                }
                trace.push(c as u64);
                trace.push(frags.len() as u64);
                for &(a, b) in &frags {
                    trace.push(counts[self.elems[a]] as u64);
                    trace.push((b - a) as u64);
                    self.set_cell(a, b);
                }
                if queued[c] {
                    for &(a, _) in &frags[1..] {
                        queued[a] = true;
                        queue.push_back(a);
                    }
                } else {
                    let largest = frags.iter().enumerate().max_by_key(|&(idx, &(a, b))| (b - a, usize::MAX - idx)).unwrap().0;
                    for (idx, &(a, _)) in frags.iter().enumerate() {
                        if idx != largest {
                            queued[a] = true;
                            queue.push_back(a);
                        }
                    }
                }
            }
        }
    }

    /// The refined partition of `g` from a vertex colouring, with all cells as splitters.
    pub fn equitable(g: &Graph, colors: &[usize], trace: &mut Vec<u64>) -> Self {
        let mut p = Partition::from_colors(colors);
        let cells = p.cells();
        p.refine(g, &cells, trace);
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families;

    #[test]
    fn path_refines_by_degree_and_distance() {
        let g = families::path(5).unwrap();
        let p = Partition::equitable(&g, &[0; 5], &mut Vec::new());
        // {0,4} {1,3} {2}
        assert_eq!(p.num_cells(), 3);
        assert_eq!(p.cell(p.cell_of(0)).len(), 2);
        assert_eq!(p.cell_of(0), p.cell_of(4));
    }

    #[test]
    fn regular_graph_is_already_equitable_and_individualization_splits() {
        let g = families::cycle(6).unwrap();
        let mut tr = Vec::new();
        let mut p = Partition::equitable(&g, &[0; 6], &mut tr);
        assert_eq!(p.num_cells(), 1);
        p.individualize(&g, 0, &mut tr);
        // {0} {1,5} {2,4} {3} in some order
        assert_eq!(p.num_cells(), 4);
        assert_eq!(p.cell_of(1), p.cell_of(5));
        let mut tr2 = Vec::new();
        let mut q = Partition::equitable(&g, &[0; 6], &mut tr2);
        q.individualize(&g, 3, &mut tr2);
        assert_eq!(tr, tr2);
    }
}
