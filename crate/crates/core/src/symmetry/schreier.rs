//! Deterministic Schreier–Sims: base, strong generators and explicit transversals.

use std::collections::VecDeque;

use num_bigint::BigUint;

use super::perm::Perm;

#[derive(Clone, Debug)]
struct Level {
    base: usize,
    orbit: Vec<usize>,
    /// `to[b]` maps the base point to `b`; `from[b]` is its inverse.
    to: Vec<Option<Perm>>,
    from: Vec<Option<Perm>>,
    /// Schreier pairs `(orbit point, strong generator)` not yet sifted.
    pending: VecDeque<(usize, usize)>,
}

impl Level {
    fn new(n: usize, base: usize) -> Self {
        let mut to = vec![None; n];
        let mut from = vec![None; n];
        to[base] = Some(Perm::identity(n));
        from[base] = Some(Perm::identity(n));
        Level { base, orbit: vec![base], to, from, pending: VecDeque::new() }
    }
}

/// A stabilizer chain `G = G^0 ≥ G^1 ≥ ...`, where `G^i` fixes the first `i` base points.
#[derive(Clone, Debug)]
pub struct StabChain {
    n: usize,
    levels: Vec<Level>,
    /// Strong generators with their depth: the generator fixes `base[..depth]`.
    strong: Vec<(Perm, usize)>,
}

impl StabChain {
    /// Builds a chain whose base starts with `base_prefix`; further base
    /// points are the first points moved by residues.
    pub fn new(n: usize, generators: &[Perm], base_prefix: &[usize]) -> Self {
        let mut c = StabChain { n, levels: Vec::new(), strong: Vec::new() };
        for &b in base_prefix {
            assert!(b < n && c.levels.iter().all(|l| l.base != b), "bad base prefix");
            c.levels.push(Level::new(n, b));
        }
        for g in generators {
            assert_eq!(g.degree(), n, "generator degree");
            if g.is_identity() {
                continue;
            }
            let depth = c.levels.iter().position(|l| g.apply(l.base) != l.base).unwrap_or_else(|| {
                let b = g.first_moved().expect("non-identity");
                c.levels.push(Level::new(n, b));
                c.levels.len() - 1
            });
            c.add_strong(g.clone(), depth);
        }
        c.complete();
        c
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn base_len(&self) -> usize {
        self.levels.len()
    }

    pub fn orbit(&self, level: usize) -> &[usize] {
        &self.levels[level].orbit
    }

    /// An element of `G^level` mapping the base point of `level` to `point`.
    pub fn transversal(&self, level: usize, point: usize) -> Option<&Perm> {
        self.levels[level].to[point].as_ref()
    }

    pub fn strong_generators(&self) -> impl Iterator<Item = &Perm> {
        self.strong.iter().map(|(g, _)| g)
    }

    /// Strong generators of `G^depth`, the pointwise stabilizer of `base[..depth]`.
    pub fn stabilizer_generators(&self, depth: usize) -> Vec<Perm> {
        self.strong.iter().filter(|(_, d)| *d >= depth).map(|(g, _)| g.clone()).collect()
    }

    pub fn order(&self) -> BigUint {
        self.levels.iter().map(|l| BigUint::from(l.orbit.len())).product()
    }

    pub fn contains(&self, g: &Perm) -> bool {
        g.degree() == self.n && self.strip(g.clone(), 0).0.is_identity()
    }

    /// Sifts `g` from `start`; returns the residue and the level where sifting stopped.
    fn strip(&self, mut g: Perm, start: usize) -> (Perm, usize) {
        for (i, level) in self.levels.iter().enumerate().skip(start) {
            let b = g.apply(level.base);
            match &level.from[b] {
                Some(inv) => g = g.then(inv),
                None => return (g, i),
            }
        }
        (g, self.levels.len())
    }

    fn add_strong(&mut self, g: Perm, depth: usize) {
        let idx = self.strong.len();
        self.strong.push((g, depth));
        for l in 0..=depth.min(self.levels.len() - 1) {
            self.extend_orbit(l, idx);
        }
    }

    /// Closes the orbit at level `l` after strong generator `new` was added.
    fn extend_orbit(&mut self, l: usize, new: usize) {
        let gens: Vec<usize> = (0..self.strong.len()).filter(|&s| self.strong[s].1 >= l).collect();
        let level = &mut self.levels[l];
        let mut frontier: Vec<usize> = Vec::new();
        let start_len = level.orbit.len();
        for i in 0..start_len {
            let b = level.orbit[i];
            level.pending.push_back((b, new));
            let c = self.strong[new].0.apply(b);
            if level.to[c].is_none() {
                let t = level.to[b].as_ref().unwrap().then(&self.strong[new].0);
                level.from[c] = Some(t.inverse());
                level.to[c] = Some(t);
                level.orbit.push(c);
                frontier.push(c);
            }
        }
        let mut k = 0;
        while k < frontier.len() {
            let b = frontier[k];
            k += 1;
            level.pending.extend(gens.iter().map(|&s| (b, s)));
            for &s in &gens {
                let c = self.strong[s].0.apply(b);
                if level.to[c].is_none() {
                    let t = level.to[b].as_ref().unwrap().then(&self.strong[s].0);
                    level.from[c] = Some(t.inverse());
                    level.to[c] = Some(t);
                    level.orbit.push(c);
                    frontier.push(c);
                }
            }
        }
    }

    fn complete(&mut self) {
        if self.levels.is_empty() {
            return;
        }
        let mut i = self.levels.len() - 1;
        loop {
            match self.levels[i].pending.pop_front() {
                Some((b, s)) => {
                    let level = &self.levels[i];
                    let g = &self.strong[s].0;
                    let c = g.apply(b);
                    let schreier = level.to[b].as_ref().unwrap().then(g).then(level.from[c].as_ref().unwrap());
                    let (h, j) = self.strip(schreier, i + 1);
                    if !h.is_identity() {
                        if j == self.levels.len() {
                            let moved = h.first_moved().unwrap();
                            self.levels.push(Level::new(self.n, moved));
                        }
                        self.add_strong(h, j);
                        i = j;
                    }
                }
                None if i == 0 => break,
                None => i -= 1,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize) -> Perm {
        Perm::from_images((0..n).map(|i| (i + 1) % n).collect())
    }

    fn transposition(n: usize, a: usize, b: usize) -> Perm {
        let mut v: Vec<usize> = (0..n).collect();
        v.swap(a, b);
        Perm::from_images(v)
    }

    #[test]
    fn symmetric_and_cyclic_orders() {
        for n in 1..=7usize {
            let s = StabChain::new(n, &[cyc(n), transposition(n, 0, 1.min(n - 1))], &[]);
            let fact: u64 = (1..=n as u64).product();
            assert_eq!(s.order(), BigUint::from(fact));
            let c = StabChain::new(n, &[cyc(n)], &[]);
            assert_eq!(c.order(), BigUint::from(n));
        }
    }

    #[test]
    fn dihedral_with_prefix() {
        let n = 5;
        let refl = Perm::from_images((0..n).map(|i| (n - i) % n).collect());
        let c = StabChain::new(n, &[cyc(n), refl.clone()], &[2]);
        assert_eq!(c.order(), BigUint::from(10u32));
        assert_eq!(c.base()[0], 2);
        // the stabilizer of 2 is the reflection through 2
        let stab = c.stabilizer_generators(1);
        let sub = StabChain::new(n, &stab, &[]);
        assert_eq!(sub.order(), BigUint::from(2u32));
        assert!(c.contains(&refl));
        assert!(!c.contains(&transposition(n, 0, 1)));
    }

    #[test]
    fn trivial_group() {
        let c = StabChain::new(4, &[Perm::identity(4)], &[]);
        assert_eq!(c.order(), BigUint::from(1u32));
        assert!(c.contains(&Perm::identity(4)));
    }
}
