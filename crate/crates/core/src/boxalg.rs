//! Product, rotations, unit and flip in the 4-box space, computed on
//! orbit-compressed vectors through a table of orbit-pair multiplicities.

use std::collections::BTreeMap;
use std::io::{Read, Write};
use std::path::Path;

use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::graph::{AdjacencyHash, Graph};
use crate::symmetry::OrbitIndex;
use crate::vector::{CoefficientVector, Derivation};

const CACHE_MAGIC: &[u8; 8] = b"QSYMMULT";
const CACHE_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum BoxError {
    #[error("vectors or table belong to different graphs")]
    HashMismatch,
    #[error("expected 4-box vectors with {expected} orbits, found arity {k} with {found}")]
    ShapeMismatch { expected: usize, k: usize, found: usize },
    #[error("multiplicity cache rejected: {0}")]
    Cache(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// For each 4-orbit ω with representative x, the number of pairs (y, z) with
/// (x0, x1, y, z) in ω1 and (z, y, x2, x3) in ω2, for every (ω1, ω2).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultiplicityTable {
    pub graph_hash: AdjacencyHash,
    pub n: usize,
    /// Sorted by (ω1, ω2).
    pub rows: Vec<Vec<(u32, u32, u64)>>,
}

impl MultiplicityTable {
    pub fn build(index: &OrbitIndex) -> Self {
        assert_eq!(index.k(), 4, "multiplicity tables are for 4-tuples");
        let n = index.n();
        let rows = index
            .representatives()
            .par_iter()
            .map(|x| {
                let mut counts: BTreeMap<(u32, u32), u64> = BTreeMap::new();
                for y in 0..n {
                    for z in 0..n {
                        let a = index.lookup(&[x[0], x[1], y, z]) as u32;
                        let b = index.lookup(&[z, y, x[2], x[3]]) as u32;
                        *counts.entry((a, b)).or_default() += 1;
                    }
                }
                counts.into_iter().map(|((a, b), m)| (a, b, m)).collect()
            })
            .collect();
        MultiplicityTable { graph_hash: index.graph_hash(), n, rows }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Every row accounts for all `n²` pairs.
    pub fn rows_sum_to_n_squared(&self) -> bool {
        let n2 = (self.n * self.n) as u64;
        self.rows.iter().all(|r| r.iter().map(|e| e.2).sum::<u64>() == n2)
    }

    pub fn save(&self, path: &Path) -> std::io::Result<()> {
        let mut buf = Vec::new();
        buf.extend_from_slice(CACHE_MAGIC);
        buf.extend_from_slice(&CACHE_VERSION.to_le_bytes());
        buf.extend_from_slice(&self.graph_hash.0);
        put_varint(&mut buf, self.n as u64);
        put_varint(&mut buf, self.rows.len() as u64);
        for row in &self.rows {
            put_varint(&mut buf, row.len() as u64);
            for &(a, b, m) in row {
                put_varint(&mut buf, a as u64);
                put_varint(&mut buf, b as u64);
                put_varint(&mut buf, m);
            }
        }
        let tmp = path.with_extension("tmp");
        std::fs::File::create(&tmp)?.write_all(&buf)?;
        std::fs::rename(tmp, path)
    }

    /// Loads a cache file, refusing files for another graph, another orbit
    /// count or another format version.
    pub fn load(path: &Path, index: &OrbitIndex) -> Result<Self, BoxError> {
        let mut buf = Vec::new();
        std::fs::File::open(path)?.read_to_end(&mut buf)?;
        let bad = |m: &str| BoxError::Cache(m.to_string());
        if buf.len() < 44 || &buf[..8] != CACHE_MAGIC {
            return Err(bad("not a multiplicity table"));
        }
        if u32::from_le_bytes(buf[8..12].try_into().unwrap()) != CACHE_VERSION {
            return Err(bad("format version"));
        }
        if buf[12..44] != index.graph_hash().0 {
            return Err(BoxError::HashMismatch);
        }
        let mut pos = 44;
        let mut next = || get_varint(&buf, &mut pos).ok_or_else(|| bad("truncated"));
        let n = next()? as usize;
        let count = next()? as usize;
        if n != index.n() || count != index.len() {
            return Err(bad("orbit count"));
        }
        let mut rows = Vec::with_capacity(count);
        for _ in 0..count {
            let len = next()? as usize;
            let mut row = Vec::with_capacity(len);
            for _ in 0..len {
                row.push((next()? as u32, next()? as u32, next()?));
            }
            rows.push(row);
        }
        if pos != buf.len() {
            return Err(bad("trailing bytes"));
        }
        let t = MultiplicityTable { graph_hash: index.graph_hash(), n, rows };
        if !t.rows_sum_to_n_squared() {
            return Err(bad("row sums"));
        }
        Ok(t)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("table serializes")
    }
}

fn put_varint(buf: &mut Vec<u8>, mut v: u64) {
    while v >= 0x80 {
        buf.push((v as u8) | 0x80);
        v >>= 7;
    }
    buf.push(v as u8);
}

fn get_varint(buf: &[u8], pos: &mut usize) -> Option<u64> {
    let mut v = 0u64;
    for shift in (0..64).step_by(7) {
        let b = *buf.get(*pos)?;
        *pos += 1;
        v |= ((b & 0x7f) as u64) << shift;
        if b & 0x80 == 0 {
            return Some(v);
        }
    }
    None
}

fn check(v: &CoefficientVector, table: &MultiplicityTable) -> Result<(), BoxError> {
    if v.graph_hash != table.graph_hash {
        return Err(BoxError::HashMismatch);
    }
    if v.k != 4 || v.len() != table.len() {
        return Err(BoxError::ShapeMismatch { expected: table.len(), k: v.k, found: v.len() });
    }
    Ok(())
}

/// `(a * b)^x = Σ_{y,z} a^{x0,x1,y,z} b^{z,y,x2,x3}`, with ids of the factors
/// recorded in the derivation.
pub fn box_product(
    a: &CoefficientVector,
    b: &CoefficientVector,
    table: &MultiplicityTable,
    derivation: Derivation,
) -> Result<CoefficientVector, BoxError> {
    check(a, table)?;
    check(b, table)?;
    if let (Some(ai), Some(bi)) = (a.as_i128(), b.as_i128()) {
        let fast: Option<Vec<i128>> = table
            .rows
            .iter()
            .map(|row| {
                row.iter().try_fold(0i128, |acc, &(p, q, m)| {
                    let t = ai[p as usize].checked_mul(bi[q as usize])?.checked_mul(m as i128)?;
                    acc.checked_add(t)
                })
            })
            .collect();
        if let Some(vals) = fast {
            return Ok(CoefficientVector::from_integers(table.graph_hash, 4, &vals, derivation));
        }
    }
    let values = table
        .rows
        .iter()
        .map(|row| {
            let mut acc = BigRational::zero();
            for &(p, q, m) in row {
                let (x, y) = (&a.values[p as usize], &b.values[q as usize]);
                if !x.is_zero() && !y.is_zero() {
                    acc += x * y * BigRational::from_integer(m.into());
                }
            }
            acc
        })
        .collect();
    Ok(CoefficientVector { graph_hash: table.graph_hash, k: 4, values, derivation })
}

fn permuted(a: &CoefficientVector, index: &OrbitIndex, perm: [usize; 4], derivation: Derivation) -> CoefficientVector {
    assert_eq!(a.k, 4);
    assert_eq!(a.graph_hash, index.graph_hash());
    let values = index
        .representatives()
        .iter()
        .map(|x| a.values[index.lookup(&[x[perm[0]], x[perm[1]], x[perm[2]], x[perm[3]]])].clone())
        .collect();
    CoefficientVector { graph_hash: a.graph_hash, k: 4, values, derivation }
}

/// `rot(a)^{x0,x1,x2,x3} = a^{x3,x0,x1,x2}`.
pub fn rot(a: &CoefficientVector, index: &OrbitIndex, derivation: Derivation) -> CoefficientVector {
    permuted(a, index, [3, 0, 1, 2], derivation)
}

/// `invrot(a)^{x0,x1,x2,x3} = a^{x1,x2,x3,x0}`.
pub fn invrot(a: &CoefficientVector, index: &OrbitIndex, derivation: Derivation) -> CoefficientVector {
    permuted(a, index, [1, 2, 3, 0], derivation)
}

fn indicator(g: &Graph, index: &OrbitIndex, f: impl Fn(&[usize]) -> bool, derivation: Derivation) -> CoefficientVector {
    assert_eq!(index.k(), 4);
    let vals: Vec<i128> = index.representatives().iter().map(|x| f(x) as i128).collect();
    CoefficientVector::from_integers(g.adjacency_hash(), 4, &vals, derivation)
}

/// Raw value 1 exactly when `x0 = x2` and `x1 = x3`.
pub fn flip(g: &Graph, index: &OrbitIndex) -> CoefficientVector {
    indicator(g, index, |x| x[0] == x[2] && x[1] == x[3], Derivation::Flip)
}

/// The unit `δ_{x0,x3} δ_{x1,x2}` of the product.
pub fn unit(g: &Graph, index: &OrbitIndex) -> CoefficientVector {
    indicator(g, index, |x| x[0] == x[3] && x[1] == x[2], Derivation::Literal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families;
    use crate::symmetry::automorphism_group;

    #[test]
    fn unit_and_all_ones() {
        let g = families::cycle(5).unwrap();
        let idx = OrbitIndex::build(&g, &automorphism_group(&g), 4).unwrap();
        let t = MultiplicityTable::build(&idx);
        assert!(t.rows_sum_to_n_squared());
        let e = unit(&g, &idx);
        let f = flip(&g, &idx);
        assert_eq!(box_product(&e, &f, &t, Derivation::Literal).unwrap().values, f.values);
        assert_eq!(box_product(&f, &e, &t, Derivation::Literal).unwrap().values, f.values);
        let ones = CoefficientVector::from_integers(g.adjacency_hash(), 4, &vec![1; idx.len()], Derivation::Literal);
        let sq = box_product(&ones, &ones, &t, Derivation::Literal).unwrap();
        assert!(sq.as_i128().unwrap().iter().all(|&v| v == 25));
        let r = rot(&f, &idx, Derivation::Literal);
        assert_eq!(invrot(&r, &idx, Derivation::Literal).values, f.values);
    }

    #[test]
    fn cache_round_trip_and_rejection() {
        let g = families::hamming(3).unwrap();
        let idx = OrbitIndex::build(&g, &automorphism_group(&g), 4).unwrap();
        let t = MultiplicityTable::build(&idx);
        let dir = std::env::temp_dir().join(format!("qsym-mult-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("h3.mult");
        t.save(&path).unwrap();
        assert_eq!(MultiplicityTable::load(&path, &idx).unwrap(), t);
        let other = families::cycle(9).unwrap();
        let oidx = OrbitIndex::build(&other, &automorphism_group(&other), 4).unwrap();
        assert!(matches!(MultiplicityTable::load(&path, &oidx), Err(BoxError::HashMismatch)));
        let mut bytes = std::fs::read(&path).unwrap();
        bytes.truncate(bytes.len() - 1);
        std::fs::write(&path, bytes).unwrap();
        assert!(MultiplicityTable::load(&path, &idx).is_err());
        std::fs::remove_dir_all(dir).ok();
    }
}
