//! Connection sets of the affine polar graphs `VO^±(2k, 2)` and their recursions.
//!
//! A vector of F_2^{2k} is stored as an integer whose bits, from the most
//! significant down, are `x0 y0 x1 y1 ... x_{k-1} y_{k-1}`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::quadratic::QuadraticForm;
use crate::bitset::Bitset;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

impl FromStr for Sign {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "+" | "plus" | "h" | "hyperbolic" => Ok(Sign::Plus),
            "-" | "minus" | "e" | "elliptic" => Ok(Sign::Minus),
            other => Err(format!("unknown sign {other}")),
        }
    }
}

/// Unpacks a vector index into its 2k coordinates.
pub fn coords(v: usize, k: usize) -> Vec<u32> {
    (0..2 * k).map(|i| ((v >> (2 * k - 1 - i)) & 1) as u32).collect()
}

fn form(sign: Sign, k: usize) -> QuadraticForm {
    match sign {
        Sign::Plus => QuadraticForm::Hyperbolic { k },
        Sign::Minus => QuadraticForm::Elliptic { k },
    }
}

/// Value of `Q_h` (sign `+`) or `Q_e` (sign `-`) at a packed vector.
pub fn q_value(sign: Sign, k: usize, v: usize) -> u32 {
    form(sign, k).eval(&coords(v, k))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Level {
    /// Nonzero singular vectors, `Q = 0`.
    Y,
    /// Vectors with `Q = 1`.
    Z,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleySet {
    pub k: usize,
    pub sign: Sign,
    pub level: Level,
    members: Bitset,
}

impl CayleySet {
    pub fn y(sign: Sign, k: usize) -> Self {
        Self::build(sign, k, Level::Y)
    }

    pub fn z(sign: Sign, k: usize) -> Self {
        Self::build(sign, k, Level::Z)
    }

    fn build(sign: Sign, k: usize, level: Level) -> Self {
        let size = 1usize << (2 * k);
        let want = matches!(level, Level::Z) as u32;
        let members = (0..size)
            .filter(|&v| v != 0 && q_value(sign, k, v) == want)
            .fold(Bitset::new(size), |mut b, v| {
                b.insert(v);
                b
            });
        CayleySet { k, sign, level, members }
    }

    pub fn from_members(k: usize, sign: Sign, level: Level, members: Bitset) -> Self {
        assert_eq!(members.len(), 1 << (2 * k));
        CayleySet { k, sign, level, members }
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.contains(v)
    }

    pub fn members(&self) -> &Bitset {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.count()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter()
    }
}

/// `2^{2k-1} + 2^{k-1} - 1` for `+`, `2^{2k-1} - 2^{k-1} - 1` for `-`.
pub fn closed_form_size(sign: Sign, k: usize) -> usize {
    let big = 1usize << (2 * k - 1);
    let small = 1usize << (k - 1);
    match sign {
        Sign::Plus => big + small - 1,
        Sign::Minus => big - small - 1,
    }
}

/// Which of the two set identities is being checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Identity {
    Hyperbolic,
    Elliptic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecursionWitness {
    pub identity: Identity,
    /// Packed vector of F_2^{2(k+1)} lying in exactly one side.
    pub vector: usize,
    pub coords: Vec<u32>,
    pub in_left: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecursionReport {
    pub k: usize,
    pub hyperbolic_holds: bool,
    pub elliptic_holds: bool,
    pub y_h_next: usize,
    pub y_e_next: usize,
    pub witness: Option<RecursionWitness>,
}

impl RecursionReport {
    pub fn passed(&self) -> bool {
        self.hyperbolic_holds && self.elliptic_holds
    }
}

/// Sets entering the recursions at level `k`; each may be replaced to test the checker.
#[derive(Clone, Debug)]
pub struct RecursionInputs {
    pub y_h_k: CayleySet,
    pub z_h_k: CayleySet,
    pub y_h_1: CayleySet,
    pub z_h_1: CayleySet,
    pub z_e_1: CayleySet,
}

impl RecursionInputs {
    pub fn new(k: usize) -> Self {
        RecursionInputs {
            y_h_k: CayleySet::y(Sign::Plus, k),
            z_h_k: CayleySet::z(Sign::Plus, k),
            y_h_1: CayleySet::y(Sign::Plus, 1),
            z_h_1: CayleySet::z(Sign::Plus, 1),
            z_e_1: CayleySet::z(Sign::Minus, 1),
        }
    }
}

/// Checks
/// `Y_{k+1} = Y_k×Y_1 ∪ Y_k×{0} ∪ {0}×Y_1 ∪ Z_k×Z_1` and
/// `Y^e_{k+1} = Y^h_k×{0} ∪ Z^h_k×Z^e_1` as exact set equalities.
pub fn cayley_recursion_check(k: usize) -> RecursionReport {
    check_recursions(k, &RecursionInputs::new(k))
}

pub fn check_recursions(k: usize, inp: &RecursionInputs) -> RecursionReport {
    assert!(k >= 1);
    let size = 1usize << (2 * (k + 1));
    let in_hyp = |v: usize| {
        let (a, b) = (v >> 2, v & 3);
        let (ya, yb) = (inp.y_h_k.contains(a), inp.y_h_1.contains(b));
        (ya && yb) || (ya && b == 0) || (a == 0 && yb) || (inp.z_h_k.contains(a) && inp.z_h_1.contains(b))
    };
    let in_ell = |v: usize| {
        let (a, b) = (v >> 2, v & 3);
        (inp.y_h_k.contains(a) && b == 0) || (inp.z_h_k.contains(a) && inp.z_e_1.contains(b))
    };
    let y_h = CayleySet::y(Sign::Plus, k + 1);
    let y_e = CayleySet::y(Sign::Minus, k + 1);
    let mut witness = None;
    let mut hyperbolic_holds = true;
    let mut elliptic_holds = true;
    for v in 0..size {
        if y_h.contains(v) != in_hyp(v) {
            hyperbolic_holds = false;
            witness.get_or_insert(RecursionWitness {
                identity: Identity::Hyperbolic,
                vector: v,
                coords: coords(v, k + 1),
                in_left: y_h.contains(v),
            });
        }
        if y_e.contains(v) != in_ell(v) {
            elliptic_holds = false;
            witness.get_or_insert(RecursionWitness {
                identity: Identity::Elliptic,
                vector: v,
                coords: coords(v, k + 1),
                in_left: y_e.contains(v),
            });
        }
    }
    RecursionReport { k, hyperbolic_holds, elliptic_holds, y_h_next: y_h.len(), y_e_next: y_e.len(), witness }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_sets() {
        assert_eq!(CayleySet::y(Sign::Plus, 1).iter().collect::<Vec<_>>(), vec![0b01, 0b10]);
        assert_eq!(CayleySet::z(Sign::Plus, 1).iter().collect::<Vec<_>>(), vec![0b11]);
        assert!(CayleySet::y(Sign::Minus, 1).is_empty());
        assert_eq!(CayleySet::z(Sign::Minus, 1).len(), 3);
    }

    #[test]
    fn sizes_match_closed_forms() {
        for k in 1..=6 {
            for sign in [Sign::Plus, Sign::Minus] {
                assert_eq!(CayleySet::y(sign, k).len(), closed_form_size(sign, k), "{sign} k={k}");
            }
        }
    }

    #[test]
    fn recursions_hold() {
        for k in 1..=4 {
            let r = cayley_recursion_check(k);
            assert!(r.passed(), "{r:?}");
        }
        assert_eq!(cayley_recursion_check(4).y_h_next, 527);
    }

    #[test]
    fn corrupted_z_is_caught() {
        let k = 2;
        let mut inp = RecursionInputs::new(k);
        let mut bad = inp.z_h_k.members().clone();
        let first = bad.iter().next().unwrap();
        bad.remove(first);
        inp.z_h_k = CayleySet::from_members(k, Sign::Plus, Level::Z, bad);
        let r = check_recursions(k, &inp);
        assert!(!r.passed());
        let w = r.witness.unwrap();
        assert_eq!(w.vector >> 2, first);
        assert!(w.in_left);
    }
}
