//! Arithmetic in prime fields F_p.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::GraphError;

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The prime field F_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self, GraphError> {
        if is_prime(p) {
            Ok(PrimeField { p })
        } else {
            Err(GraphError::NonPrimeModulus(p))
        }
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn elem(&self, value: u32) -> PrimeFieldElem {
        PrimeFieldElem { value: value % self.p, p: self.p }
    }

    pub fn zero(&self) -> PrimeFieldElem {
        self.elem(0)
    }

    pub fn one(&self) -> PrimeFieldElem {
        self.elem(1)
    }

    pub fn elements(&self) -> impl Iterator<Item = PrimeFieldElem> + '_ {
        (0..self.p).map(move |v| self.elem(v))
    }

    // raw helpers on residues, used in the hot loops of the constructors
    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        (a + b) % self.p
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeFieldElem {
    value: u32,
    p: u32,
}

impl PrimeFieldElem {
    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = PrimeFieldElem { value: 1 % self.p, p: self.p };
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via Fermat; `None` for zero.
    pub fn inv(self) -> Option<Self> {
        (!self.is_zero()).then(|| self.pow(self.p as u64 - 2))
    }
}

impl fmt::Debug for PrimeFieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.p)
    }
}

impl Add for PrimeFieldElem {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        assert_eq!(self.p, rhs.p, "mixed moduli");
        PrimeFieldElem { value: (self.value + rhs.value) % self.p, p: self.p }
    }
}

impl Sub for PrimeFieldElem {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for PrimeFieldElem {
    type Output = Self;
    fn neg(self) -> Self {
        PrimeFieldElem { value: (self.p - self.value) % self.p, p: self.p }
    }
}

impl Mul for PrimeFieldElem {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        assert_eq!(self.p, rhs.p, "mixed moduli");
        PrimeFieldElem {
            value: ((self.value as u64 * rhs.value as u64) % self.p as u64) as u32,
            p: self.p,
        }
    }
}
