//! The ring Q(ζ) with ζ a primitive eighth root of unity.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

/// `c0 + c1 ζ + c2 ζ² + c3 ζ³` with `ζ⁴ = -1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic8(pub [BigRational; 4]);

impl Cyclotomic8 {
    pub fn from_rational(q: BigRational) -> Self {
        let z = BigRational::zero();
        Cyclotomic8([q, z.clone(), z.clone(), z])
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(n.into()))
    }

    /// `ζ^m` for any integer `m`.
    pub fn zeta_pow(m: i64) -> Self {
        let m = m.rem_euclid(8) as usize;
        let mut c: [BigRational; 4] = std::array::from_fn(|_| BigRational::zero());
        if m < 4 {
            c[m] = BigRational::one();
        } else {
            c[m - 4] = -BigRational::one();
        }
        Cyclotomic8(c)
    }

    /// `i^m = ζ^{2m}`.
    pub fn i_pow(m: i64) -> Self {
        Self::zeta_pow(2 * m)
    }

    /// Complex conjugation, `ζ ↦ ζ⁻¹ = -ζ³`.
    pub fn conj(&self) -> Self {
        let [a, b, c, d] = &self.0;
        Cyclotomic8([a.clone(), -d.clone(), -c.clone(), -b.clone()])
    }

    /// The rational value, if the element is rational.
    pub fn as_rational(&self) -> Option<BigRational> {
        self.0[1..].iter().all(Zero::is_zero).then(|| self.0[0].clone())
    }
}

impl Zero for Cyclotomic8 {
    fn zero() -> Self {
        Self::from_int(0)
    }

    fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }
}

impl One for Cyclotomic8 {
    fn one() -> Self {
        Self::from_int(1)
    }
}

impl Add for Cyclotomic8 {
    type Output = Cyclotomic8;

    fn add(self, o: Self) -> Self {
        &self + &o
    }
}

impl Add for &Cyclotomic8 {
    type Output = Cyclotomic8;

    fn add(self, o: Self) -> Cyclotomic8 {
        Cyclotomic8(std::array::from_fn(|i| &self.0[i] + &o.0[i]))
    }
}

impl Sub for Cyclotomic8 {
    type Output = Cyclotomic8;

    fn sub(self, o: Self) -> Self {
        Cyclotomic8(std::array::from_fn(|i| &self.0[i] - &o.0[i]))
    }
}

impl Neg for Cyclotomic8 {
    type Output = Cyclotomic8;

    fn neg(self) -> Self {
        Cyclotomic8(self.0.map(|c| -c))
    }
}

impl Mul for &Cyclotomic8 {
    type Output = Cyclotomic8;

    fn mul(self, o: Self) -> Cyclotomic8 {
        let mut out: [BigRational; 4] = std::array::from_fn(|_| BigRational::zero());
        for i in 0..4 {
            if self.0[i].is_zero() {
                continue;
            }
            for j in 0..4 {
                if o.0[j].is_zero() {
                    continue;
                }
                let p = &self.0[i] * &o.0[j];
                if i + j < 4 {
                    out[i + j] += p;
                } else {
                    out[i + j - 4] -= p;
                }
            }
        }
        Cyclotomic8(out)
    }
}

impl Mul for Cyclotomic8 {
    type Output = Cyclotomic8;

    fn mul(self, o: Self) -> Self {
        &self * &o
    }
}

impl fmt::Debug for Cyclotomic8 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = &self.0;
        write!(f, "({a} + {b}ζ + {c}ζ² + {d}ζ³)")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_of_unity() {
        let z = Cyclotomic8::zeta_pow(1);
        let mut p = Cyclotomic8::one();
        for m in 0..16 {
            assert_eq!(p, Cyclotomic8::zeta_pow(m));
            p = &p * &z;
        }
        assert_eq!(Cyclotomic8::i_pow(2), Cyclotomic8::from_int(-1));
        assert_eq!(&z * &z.conj(), Cyclotomic8::one());
        let x = Cyclotomic8::zeta_pow(3) + Cyclotomic8::from_int(2);
        assert_eq!(x.conj().conj(), x);
        // conjugation is multiplicative
        let y = Cyclotomic8::zeta_pow(5) + Cyclotomic8::zeta_pow(2);
        assert_eq!((&x * &y).conj(), &x.conj() * &y.conj());
    }
}
