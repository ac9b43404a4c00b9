//! Quadratic forms over prime fields and projective points of V(6, p).

use super::field::PrimeField;
use super::GraphError;

/// Coefficients `(a0, a1, a2)` of `a0 v0^2 + a1 v0 v1 + a2 v1^2`.
pub type BinaryCoeffs = (u32, u32, u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuadraticForm {
    /// `Q(v) = v0 v1 + v2 v3 + Qe(v4, v5)` on V(6, p).
    O6 { field: PrimeField, qe: BinaryCoeffs },
    /// An anisotropic binary form `Qe` on V(2, p).
    Anisotropic2 { field: PrimeField, coeffs: BinaryCoeffs },
    /// `Q_h = sum x_i y_i` on F_2^{2k}.
    Hyperbolic { k: usize },
    /// `Q_h` on the first k-1 pairs plus `x^2 + y^2 + x y` on the last pair, over F_2.
    Elliptic { k: usize },
}

/// True when `a0 + a1 T + a2 T^2` has no root in F_p (degree exactly two).
pub fn is_irreducible_quadratic(field: PrimeField, (a0, a1, a2): BinaryCoeffs) -> bool {
    let p = field.modulus();
    a2 % p != 0 && (0..p).all(|t| field.add(field.add(a0, field.mul(a1, t)), field.mul(a2, field.mul(t, t))) != 0)
}

/// First `(a0, a1, 1)` in lexicographic order for which `a0 + a1 T + T^2` is irreducible.
pub fn default_irreducible(field: PrimeField) -> BinaryCoeffs {
    let p = field.modulus();
    for a0 in 0..p {
        for a1 in 0..p {
            if is_irreducible_quadratic(field, (a0, a1, 1)) {
                return (a0, a1, 1);
            }
        }
    }
    unreachable!("every prime field has an irreducible monic quadratic")
}

/// All monic irreducible quadratics `(a0, a1, 1)` in lexicographic order.
pub fn monic_irreducibles(field: PrimeField) -> Vec<BinaryCoeffs> {
    let p = field.modulus();
    (0..p)
        .flat_map(|a0| (0..p).map(move |a1| (a0, a1, 1)))
        .filter(|&c| is_irreducible_quadratic(field, c))
        .collect()
}

fn binary(field: PrimeField, (a0, a1, a2): BinaryCoeffs, v0: u32, v1: u32) -> u32 {
    let f = field;
    f.add(f.add(f.mul(a0, f.mul(v0, v0)), f.mul(a1, f.mul(v0, v1))), f.mul(a2, f.mul(v1, v1)))
}

impl QuadraticForm {
    pub fn o6(field: PrimeField, qe: BinaryCoeffs) -> Result<Self, GraphError> {
        if !is_irreducible_quadratic(field, qe) {
            return Err(GraphError::InvalidParameters(format!("{qe:?} is not irreducible over F_{}", field.modulus())));
        }
        Ok(QuadraticForm::O6 { field, qe })
    }

    pub fn arity(&self) -> usize {
        match self {
            QuadraticForm::O6 { .. } => 6,
            QuadraticForm::Anisotropic2 { .. } => 2,
            QuadraticForm::Hyperbolic { k } | QuadraticForm::Elliptic { k } => 2 * k,
        }
    }

    /// Evaluates the form on a coordinate vector of residues.
    pub fn eval(&self, v: &[u32]) -> u32 {
        assert_eq!(v.len(), self.arity());
        match *self {
            QuadraticForm::O6 { field: f, qe } => {
                let hyp = f.add(f.mul(v[0], v[1]), f.mul(v[2], v[3]));
                f.add(hyp, binary(f, qe, v[4], v[5]))
            }
            QuadraticForm::Anisotropic2 { field, coeffs } => binary(field, coeffs, v[0], v[1]),
            QuadraticForm::Hyperbolic { k } => (0..k).map(|i| v[2 * i] & v[2 * i + 1] & 1).sum::<u32>() & 1,
            QuadraticForm::Elliptic { k } => {
                let head = (0..k - 1).map(|i| v[2 * i] & v[2 * i + 1] & 1).sum::<u32>();
                let (x, y) = (v[2 * k - 2] & 1, v[2 * k - 1] & 1);
                (head + x + y + (x & y)) & 1
            }
        }
    }
}

/// A point of projective space, normalized so the first nonzero coordinate is one.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjectivePoint {
    coords: Vec<u32>,
}

impl ProjectivePoint {
    /// Normalizes a nonzero vector; `None` for the zero vector.
    pub fn normalize(field: PrimeField, v: &[u32]) -> Option<Self> {
        let p = field.modulus();
        let lead = v.iter().copied().find(|&x| x % p != 0)?;
        let inv = field.elem(lead).inv()?.value();
        Some(ProjectivePoint { coords: v.iter().map(|&x| field.mul(x % p, inv)).collect() })
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    /// All normalized points of P^{dim-1}(F_p), in lexicographic order.
    pub fn enumerate(field: PrimeField, dim: usize) -> Vec<ProjectivePoint> {
        let p = field.modulus();
        let mut out = Vec::new();
        // leading one at position `lead`, zeros before, anything after
        for lead in 0..dim {
            let tail = dim - lead - 1;
            let count = (p as usize).pow(tail as u32);
            for idx in 0..count {
                let mut coords = vec![0u32; dim];
                coords[lead] = 1;
                let mut r = idx;
                for j in (lead + 1..dim).rev() {
                    coords[j] = (r % p as usize) as u32;
                    r /= p as usize;
                }
                out.push(ProjectivePoint { coords });
            }
        }
        out.sort();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_irreducibles() {
        assert_eq!(default_irreducible(PrimeField::new(2).unwrap()), (1, 1, 1));
        assert_eq!(default_irreducible(PrimeField::new(3).unwrap()), (1, 0, 1));
        assert_eq!(monic_irreducibles(PrimeField::new(3).unwrap()), vec![(1, 0, 1), (2, 1, 1), (2, 2, 1)]);
    }

    #[test]
    fn anisotropic_forms_vanish_only_at_zero() {
        for p in [2, 3, 5, 7] {
            let f = PrimeField::new(p).unwrap();
            for coeffs in monic_irreducibles(f) {
                let q = QuadraticForm::Anisotropic2 { field: f, coeffs };
                for a in 0..p {
                    for b in 0..p {
                        assert_eq!(q.eval(&[a, b]) == 0, a == 0 && b == 0, "p={p} {coeffs:?} ({a},{b})");
                    }
                }
            }
        }
    }

    #[test]
    fn normalization_is_scale_invariant_and_idempotent() {
        let f = PrimeField::new(5).unwrap();
        let v = [0, 3, 1, 4, 0, 2];
        let n = ProjectivePoint::normalize(f, &v).unwrap();
        assert_eq!(n.coords()[1], 1);
        for lambda in 1..5 {
            let scaled: Vec<u32> = v.iter().map(|&x| f.mul(x, lambda)).collect();
            assert_eq!(ProjectivePoint::normalize(f, &scaled).unwrap(), n);
        }
        assert_eq!(ProjectivePoint::normalize(f, n.coords()).unwrap(), n);
        assert!(ProjectivePoint::normalize(f, &[0; 6]).is_none());
    }

    #[test]
    fn projective_point_count() {
        let f = PrimeField::new(3).unwrap();
        // (3^6 - 1) / 2
        assert_eq!(ProjectivePoint::enumerate(f, 6).len(), 364);
    }

    #[test]
    fn elliptic_last_pair() {
        let q = QuadraticForm::Elliptic { k: 1 };
        assert_eq!(q.eval(&[0, 0]), 0);
        assert_eq!(q.eval(&[1, 0]), 1);
        assert_eq!(q.eval(&[0, 1]), 1);
        assert_eq!(q.eval(&[1, 1]), 1);
    }
}
