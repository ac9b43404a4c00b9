//! Incremental exact row reduction over the rationals.

use num_rational::BigRational;
use num_traits::{One, Zero};

#[derive(Clone, Debug)]
struct Row {
    pivot: usize,
    values: Vec<BigRational>,
    /// The row as a combination of the independent elements inserted so far.
    combination: Vec<BigRational>,
}

/// Span of the vectors inserted so far, kept in reduced row echelon form.
/// Only linearly independent insertions are retained, and every row remembers
/// how it is built from them, so membership queries return explicit
/// coefficients.
#[derive(Clone, Debug)]
pub struct SpanBasis {
    dim: usize,
    rows: Vec<Row>,
    /// Caller ids of the independent insertions, in insertion order.
    members: Vec<usize>,
    tracked: Option<Vec<BigRational>>,
}

fn axpy(y: &mut [BigRational], a: &BigRational, x: &[BigRational]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi -= a * xi;
        }
    }
}

impl SpanBasis {
    pub fn new(dim: usize) -> Self {
        SpanBasis { dim, rows: Vec::new(), members: Vec::new(), tracked: None }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn is_full(&self) -> bool {
        self.rank() == self.dim
    }

    /// Reduces `v` against the current rows, returning the residual and the
    /// multiples of each row that were subtracted.
    fn reduce(&self, v: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
        assert_eq!(v.len(), self.dim, "vector length");
        let mut r = v.to_vec();
        let mut used = Vec::with_capacity(self.rows.len());
        for row in &self.rows {
            let c = r[row.pivot].clone();
            if !c.is_zero() {
                axpy(&mut r, &c, &row.values);
            }
            used.push(c);
        }
        (r, used)
    }

    pub fn contains(&self, v: &[BigRational]) -> bool {
        self.reduce(v).0.iter().all(Zero::is_zero)
    }

    /// Coefficients over [`SpanBasis::members`] expressing `v`, if it lies in the span.
    pub fn solve(&self, v: &[BigRational]) -> Option<Vec<BigRational>> {
        let (r, used) = self.reduce(v);
        if !r.iter().all(Zero::is_zero) {
            return None;
        }
        let mut out = vec![BigRational::zero(); self.members.len()];
        for (c, row) in used.iter().zip(&self.rows) {
            if !c.is_zero() {
                for (o, x) in out.iter_mut().zip(&row.combination) {
                    *o += c * x;
                }
            }
        }
        Some(out)
    }

    /// Adds `v` under the caller's `id` if it is independent; returns whether it was.
    pub fn insert(&mut self, id: usize, v: &[BigRational]) -> bool {
        let (mut r, used) = self.reduce(v);
        let Some(pivot) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let m = self.members.len();
        // r = v - sum used_i row_i, and each row_i is a combination of members
        let mut comb = vec![BigRational::zero(); m + 1];
        comb[m] = BigRational::one();
        for (c, row) in used.iter().zip(&self.rows) {
            if !c.is_zero() {
                for (o, x) in comb.iter_mut().zip(&row.combination) {
                    *o -= c * x;
                }
            }
        }
        let inv = r[pivot].recip();
        for x in r.iter_mut().chain(comb.iter_mut()) {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        for row in &mut self.rows {
            row.combination.push(BigRational::zero());
            let c = row.values[pivot].clone();
            if !c.is_zero() {
                axpy(&mut row.values, &c, &r);
                axpy(&mut row.combination, &c, &comb);
            }
        }
        if let Some(t) = &mut self.tracked {
            let c = t[pivot].clone();
            if !c.is_zero() {
                axpy(t, &c, &r);
            }
        }
        let at = self.rows.partition_point(|row| row.pivot < pivot);
        self.rows.insert(at, Row { pivot, values: r, combination: comb });
        self.members.push(id);
        true
    }

    /// Starts maintaining the residual of `target` modulo the span, so
    /// [`SpanBasis::tracked_in_span`] is cheap after every insertion.
    pub fn track(&mut self, target: &[BigRational]) {
        self.tracked = Some(self.reduce(target).0);
    }

    pub fn tracked_in_span(&self) -> bool {
        self.tracked.as_ref().is_some_and(|t| t.iter().all(Zero::is_zero))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| BigRational::from_integer(x.into())).collect()
    }

    #[test]
    fn solve_returns_combination_of_members() {
        let mut s = SpanBasis::new(3);
        assert!(s.insert(10, &q(&[1, 2, 0])));
        assert!(s.insert(11, &q(&[0, 1, 1])));
        assert!(!s.insert(12, &q(&[2, 5, 1])));
        s.track(&q(&[1, 1, -1]));
        assert!(s.tracked_in_span());
        let c = s.solve(&q(&[1, 1, -1])).unwrap();
        assert_eq!(c, q(&[1, -1]));
        assert_eq!(s.members(), &[10, 11]);
        assert!(s.solve(&q(&[0, 0, 1])).is_none());
        assert!(s.insert(13, &q(&[0, 0, 3])));
        assert!(s.is_full());
    }
}
