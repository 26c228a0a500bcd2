//! Exact linear algebra over the rationals.
//!
//! Everything here works on dense row vectors of [`Q`]. The matrices that
//! appear in the pipeline are tiny (tens of rows) with entries in {-1, 0, 1},
//! so dense Gaussian elimination is the right tool.

use num_rational::Rational64;
use num_traits::{One, Zero};

pub type Q = Rational64;

pub fn zeros(n: usize) -> Vec<Q> {
    vec![Q::zero(); n]
}

pub fn unit(n: usize, i: usize) -> Vec<Q> {
    let mut v = zeros(n);
    v[i] = Q::one();
    v
}

pub fn is_zero(v: &[Q]) -> bool {
    v.iter().all(|x| x.is_zero())
}

/// An incrementally grown subspace kept in reduced echelon form.
#[derive(Debug, Clone)]
pub struct Span {
    dim: usize,
    rows: Vec<Vec<Q>>,
    pivots: Vec<usize>,
}

impl Span {
    pub fn new(dim: usize) -> Self {
        Span {
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the current rows.
    fn reduce(&self, v: &mut [Q]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let c = v[p];
                for (x, r) in v.iter_mut().zip(row) {
                    if !r.is_zero() {
                        *x -= c * r;
                    }
                }
            }
        }
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        is_zero(&w)
    }

    /// Adds `v`; returns whether it was independent of the current span.
    pub fn insert(&mut self, v: &[Q]) -> bool {
        assert_eq!(v.len(), self.dim, "vector length mismatch");
        let mut w = v.to_vec();
        self.reduce(&mut w);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = w[p].recip();
        for x in w.iter_mut() {
            *x *= inv;
        }
        // keep the echelon form fully reduced
        for row in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let c = row[p];
                for (x, r) in row.iter_mut().zip(&w) {
                    if !r.is_zero() {
                        *x -= c * r;
                    }
                }
            }
        }
        self.rows.push(w);
        self.pivots.push(p);
        true
    }

    pub fn basis(&self) -> &[Vec<Q>] {
        &self.rows
    }
}

pub fn rank(rows: &[Vec<Q>]) -> usize {
    let Some(first) = rows.first() else {
        return 0;
    };
    let mut span = Span::new(first.len());
    for r in rows {
        span.insert(r);
    }
    span.rank()
}

/// Basis of `{x : A x = 0}` where `a` is given by rows of length `ncols`.
pub fn kernel(a: &[Vec<Q>], ncols: usize) -> Vec<Vec<Q>> {
    let mut span = Span::new(ncols);
    for r in a {
        span.insert(r);
    }
    let mut pivot_of_col = vec![None; ncols];
    for (i, &p) in span.pivots.iter().enumerate() {
        pivot_of_col[p] = Some(i);
    }
    let mut out = Vec::new();
    for free in (0..ncols).filter(|&c| pivot_of_col[c].is_none()) {
        let mut x = zeros(ncols);
        x[free] = Q::one();
        for (row, &p) in span.rows.iter().zip(&span.pivots) {
            x[p] = -row[free];
        }
        out.push(x);
    }
    out
}

/// Matrix-vector product for a matrix stored as rows.
pub fn mat_vec(a: &[Vec<Q>], x: &[Q]) -> Vec<Q> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(x)
                .filter(|(r, v)| !r.is_zero() && !v.is_zero())
                .fold(Q::zero(), |acc, (r, v)| acc + r * v)
        })
        .collect()
}

/// Picks vectors from `candidates` that extend `subspace` to a complement
/// inside the span of `subspace ∪ candidates`.
pub fn complement_from(subspace: &[Vec<Q>], candidates: &[Vec<Q>], dim: usize) -> Vec<Vec<Q>> {
    let mut span = Span::new(dim);
    for v in subspace {
        span.insert(v);
    }
    candidates
        .iter()
        .filter(|c| span.insert(c))
        .cloned()
        .collect()
}

pub fn int_rows(rows: &[Vec<i64>]) -> Vec<Vec<Q>> {
    rows.iter()
        .map(|r| r.iter().map(|&x| Q::from_integer(x)).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(rows: &[&[i64]]) -> Vec<Vec<Q>> {
        int_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    #[test]
    fn rank_of_small_matrices() {
        assert_eq!(rank(&q(&[&[1, 0], &[0, 1]])), 2);
        assert_eq!(rank(&q(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(&q(&[&[0, 0, 0]])), 0);
        assert_eq!(rank(&[]), 0);
    }

    #[test]
    fn kernel_of_projection() {
        let a = q(&[&[1, 0, 0], &[0, 1, 0]]);
        let k = kernel(&a, 3);
        assert_eq!(k, q(&[&[0, 0, 1]]));
    }

    #[test]
    fn complement_skips_dependent_candidates() {
        let sub = q(&[&[1, 1, 0]]);
        let cand = q(&[&[1, 1, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let c = complement_from(&sub, &cand, 3);
        assert_eq!(c, q(&[&[1, 0, 0], &[0, 0, 1]]));
    }

    proptest! {
        #[test]
        fn rank_nullity(rows in proptest::collection::vec(proptest::collection::vec(-2i64..=2, 5), 0..6)) {
            let a = int_rows(&rows);
            let k = kernel(&a, 5);
            prop_assert_eq!(rank(&a) + k.len(), 5);
            for v in &k {
                prop_assert!(is_zero(&mat_vec(&a, v)));
            }
        }
    }
}
