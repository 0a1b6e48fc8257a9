//! Dense exact linear algebra over the rationals.
//!
//! The matrices that show up here are tiny (mesh relation blocks, path-space
//! quotients), so a straightforward dense row reduction over `BigRational`
//! is all we need. No pivoting heuristics, no sparsity.

use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Q = BigRational;

pub fn q_from(n: i64) -> Q {
    Q::from_integer(n.into())
}

/// Row-major dense matrix over the rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Q>,
}

impl QMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        QMat {
            rows,
            cols,
            data: vec![Q::zero(); rows * cols],
        }
    }

    pub fn at(&self, r: usize, c: usize) -> &Q {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut Q {
        &mut self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Q) {
        self.data[r * self.cols + c] = v;
    }

    /// `self * other`.
    pub fn mul(&self, other: &QMat) -> QMat {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        let mut out = QMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if !b.is_zero() {
                        let cur = out.at(i, j).clone();
                        out.set(i, j, cur + a * b);
                    }
                }
            }
        }
        out
    }
}

/// Reduced row echelon form; returns the pivot column of every nonzero row.
pub fn rref(m: &mut QMat) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..m.cols {
        if row == m.rows {
            break;
        }
        let mut pivot_row = None;
        for r in row..m.rows {
            if !m.at(r, col).is_zero() {
                pivot_row = Some(r);
                break;
            }
        }
        let Some(p) = pivot_row else { continue };
        if p != row {
            for c in 0..m.cols {
                let a = m.at(p, c).clone();
                let b = m.at(row, c).clone();
                m.set(p, c, b);
                m.set(row, c, a);
            }
        }
        let inv = {
            let v = m.at(row, col).clone();
            Q::one() / v
        };
        for c in col..m.cols {
            let v = m.at(row, c).clone() * &inv;
            m.set(row, c, v);
        }
        for r in 0..m.rows {
            if r != row && !m.at(r, col).is_zero() {
                let f = m.at(r, col).clone();
                for c in col..m.cols {
                    let v = m.at(r, c).clone() - &f * m.at(row, c);
                    m.set(r, c, v);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Rank of a matrix (consumes a working copy).
pub fn rank(m: &QMat) -> usize {
    let mut w = m.clone();
    rref(&mut w).len()
}

/// Quotient of the ambient column space `Q^dim` by the column span of `rel`.
///
/// Returns `(proj, quot_dim)` where `proj` is a `quot_dim x dim` matrix whose
/// rows express the quotient coordinates (indexed by the non-pivot ambient
/// coordinates) of an ambient vector.
pub fn quotient_by_columns(dim: usize, rel: &QMat) -> (QMat, usize) {
    assert_eq!(rel.rows, dim, "relation matrix must live in the ambient space");
    // Row-reduce the transpose: rows are the relation vectors.
    let mut rt = QMat::zero(rel.cols, dim);
    for r in 0..rel.rows {
        for c in 0..rel.cols {
            rt.set(c, r, rel.at(r, c).clone());
        }
    }
    let pivots = rref(&mut rt);
    let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    let free: Vec<usize> = (0..dim).filter(|c| !pivot_set.contains(c)).collect();
    let mut proj = QMat::zero(free.len(), dim);
    for (qi, &fc) in free.iter().enumerate() {
        *proj.at_mut(qi, fc) = Q::one();
        // A pivot coordinate e_p equals -sum(free coords of its rref row).
        for (ri, &pc) in pivots.iter().enumerate() {
            let coeff = rt.at(ri, fc).clone();
            if !coeff.is_zero() {
                let cur = proj.at(qi, pc).clone();
                proj.set(qi, pc, cur - coeff);
            }
        }
    }
    let q = free.len();
    (proj, q)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_simple() {
        let mut m = QMat::zero(2, 3);
        m.set(0, 0, q_from(2));
        m.set(0, 1, q_from(4));
        m.set(1, 0, q_from(1));
        m.set(1, 1, q_from(2));
        m.set(1, 2, q_from(1));
        let p = rref(&mut m);
        assert_eq!(p, vec![0, 2]);
        assert_eq!(*m.at(0, 1), q_from(2));
    }

    #[test]
    fn quotient_kills_span() {
        // Q^3 / span{(1,1,0)} has dimension 2 and the projection agrees on
        // representatives of the same coset.
        let mut rel = QMat::zero(3, 1);
        rel.set(0, 0, q_from(1));
        rel.set(1, 0, q_from(1));
        let (proj, q) = quotient_by_columns(3, &rel);
        assert_eq!(q, 2);
        let mut v = QMat::zero(3, 1);
        v.set(0, 0, q_from(5));
        v.set(2, 0, q_from(7));
        let mut w = QMat::zero(3, 1);
        w.set(0, 0, q_from(4));
        w.set(1, 0, q_from(-1));
        w.set(2, 0, q_from(7));
        assert_eq!(proj.mul(&v), proj.mul(&w));
    }

    #[test]
    fn rank_counts_independent_columns() {
        let mut m = QMat::zero(3, 3);
        m.set(0, 0, q_from(1));
        m.set(1, 1, q_from(1));
        m.set(2, 0, q_from(1));
        m.set(2, 1, q_from(1));
        assert_eq!(rank(&m), 2);
    }
}
