//! Dense Gaussian elimination over a finite field.
//!
//! Dimensions stay small (jet matching, function-field Artin-Schreier
//! systems), so a straightforward row reduction is all we need.

use crate::field::{FieldElem, FieldSpec};
use std::sync::Arc;

/// Row-major matrix over one field.
#[derive(Clone, Debug)]
pub struct Matrix {
    pub spec: Arc<FieldSpec>,
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<FieldElem>,
}

impl Matrix {
    pub fn zero(spec: &Arc<FieldSpec>, rows: usize, cols: usize) -> Matrix {
        Matrix {
            spec: spec.clone(),
            rows,
            cols,
            data: vec![FieldElem::zero(spec); rows * cols],
        }
    }

    pub fn at(&self, r: usize, c: usize) -> &FieldElem {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: FieldElem) {
        self.data[r * self.cols + c] = v;
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Reduced row echelon form; returns pivot column per rank row.
    fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..self.cols {
            let Some(pr) = (r..self.rows).find(|&i| !self.at(i, col).is_zero()) else {
                continue;
            };
            self.swap_rows(r, pr);
            let inv = self.at(r, col).inv();
            for c in col..self.cols {
                let v = self.at(r, c).mul(&inv);
                self.set(r, c, v);
            }
            for i in 0..self.rows {
                if i != r && !self.at(i, col).is_zero() {
                    let factor = self.at(i, col).clone();
                    for c in col..self.cols {
                        let v = self.at(i, c).sub(&factor.mul(self.at(r, c)));
                        self.set(i, c, v);
                    }
                }
            }
            pivots.push(col);
            r += 1;
            if r == self.rows {
                break;
            }
        }
        pivots
    }
}

/// One solution of A x = b, if any.
pub fn solve(a: &Matrix, b: &[FieldElem]) -> Option<Vec<FieldElem>> {
    assert_eq!(a.rows, b.len());
    let spec = &a.spec;
    let mut aug = Matrix::zero(spec, a.rows, a.cols + 1);
    for r in 0..a.rows {
        for c in 0..a.cols {
            aug.set(r, c, a.at(r, c).clone());
        }
        aug.set(r, a.cols, b[r].clone());
    }
    let pivots = aug.rref();
    // inconsistent if a pivot lands in the rhs column
    if pivots.last() == Some(&a.cols) {
        return None;
    }
    let mut x = vec![FieldElem::zero(spec); a.cols];
    for (row, &col) in pivots.iter().enumerate() {
        x[col] = aug.at(row, a.cols).clone();
    }
    Some(x)
}

/// Basis of the nullspace of A.
pub fn nullspace(a: &Matrix) -> Vec<Vec<FieldElem>> {
    let spec = &a.spec;
    let mut m = a.clone();
    let pivots = m.rref();
    let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..a.cols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![FieldElem::zero(spec); a.cols];
        v[free] = FieldElem::one(spec);
        for (row, &col) in pivots.iter().enumerate() {
            v[col] = m.at(row, free).neg();
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    #[test]
    fn solve_and_nullspace_over_gf4() {
        let f4 = FieldSpec::with_default_modulus(2, 2, "w").unwrap();
        let w = FieldElem::generator(&f4);
        let one = FieldElem::one(&f4);
        // [1 w; w w^2] is rank 1
        let mut a = Matrix::zero(&f4, 2, 2);
        a.set(0, 0, one.clone());
        a.set(0, 1, w.clone());
        a.set(1, 0, w.clone());
        a.set(1, 1, w.square());
        let b = vec![w.clone(), w.square()];
        let x = solve(&a, &b).unwrap();
        // check A x = b
        for r in 0..2 {
            let got = a.at(r, 0).mul(&x[0]).add(&a.at(r, 1).mul(&x[1]));
            assert_eq!(got, b[r]);
        }
        assert_eq!(nullspace(&a).len(), 1);
        // inconsistent system
        let b_bad = vec![one.clone(), one.clone()];
        assert!(solve(&a, &b_bad).is_none());
    }
}
