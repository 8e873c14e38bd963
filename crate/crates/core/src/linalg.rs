//! Dense exact linear algebra over the rationals.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::poly::{Monomial, Polynomial, Rational};

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.cols + c] = v;
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self.get(r, col).is_zero()) else { continue };
            if p != row {
                for c in 0..self.cols {
                    self.data.swap(p * self.cols + c, row * self.cols + c);
                }
            }
            let inv = self.get(row, col).recip();
            for c in col..self.cols {
                let v = self.get(row, c) * &inv;
                self.set(row, c, v);
            }
            for r in 0..self.rows {
                if r == row || self.get(r, col).is_zero() {
                    continue;
                }
                let factor = self.get(r, col).clone();
                for c in col..self.cols {
                    let v = self.get(r, c) - &factor * self.get(row, c);
                    self.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of `{x : A x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![Rational::zero(); self.cols];
                x[f] = Rational::one();
                for (r, &p) in pivots.iter().enumerate() {
                    x[p] = -m.get(r, f).clone();
                }
                x
            })
            .collect()
    }

    /// Some solution of `A x = b`, if one exists.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for (r, rhs) in b.iter().enumerate() {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, self.cols, rhs.clone());
        }
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = aug.get(r, self.cols).clone();
        }
        Some(x)
    }
}

/// Coordinates of polynomials against the union of their monomial supports.
///
/// Column `j` of the returned matrix is polynomial `j`; rows are monomials.
pub fn coefficient_matrix(polys: &[Polynomial], extra: &[&Polynomial]) -> (Matrix, Vec<Vec<Rational>>) {
    let mut index: BTreeMap<Monomial, usize> = BTreeMap::new();
    for p in polys.iter().chain(extra.iter().copied()) {
        for (m, _) in p.terms() {
            let next = index.len();
            index.entry(m.clone()).or_insert(next);
        }
    }
    let mut mat = Matrix::zeros(index.len(), polys.len());
    for (j, p) in polys.iter().enumerate() {
        for (m, c) in p.terms() {
            mat.set(index[m], j, c.clone());
        }
    }
    let rhs = extra
        .iter()
        .map(|p| {
            let mut v = vec![Rational::zero(); index.len()];
            for (m, c) in p.terms() {
                v[index[m]] = c.clone();
            }
            v
        })
        .collect();
    (mat, rhs)
}

/// Coefficients `x` with `Σ x_j polys_j = target`, if any.
pub fn express(polys: &[Polynomial], target: &Polynomial) -> Option<Vec<Rational>> {
    if polys.is_empty() {
        return if target.is_zero() { Some(Vec::new()) } else { None };
    }
    let (mat, rhs) = coefficient_matrix(polys, &[target]);
    if mat.rows == 0 {
        return Some(vec![Rational::zero(); polys.len()]);
    }
    mat.solve(&rhs[0])
}

/// Rank of the span of `polys`.
pub fn span_rank(polys: &[Polynomial]) -> usize {
    if polys.is_empty() {
        return 0;
    }
    let (mat, _) = coefficient_matrix(polys, &[]);
    if mat.rows == 0 {
        return 0;
    }
    mat.rank()
}
