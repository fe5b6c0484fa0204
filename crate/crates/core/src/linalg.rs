//! Dense exact matrices: fraction-free rank, reduced row echelon form,
//! kernel bases and linear solves.
//!
//! Rank uses Bareiss elimination, whose divisions are exact over any
//! integral domain, keeping intermediate entries at determinant-minor size.
//! Kernel and solve require field division and are restricted to
//! [`FieldScalar`] coefficients.

use crate::error::{Error, Result};
use crate::scalar::{FieldScalar, Scalar};
use crate::Rat;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix<C = Rat> {
    rows: usize,
    cols: usize,
    a: Vec<C>,
}

impl<C: Scalar> Matrix<C> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            a: vec![C::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<C>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::Internal("ragged matrix rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            a: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &C {
        &self.a[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: C) {
        self.a[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(|x| x.is_zero())
    }

    pub fn mul(&self, other: &Matrix<C>) -> Result<Matrix<C>> {
        if self.cols != other.rows {
            return Err(Error::Internal("matrix dimension mismatch".into()));
        }
        let mut out: Matrix<C> = Matrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let lhs = self.at(i, k);
                if lhs.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let add = lhs.clone() * other.at(k, j).clone();
                    let cur = out.at(i, j).clone();
                    out.set(i, j, cur + add);
                }
            }
        }
        Ok(out)
    }

    fn swap_rows(a: &mut [C], cols: usize, i: usize, j: usize) {
        if i == j {
            return;
        }
        for k in 0..cols {
            a.swap(i * cols + k, j * cols + k);
        }
    }

    /// Rank by fraction-free (Bareiss) elimination.
    pub fn rank(&self) -> usize {
        let mut a = self.a.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut prev = C::one();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pivot) = (r..rows).find(|&i| !a[i * cols + c].is_zero()) else {
                continue;
            };
            Self::swap_rows(&mut a, cols, r, pivot);
            for i in r + 1..rows {
                for j in c + 1..cols {
                    let num = a[r * cols + c].clone() * a[i * cols + j].clone()
                        - a[i * cols + c].clone() * a[r * cols + j].clone();
                    a[i * cols + j] = num / prev.clone();
                }
                a[i * cols + c] = C::zero();
            }
            prev = a[r * cols + c].clone();
            r += 1;
        }
        r
    }
}

impl<C: FieldScalar> Matrix<C> {
    /// Reduced row echelon form; returns (rank, pivot columns, rref).
    pub fn rref(&self) -> (usize, Vec<usize>, Matrix<C>) {
        let mut m = self.clone();
        let (rows, cols) = (m.rows, m.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pivot) = (r..rows).find(|&i| !m.at(i, c).is_zero()) else {
                continue;
            };
            Self::swap_rows(&mut m.a, cols, r, pivot);
            let inv = C::one() / m.at(r, c).clone();
            for j in c..cols {
                let v = m.at(r, j).clone() * inv.clone();
                m.set(r, j, v);
            }
            for i in 0..rows {
                if i == r || m.at(i, c).is_zero() {
                    continue;
                }
                let f = m.at(i, c).clone();
                for j in c..cols {
                    let v = m.at(i, j).clone() - f.clone() * m.at(r, j).clone();
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (r, pivots, m)
    }

    /// A basis of `ker(self)` as column coordinate vectors, one per free
    /// column, in column order.
    pub fn kernel_basis(&self) -> Vec<Vec<C>> {
        let (_, pivots, r) = self.rref();
        let mut out = Vec::new();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        for f in 0..self.cols {
            if is_pivot[f] {
                continue;
            }
            let mut v = vec![C::zero(); self.cols];
            v[f] = C::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -r.at(i, f).clone();
            }
            out.push(v);
        }
        out
    }

    /// One solution of `self * x = rhs`, free coordinates set to zero;
    /// `None` when the system is inconsistent.
    pub fn solve(&self, rhs: &[C]) -> Option<Vec<C>> {
        assert_eq!(rhs.len(), self.rows);
        let mut aug = Matrix::zero(self.rows, self.cols + 1);
        for (i, b) in rhs.iter().enumerate() {
            for j in 0..self.cols {
                aug.set(i, j, self.at(i, j).clone());
            }
            aug.set(i, self.cols, b.clone());
        }
        let (_, pivots, r) = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![C::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = r.at(i, self.cols).clone();
        }
        Some(x)
    }
}
