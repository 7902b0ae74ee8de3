//! Small exact matrices over the rationals.  Only what the Hankel
//! classification and the solver need: elimination-based rank,
//! determinants, linear solves and a tolerance-free PSD decision for
//! symmetric matrices.

use crate::arith::Rat;
use num_traits::{Signed, Zero};

#[derive(Clone, Debug, PartialEq)]
pub struct RatMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Rat>,
}

impl RatMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMat { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                *m.at_mut(i, j) = f(i, j);
            }
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c));
        RatMat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn at(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Rat {
        &mut self.data[i * self.cols + j]
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> RatMat {
        RatMat::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn mul(&self, other: &RatMat) -> RatMat {
        assert_eq!(self.cols, other.rows);
        RatMat::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).map(|k| self.at(i, k) * other.at(k, j)).sum()
        })
    }

    pub fn sub(&self, other: &RatMat) -> RatMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        RatMat::from_fn(self.rows, self.cols, |i, j| self.at(i, j) - other.at(i, j))
    }

    /// Leading principal k x k submatrix.
    pub fn leading(&self, k: usize) -> RatMat {
        RatMat::from_fn(k, k, |i, j| self.at(i, j).clone())
    }

    /// Exact rank by Gaussian elimination with partial (first nonzero)
    /// pivoting.
    pub fn rank(&self) -> usize {
        let mut a = self.clone();
        let mut rank = 0;
        for col in 0..a.cols {
            if rank == a.rows {
                break;
            }
            let pivot = (rank..a.rows).find(|&i| !a.at(i, col).is_zero());
            let Some(p) = pivot else { continue };
            if p != rank {
                for j in 0..a.cols {
                    let tmp = a.at(p, j).clone();
                    *a.at_mut(p, j) = a.at(rank, j).clone();
                    *a.at_mut(rank, j) = tmp;
                }
            }
            let inv = a.at(rank, col).recip();
            for i in rank + 1..a.rows {
                let factor = a.at(i, col) * &inv;
                if factor.is_zero() {
                    continue;
                }
                for j in col..a.cols {
                    let v = a.at(i, j) - &(&factor * a.at(rank, j));
                    *a.at_mut(i, j) = v;
                }
            }
            rank += 1;
        }
        rank
    }

    /// Exact determinant by elimination.
    pub fn det(&self) -> Rat {
        assert!(self.is_square());
        let n = self.rows;
        if n == 0 {
            return Rat::from_integer(1.into());
        }
        let mut a = self.clone();
        let mut det = Rat::from_integer(1.into());
        for col in 0..n {
            let pivot = (col..n).find(|&i| !a.at(i, col).is_zero());
            let Some(p) = pivot else { return Rat::zero() };
            if p != col {
                det = -det;
                for j in 0..n {
                    let tmp = a.at(p, j).clone();
                    *a.at_mut(p, j) = a.at(col, j).clone();
                    *a.at_mut(col, j) = tmp;
                }
            }
            det *= a.at(col, col);
            let inv = a.at(col, col).recip();
            for i in col + 1..n {
                let factor = a.at(i, col) * &inv;
                if factor.is_zero() {
                    continue;
                }
                for j in col..n {
                    let v = a.at(i, j) - &(&factor * a.at(col, j));
                    *a.at_mut(i, j) = v;
                }
            }
        }
        det
    }

    /// Solves A y = b exactly; `None` when A is singular.
    pub fn solve(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        assert!(self.is_square());
        assert_eq!(b.len(), self.rows);
        let n = self.rows;
        let mut a = self.clone();
        let mut rhs = b.to_vec();
        for col in 0..n {
            let p = (col..n).find(|&i| !a.at(i, col).is_zero())?;
            if p != col {
                for j in 0..n {
                    let tmp = a.at(p, j).clone();
                    *a.at_mut(p, j) = a.at(col, j).clone();
                    *a.at_mut(col, j) = tmp;
                }
                rhs.swap(p, col);
            }
            let inv = a.at(col, col).recip();
            for i in col + 1..n {
                let factor = a.at(i, col) * &inv;
                if factor.is_zero() {
                    continue;
                }
                for j in col..n {
                    let v = a.at(i, j) - &(&factor * a.at(col, j));
                    *a.at_mut(i, j) = v;
                }
                let v = &rhs[i] - &(&factor * &rhs[col]);
                rhs[i] = v;
            }
        }
        let mut y = vec![Rat::zero(); n];
        for i in (0..n).rev() {
            let mut acc = rhs[i].clone();
            for j in i + 1..n {
                acc -= a.at(i, j) * &y[j];
            }
            y[i] = acc / a.at(i, i);
        }
        Some(y)
    }

    /// For a symmetric matrix, decides positive semidefiniteness exactly
    /// and returns the rank when PSD.
    ///
    /// Repeatedly: a negative diagonal entry kills positivity; a zero
    /// diagonal entry with a nonzero residual row kills positivity,
    /// otherwise that row/column drops out; a positive diagonal entry is
    /// eliminated by a Schur-complement step and counts one toward the
    /// rank.
    pub fn psd_rank(&self) -> Option<usize> {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut active: Vec<usize> = (0..n).collect();
        let mut rank = 0;
        while !active.is_empty() {
            // Drop zero-diagonal indices (their rows must vanish) and
            // reject negative diagonals.
            let mut next = Vec::with_capacity(active.len());
            for &i in &active {
                let d = a.at(i, i);
                if d.is_negative() {
                    return None;
                }
                if d.is_zero() {
                    if active.iter().any(|&j| !a.at(i, j).is_zero()) {
                        return None;
                    }
                } else {
                    next.push(i);
                }
            }
            active = next;
            let Some(&p) = active.first() else { break };
            // Schur complement with respect to (p, p).
            let inv = a.at(p, p).recip();
            for idx in 1..active.len() {
                let i = active[idx];
                let fi = a.at(i, p) * &inv;
                for jdx in 1..active.len() {
                    let j = active[jdx];
                    let v = a.at(i, j) - &(&fi * a.at(p, j));
                    *a.at_mut(i, j) = v;
                }
            }
            for idx in 1..active.len() {
                let i = active[idx];
                *a.at_mut(i, p) = Rat::zero();
                *a.at_mut(p, i) = Rat::zero();
            }
            rank += 1;
            active.remove(0);
        }
        Some(rank)
    }

    /// True iff the vector lies in the column space.
    pub fn contains_in_range(&self, v: &[Rat]) -> bool {
        assert_eq!(v.len(), self.rows);
        let augmented = RatMat::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self.at(i, j).clone()
            } else {
                v[i].clone()
            }
        });
        augmented.rank() == self.rank()
    }

    pub fn to_f64(&self) -> nalgebra::DMatrix<f64> {
        nalgebra::DMatrix::from_fn(self.rows, self.cols, |i, j| crate::arith::rat_to_f64(self.at(i, j)))
    }
}
