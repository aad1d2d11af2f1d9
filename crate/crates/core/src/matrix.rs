//! Dense exact matrices over the rationals: arithmetic, reduced row
//! echelon form, rank, nullspace and inversion.
//!
//! Everything here is desk-scale (dimensions well under a hundred), so a
//! plain fraction-based Gauss–Jordan elimination is all that is needed.
//! The nullspace basis order is fixed by the reduced row-echelon pivots so
//! golden files stay reproducible.

use num_traits::Zero;

use crate::rational::{rat_one, rat_zero, Rat};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>, // row-major
}

pub fn vec_zero(n: usize) -> Vec<Rat> {
    vec![rat_zero(); n]
}

pub fn vec_is_zero(v: &[Rat]) -> bool {
    v.iter().all(|x| x.is_zero())
}

pub fn vec_add(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(c: &Rat, v: &[Rat]) -> Vec<Rat> {
    v.iter().map(|x| c * x).collect()
}

/// `acc += c * v`, skipping the work when `c` is zero.
pub fn vec_axpy(acc: &mut [Rat], c: &Rat, v: &[Rat]) {
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += c * x;
        }
    }
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![rat_zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, rat_one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Malformed("ragged matrix rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds a matrix column by column (codomain vectors).
    pub fn from_cols(rows: usize, cols: Vec<Vec<Rat>>) -> Self {
        let c = cols.len();
        let mut m = Matrix::zero(rows, c);
        for (j, col) in cols.iter().enumerate() {
            debug_assert_eq!(col.len(), rows);
            for i in 0..rows {
                m.set(i, j, col[i].clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        debug_assert!(self.rows == other.rows && self.cols == other.cols);
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        debug_assert!(self.rows == other.rows && self.cols == other.cols);
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        debug_assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let cur = out.get(i, j) + a * b;
                        out.set(i, j, cur);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        debug_assert_eq!(self.cols, v.len());
        let mut out = vec_zero(self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if !a.is_zero() && !v[j].is_zero() {
                    out[i] += a * &v[j];
                }
            }
        }
        out
    }

    /// Reduced row echelon form; returns the RREF and the pivot columns in
    /// increasing order.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = rat_one() / m.get(r, c).clone();
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i != r && !m.get(i, c).is_zero() {
                    let f = m.get(i, c).clone();
                    for j in c..m.cols {
                        let v = m.get(i, j) - &f * m.get(r, j);
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel, ordered by free column index. Each
    /// returned vector `v` satisfies `self · v = 0` exactly.
    pub fn nullspace(&self) -> Vec<Vec<Rat>> {
        let (rref, pivots) = self.rref();
        let mut basis = Vec::new();
        let mut piv_of_col = vec![None; self.cols];
        for (pi, &c) in pivots.iter().enumerate() {
            piv_of_col[c] = Some(pi);
        }
        for free in 0..self.cols {
            if piv_of_col[free].is_some() {
                continue;
            }
            let mut v = vec_zero(self.cols);
            v[free] = rat_one();
            for (pi, &pc) in pivots.iter().enumerate() {
                v[pc] = -rref.get(pi, free).clone();
            }
            basis.push(v);
        }
        basis
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::NotInvertible);
        }
        let n = self.rows;
        let mut aug = Matrix::zero(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, rat_one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(k, &c)| k != c) {
            return Err(Error::NotInvertible);
        }
        let mut out = Matrix::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, r.get(i, n + j).clone());
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat_int(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::identity(3).rank(), 3);
        assert_eq!(Matrix::zero(3, 3).rank(), 0);
        assert_eq!(m(&[&[1, 2], &[2, 4]]).rank(), 1);
    }

    #[test]
    fn nullspace_examples() {
        assert!(Matrix::identity(3).nullspace().is_empty());
        assert_eq!(Matrix::zero(2, 2).nullspace().len(), 2);
        let ns = m(&[&[1, 2], &[2, 4]]).nullspace();
        assert_eq!(ns.len(), 1);
        // proportional to (2, -1): v[0] * (-1) == v[1] * 2
        assert_eq!(&ns[0][0] * rat_int(-1), &ns[0][1] * rat_int(2));
        for v in &ns {
            assert!(vec_is_zero(&m(&[&[1, 2], &[2, 4]]).mul_vec(v)));
        }
    }

    #[test]
    fn rank_nullity() {
        let samples = [
            m(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]),
            m(&[&[0, 1], &[0, 0], &[3, 1]]),
            Matrix::zero(4, 5),
            Matrix::identity(4),
        ];
        for s in &samples {
            assert_eq!(s.rank() + s.nullspace().len(), s.cols());
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(2));
        assert!(m(&[&[1, 2], &[2, 4]]).inverse().is_err());
    }

    #[test]
    fn rational_entries_stay_reduced() {
        let a = Matrix::from_rows(vec![vec![rat(2, 4), rat(1, 3)], vec![rat(1, 6), rat(5, 1)]])
            .unwrap();
        let b = a.mul(&a);
        for i in 0..2 {
            for j in 0..2 {
                let e = b.get(i, j);
                use num_integer::Integer;
                assert_eq!(e.numer().gcd(e.denom()), 1u32.into());
            }
        }
    }
}
