//! Dense square-or-rectangular matrices over a [`Ring`], with the
//! division-free characteristic polynomial and compound matrices.

use std::fmt;
use std::ops::Mul;

use crate::error::MatrixError;
use crate::poly::Poly;
use crate::scalar::Ring;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    entries: Vec<R>,
}

impl<R: Ring> Matrix<R> {
    pub fn new(rows: usize, cols: usize, entries: Vec<R>) -> Result<Self, MatrixError> {
        if rows == 0 || cols == 0 {
            return Err(MatrixError::Empty);
        }
        if entries.len() != rows * cols {
            return Err(MatrixError::Shape {
                rows,
                cols,
                len: entries.len(),
            });
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Result<Self, MatrixError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(MatrixError::Ragged);
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0);
        Self {
            rows,
            cols,
            entries: vec![R::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, R::one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[R] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Matrix<S> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self, MatrixError> {
        if self.cols != rhs.rows {
            return Err(MatrixError::Shape {
                rows: rhs.rows,
                cols: rhs.cols,
                len: self.cols,
            });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let idx = i * rhs.cols + j;
                    out.entries[idx] = out.entries[idx].clone() + a.clone() * rhs.get(k, j).clone();
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, mut n: u64) -> Result<Self, MatrixError> {
        self.require_square()?;
        let mut base = self.clone();
        let mut acc = Self::identity(self.rows);
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    fn require_square(&self) -> Result<(), MatrixError> {
        if self.is_square() {
            Ok(())
        } else {
            Err(MatrixError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    /// Companion matrix of a monic polynomial of degree `s >= 1`: ones on the
    /// subdiagonal and `-f_0, ..., -f_{s-1}` down the last column.
    pub fn companion(f: &Poly<R>) -> Result<Self, MatrixError> {
        let s = match f.degree() {
            Some(d) if d >= 1 => d,
            _ => return Err(MatrixError::DegreeTooSmall),
        };
        if !f.is_monic() {
            return Err(MatrixError::NotMonic);
        }
        let mut m = Self::zeros(s, s);
        for i in 0..s {
            if i + 1 < s {
                m.set(i + 1, i, R::one());
            }
            m.set(i, s - 1, -f.coeff(i));
        }
        Ok(m)
    }

    /// `det(T Id - M)` by Berkowitz's algorithm: ring operations only.
    ///
    /// The characteristic polynomial of each leading principal submatrix
    /// `A_{r+1}` is obtained from that of `A_r` by multiplying with the
    /// Toeplitz matrix whose first column is
    /// `(1, -a, -R C, -R A_r C, ..., -R A_r^{r-1} C)`.
    pub fn charpoly(&self) -> Result<Poly<R>, MatrixError> {
        self.require_square()?;
        let n = self.rows;
        // Coefficients from the leading term down.
        let mut p: Vec<R> = vec![R::one(), -self.get(0, 0).clone()];
        for r in 1..n {
            let corner = self.get(r, r).clone();
            let mut col: Vec<R> = (0..r).map(|i| self.get(i, r).clone()).collect();
            let mut toeplitz = Vec::with_capacity(r + 2);
            toeplitz.push(R::one());
            toeplitz.push(-corner);
            for step in 0..r {
                let dot = (0..r).fold(R::zero(), |acc, j| {
                    acc + self.get(r, j).clone() * col[j].clone()
                });
                toeplitz.push(-dot);
                if step + 1 < r {
                    col = (0..r)
                        .map(|i| {
                            (0..r).fold(R::zero(), |acc, j| {
                                acc + self.get(i, j).clone() * col[j].clone()
                            })
                        })
                        .collect();
                }
            }
            let next: Vec<R> = (0..r + 2)
                .map(|j| {
                    (0..=j.min(r)).fold(R::zero(), |acc, i| {
                        acc + toeplitz[j - i].clone() * p[i].clone()
                    })
                })
                .collect();
            p = next;
        }
        p.reverse();
        Ok(Poly::new(p))
    }

    pub fn det(&self) -> Result<R, MatrixError> {
        let cp = self.charpoly()?;
        let c0 = cp.coeff(0);
        Ok(if self.rows.is_multiple_of(2) { c0 } else { -c0 })
    }

    fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let entries = rows
            .iter()
            .flat_map(|&i| cols.iter().map(move |&j| self.get(i, j).clone()))
            .collect();
        Self {
            rows: rows.len(),
            cols: cols.len(),
            entries,
        }
    }

    /// r-th compound: the matrix of all r x r minors, rows and columns indexed
    /// by r-subsets of `0..s` in lexicographic order.
    pub fn compound(&self, r: usize) -> Result<Self, MatrixError> {
        self.require_square()?;
        let s = self.rows;
        if r == 0 || r > s {
            return Err(MatrixError::CompoundOrder { r, size: s });
        }
        let subsets = k_subsets(s, r);
        let n = subsets.len();
        let mut out = Self::zeros(n, n);
        for (a, rows) in subsets.iter().enumerate() {
            for (b, cols) in subsets.iter().enumerate() {
                let minor = self.submatrix(rows, cols).det()?;
                out.set(a, b, minor);
            }
        }
        Ok(out)
    }
}

impl<R: Ring> Mul for &Matrix<R> {
    type Output = Matrix<R>;
    fn mul(self, rhs: &Matrix<R>) -> Matrix<R> {
        self.try_mul(rhs)
            .expect("dimension mismatch in matrix product")
    }
}

impl<R: Ring> fmt::Debug for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[R]> = self.entries.chunks(self.cols).collect();
        write!(f, "Matrix{rows:?}")
    }
}

/// All `k`-subsets of `0..n` as sorted index vectors, in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] < i + n - k) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}
