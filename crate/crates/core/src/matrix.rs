//! Square integer matrices with overflow-checked arithmetic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{LatticeError, Result};

pub(crate) fn narrow(x: i128) -> Result<i64> {
    i64::try_from(x).map_err(|_| LatticeError::Overflow)
}

pub(crate) fn mul_add(acc: i128, a: i64, b: i64) -> Result<i128> {
    (a as i128)
        .checked_mul(b as i128)
        .and_then(|p| acc.checked_add(p))
        .ok_or(LatticeError::Overflow)
}

/// Dot product of two integer slices, exact or `Overflow`.
pub fn dot(a: &[i64], b: &[i64]) -> Result<i64> {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = 0i128;
    for (&x, &y) in a.iter().zip(b) {
        acc = mul_add(acc, x, y)?;
    }
    narrow(acc)
}

/// Row-major square matrix over `i64`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<i64>>", into = "Vec<Vec<i64>>")]
pub struct SquareMatrix {
    n: usize,
    data: Vec<i64>,
}

impl SquareMatrix {
    pub fn zeros(n: usize) -> Self {
        SquareMatrix { n, data: vec![0; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn diagonal(entries: &[i64]) -> Self {
        let mut m = Self::zeros(entries.len());
        for (i, &d) in entries.iter().enumerate() {
            m.set(i, i, d);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(LatticeError::RankMismatch { expected: n, found: row.len() });
            }
            data.extend(row);
        }
        Ok(SquareMatrix { n, data })
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(columns: &[Vec<i64>]) -> Result<Self> {
        let n = columns.len();
        let mut m = Self::zeros(n);
        for (j, col) in columns.iter().enumerate() {
            if col.len() != n {
                return Err(LatticeError::RankMismatch { expected: n, found: col.len() });
            }
            for (i, &x) in col.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        Ok(m)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: i64) {
        self.data[i * self.n + j] = x;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.data.chunks(self.n.max(1)).take(self.n).map(<[i64]>::to_vec).collect()
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.n).map(|i| self.get(i, j)).collect()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn scale(&self, k: i64) -> Result<Self> {
        let data = self
            .data
            .iter()
            .map(|&x| x.checked_mul(k).ok_or(LatticeError::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(SquareMatrix { n: self.n, data })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        assert_eq!(self.n, other.n, "matrix dimension mismatch");
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0i128;
                for k in 0..n {
                    let a = self.get(i, k);
                    if a != 0 {
                        acc = mul_add(acc, a, other.get(k, j))?;
                    }
                }
                out.set(i, j, narrow(acc)?);
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[i64]) -> Result<Vec<i64>> {
        if v.len() != self.n {
            return Err(LatticeError::RankMismatch { expected: self.n, found: v.len() });
        }
        (0..self.n).map(|i| dot(self.row(i), v)).collect()
    }

    /// Block-diagonal sum `self ⊕ other`.
    pub fn block_sum(&self, other: &Self) -> Self {
        let n = self.n + other.n;
        let mut m = Self::zeros(n);
        for i in 0..self.n {
            for j in 0..self.n {
                m.set(i, j, self.get(i, j));
            }
        }
        for i in 0..other.n {
            for j in 0..other.n {
                m.set(self.n + i, self.n + j, other.get(i, j));
            }
        }
        m
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        let n = self.n;
        if n == 0 {
            return BigInt::one();
        }
        let mut a: Vec<Vec<BigInt>> =
            (0..n).map(|i| self.row(i).iter().map(|&x| BigInt::from(x)).collect()).collect();
        let mut sign = 1i32;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = num.div_floor(&prev);
                }
            }
            prev = a[k][k].clone();
        }
        let det = a[n - 1][n - 1].clone();
        if sign < 0 {
            -det
        } else {
            det
        }
    }
}

impl TryFrom<Vec<Vec<i64>>> for SquareMatrix {
    type Error = LatticeError;

    fn try_from(rows: Vec<Vec<i64>>) -> Result<Self> {
        SquareMatrix::from_rows(rows)
    }
}

impl From<SquareMatrix> for Vec<Vec<i64>> {
    fn from(m: SquareMatrix) -> Self {
        m.rows()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_small_cases() {
        let m = SquareMatrix::from_rows(vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(m.determinant(), BigInt::from(-1));
        let m = SquareMatrix::from_rows(vec![vec![2, 1, 0], vec![1, 2, 1], vec![0, 1, 2]]).unwrap();
        assert_eq!(m.determinant(), BigInt::from(4));
        // zero leading pivot needs a row swap
        let m = SquareMatrix::from_rows(vec![vec![0, 2, 1], vec![3, 0, 0], vec![1, 1, 1]]).unwrap();
        assert_eq!(m.determinant(), BigInt::from(-3));
        assert_eq!(SquareMatrix::zeros(3).determinant(), BigInt::zero());
    }

    #[test]
    fn overflow_is_reported() {
        let m = SquareMatrix::diagonal(&[i64::MAX, 1]);
        assert_eq!(m.mul(&m), Err(LatticeError::Overflow));
        assert_eq!(m.scale(2), Err(LatticeError::Overflow));
    }

    #[test]
    fn ragged_rows_rejected() {
        assert!(SquareMatrix::from_rows(vec![vec![1, 2], vec![3]]).is_err());
    }
}
