//! Exact integer matrices: Smith normal form, finiteness of finitely
//! generated subgroups of `GL(k, Z)`, character-lattice orbits and fixed
//! subgroups of torus automorphisms.
//!
//! Matrices act on the character lattice `Z^k` on the left (column vectors).

mod finite;
mod fixed;
mod snf;
mod soundness;

use std::fmt;
use std::ops::{Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use finite::{
    char_orbit, element_order, generated_group, generated_group_dim, minkowski_bound,
    minkowski_bound_with_limit, ElementOrder, MatrixGroupResult, OrbitResult, DEFAULT_MAX_DIM,
    DEFAULT_ORBIT_CAP,
};
pub use fixed::{abelian_embeds, fixed_subgroup_structure, FixedStructure};
pub use snf::{smith_normal_form, SmithForm};
pub use soundness::{
    coproduct_orbit_obstruction, torus_soundness, ObstructionMember, OrbitObstructionReport,
    TorusVerdict,
};

/// A dense integer matrix.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<i64>>", into = "Vec<Vec<i64>>")]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl TryFrom<Vec<Vec<i64>>> for IntMatrix {
    type Error = Error;

    fn try_from(rows: Vec<Vec<i64>>) -> Result<Self> {
        IntMatrix::from_rows(&rows)
    }
}

impl From<IntMatrix> for Vec<Vec<i64>> {
    fn from(m: IntMatrix) -> Self {
        m.to_rows()
    }
}

impl IntMatrix {
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Invalid("ragged matrix rows".into()));
        }
        Ok(IntMatrix {
            rows: r,
            cols: c,
            data: rows.iter().flatten().copied().collect(),
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(k: usize) -> Self {
        let mut m = Self::zeros(k, k);
        for i in 0..k {
            m.set(i, i, 1);
        }
        m
    }

    pub fn diagonal(entries: &[i64]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, &d) in entries.iter().enumerate() {
            m.set(i, i, d);
        }
        m
    }

    /// Block-diagonal sum.
    pub fn block_diag(blocks: &[&IntMatrix]) -> Self {
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut m = Self::zeros(r, c);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m.set(r0 + i, c0 + j, b.get(i, j));
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    /// Permutation matrix sending basis vector `e_j` to `e_{perm[j]}`.
    pub fn permutation(perm: &[usize]) -> Self {
        let mut m = Self::zeros(perm.len(), perm.len());
        for (j, &i) in perm.iter().enumerate() {
            m.set(i, j, 1);
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

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        self.data.chunks(self.cols.max(1)).take(self.rows).map(<[i64]>::to_vec).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.rows)
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> i64 {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return 1;
        }
        let mut a: Vec<Vec<i128>> = self.to_rows().into_iter().map(|r| r.into_iter().map(i128::from).collect()).collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if a[k][k] == 0 {
                match (k + 1..n).find(|&i| a[i][k] != 0) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return 0,
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
                }
            }
            prev = a[k][k];
        }
        (sign * a[n - 1][n - 1]) as i64
    }

    pub fn is_unimodular(&self) -> bool {
        self.is_square() && self.det().abs() == 1
    }

    pub fn check_unimodular(&self) -> Result<()> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: self.cols,
            });
        }
        let det = self.det();
        if det.abs() != 1 {
            return Err(Error::NotUnimodular { det });
        }
        Ok(())
    }

    /// Inverse of a unimodular matrix, read off its Smith form.
    pub fn inverse(&self) -> Result<IntMatrix> {
        self.check_unimodular()?;
        let snf = smith_normal_form(self);
        // U A V = I, hence A^-1 = V U.
        Ok(&snf.v * &snf.u)
    }

    pub fn pow(&self, mut k: u64) -> IntMatrix {
        let mut base = self.clone();
        let mut acc = IntMatrix::identity(self.rows);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }

    pub fn commutes_with(&self, other: &IntMatrix) -> bool {
        &(self * other) == &(other * self)
    }

    pub fn max_abs_entry(&self) -> i64 {
        self.data.iter().map(|x| x.abs()).max().unwrap_or(0)
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;

    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    let idx = i * rhs.cols + j;
                    out.data[idx] += a * rhs.get(k, j);
                }
            }
        }
        out
    }
}

impl Sub for &IntMatrix {
    type Output = IntMatrix;

    fn sub(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &IntMatrix {
    type Output = IntMatrix;

    fn neg(self) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| -x).collect(),
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_rows())
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .to_rows()
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinants() {
        let a = IntMatrix::from_rows(&[vec![0, -1], vec![1, 1]]).unwrap();
        assert_eq!(a.det(), 1);
        let b = IntMatrix::from_rows(&[vec![2, 1, 0], vec![1, 3, 1], vec![0, 1, 4]]).unwrap();
        assert_eq!(b.det(), 18);
        assert_eq!(IntMatrix::diagonal(&[1, -1]).det(), -1);
    }

    #[test]
    fn inverse_of_unimodular() {
        let a = IntMatrix::from_rows(&[vec![2, 3], vec![1, 2]]).unwrap();
        let inv = a.inverse().unwrap();
        assert!((&a * &inv).is_identity());
        let singular = IntMatrix::from_rows(&[vec![2, 0], vec![0, 1]]).unwrap();
        assert_eq!(singular.inverse().unwrap_err(), Error::NotUnimodular { det: 2 });
    }

    #[test]
    fn serde_as_row_arrays() {
        let m: IntMatrix = IntMatrix::try_from(vec![vec![0, -1], vec![1, 0]]).unwrap();
        assert_eq!(m.to_string(), "[[0,-1],[1,0]]");
        assert!(IntMatrix::try_from(vec![vec![1], vec![1, 2]]).is_err());
    }
}
