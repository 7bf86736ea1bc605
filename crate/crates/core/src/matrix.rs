//! Dense 3x3 matrices over arbitrary-precision integers.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::exact::Rational;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mat3 {
    rows: [[BigInt; 3]; 3],
}

impl Mat3 {
    pub fn new(rows: [[BigInt; 3]; 3]) -> Self {
        Mat3 { rows }
    }

    pub fn from_i64(rows: [[i64; 3]; 3]) -> Self {
        Mat3 {
            rows: rows.map(|r| r.map(BigInt::from)),
        }
    }

    pub fn identity() -> Self {
        Self::from_i64([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    }

    pub fn from_columns(cols: [[BigInt; 3]; 3]) -> Self {
        let rows = std::array::from_fn(|i| std::array::from_fn(|j| cols[j][i].clone()));
        Mat3 { rows }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.rows[i][j]
    }

    pub fn rows(&self) -> &[[BigInt; 3]; 3] {
        &self.rows
    }

    pub fn column(&self, j: usize) -> [BigInt; 3] {
        std::array::from_fn(|i| self.rows[i][j].clone())
    }

    pub fn det(&self) -> BigInt {
        let m = &self.rows;
        &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
            - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
            + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
    }

    /// Transposed cofactor matrix, so that `self * adj = det * I`.
    pub fn adjugate(&self) -> Mat3 {
        let m = &self.rows;
        let cof = |r0: usize, r1: usize, c0: usize, c1: usize| {
            &m[r0][c0] * &m[r1][c1] - &m[r0][c1] * &m[r1][c0]
        };
        Mat3::new([
            [cof(1, 2, 1, 2), -cof(0, 2, 1, 2), cof(0, 1, 1, 2)],
            [-cof(1, 2, 0, 2), cof(0, 2, 0, 2), -cof(0, 1, 0, 2)],
            [cof(1, 2, 0, 1), -cof(0, 2, 0, 1), cof(0, 1, 0, 1)],
        ])
    }

    pub fn mul_vec(&self, v: &[BigInt; 3]) -> [BigInt; 3] {
        std::array::from_fn(|i| {
            &self.rows[i][0] * &v[0] + &self.rows[i][1] * &v[1] + &self.rows[i][2] * &v[2]
        })
    }

    pub fn trace(&self) -> BigInt {
        &self.rows[0][0] + &self.rows[1][1] + &self.rows[2][2]
    }

    pub fn pow(&self, mut e: u64) -> Mat3 {
        let mut base = self.clone();
        let mut acc = Mat3::identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().abs().is_one()
    }

    pub fn max_abs_entry(&self) -> BigInt {
        self.rows
            .iter()
            .flatten()
            .map(|x| x.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }
}

impl Mul for &Mat3 {
    type Output = Mat3;

    fn mul(self, rhs: &Mat3) -> Mat3 {
        let rows = std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                &self.rows[i][0] * &rhs.rows[0][j]
                    + &self.rows[i][1] * &rhs.rows[1][j]
                    + &self.rows[i][2] * &rhs.rows[2][j]
            })
        });
        Mat3 { rows }
    }
}

impl Mul for Mat3 {
    type Output = Mat3;

    fn mul(self, rhs: Mat3) -> Mat3 {
        &self * &rhs
    }
}

impl fmt::Display for Mat3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[{},{},{}]", row[0], row[1], row[2])?;
        }
        write!(f, "]")
    }
}

/// Rank of a small rational matrix by Gaussian elimination.
pub fn rational_rank(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, piv);
        let pivot_row = m[rank].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != rank && !row[col].is_zero() {
                let f = &row[col] / &pivot_row[col];
                for (x, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                    *x -= &f * p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Entries as rationals, row-major.
pub fn to_rational_rows(m: &Mat3) -> Vec<Vec<Rational>> {
    m.rows()
        .iter()
        .map(|r| r.iter().map(|x| Rational::from_integer(x.clone())).collect())
        .collect()
}
