//! Independent oracles shared by the integration tests. Nothing here calls
//! into the library's linear algebra.
#![allow(dead_code)]

use monodromy_core::linalg::IntMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Rank by plain Gaussian elimination over ℚ on a dense row list.
pub fn dense_rank(rows: &[Vec<BigRational>]) -> usize {
    let mut a: Vec<Vec<BigRational>> = rows.to_vec();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for r in 0..a.len() {
            if r != rank && !a[r][c].is_zero() {
                let f = &a[r][c] / &a[rank][c];
                for j in c..cols {
                    let d = &f * &a[rank][j];
                    a[r][j] -= d;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn to_q(m: &IntMatrix) -> Vec<Vec<BigRational>> {
    m.to_rows()
        .into_iter()
        .map(|r| r.into_iter().map(BigRational::from_integer).collect())
        .collect()
}

pub fn int_rank(m: &IntMatrix) -> usize {
    dense_rank(&to_q(m))
}

/// Determinant by cofactor expansion (small matrices only).
pub fn cofactor_det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<BigInt>> = m[1..]
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != j)
                        .map(|(_, x)| x.clone())
                        .collect()
                })
                .collect();
            let term = &m[0][j] * cofactor_det(&minor);
            if j % 2 == 0 {
                term
            } else {
                -term
            }
        })
        .fold(BigInt::zero(), |acc, t| acc + t)
}

pub fn det2(a: i64, b: i64, c: i64, d: i64) -> i64 {
    a * d - b * c
}

/// `dim ker(M − I)` over ℚ.
pub fn fixed_dim(m: &IntMatrix) -> usize {
    let g = m.rows();
    g - int_rank(&m.checked_sub(&IntMatrix::identity(g)).unwrap())
}

/// Kernel basis of a dense rational matrix by Gauss–Jordan elimination.
pub fn dense_kernel(rows: &[Vec<BigRational>], cols: usize) -> Vec<Vec<BigRational>> {
    let mut a: Vec<Vec<BigRational>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = BigRational::one() / &a[r][c];
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..cols {
                    let d = &f * &a[r][j];
                    a[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![BigRational::zero(); cols];
            v[free] = BigRational::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -a[i][free].clone();
            }
            v
        })
        .collect()
}

/// Dense product of integer row lists.
pub fn dense_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    a.iter()
        .map(|row| {
            (0..b.first().map_or(0, |r| r.len()))
                .map(|j| {
                    row.iter()
                        .zip(b)
                        .fold(BigInt::zero(), |acc, (x, brow)| acc + x * &brow[j])
                })
                .collect()
        })
        .collect()
}

pub fn dense_transpose(a: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    (0..a.first().map_or(0, |r| r.len()))
        .map(|j| a.iter().map(|r| r[j].clone()).collect())
        .collect()
}
