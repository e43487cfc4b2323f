//! Smith normal form with unimodular transforms.
//!
//! Classical elimination: move a smallest nonzero entry to the pivot, clear
//! its row and column by Euclidean steps, and fold any entry not divisible by
//! the pivot back into the pivot row until the divisibility chain holds.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// `left · M · right = diagonal` with `left`, `right` unimodular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub diagonal: IntMatrix,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

impl SmithDecomposition {
    /// Nonzero diagonal entries, in order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let d = &self.diagonal;
        (0..d.rows().min(d.cols()))
            .map(|i| d[(i, i)].clone())
            .filter(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut left = IntMatrix::identity(rows);
    let mut right = IntMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = smallest_nonzero(&a, t) else {
            break;
        };
        a.swap_rows(t, pi);
        left.swap_rows(t, pi);
        a.swap_cols(t, pj);
        right.swap_cols(t, pj);

        loop {
            if let Some((i, j)) = reduce_pivot_line(&mut a, &mut left, &mut right, t) {
                a.swap_rows(t, i);
                left.swap_rows(t, i);
                a.swap_cols(t, j);
                right.swap_cols(t, j);
                continue;
            }
            // Row and column of the pivot are clear; enforce divisibility.
            let pivot = a[(t, t)].clone();
            let offender =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[(i, j)].is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    let one = BigInt::from(1);
                    a.add_row_multiple(t, i, &one);
                    left.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }

        if a[(t, t)].is_negative() {
            a.negate_row(t);
            left.negate_row(t);
        }
    }

    SmithDecomposition {
        diagonal: a,
        left,
        right,
    }
}

fn smallest_nonzero(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let x = &a[(i, j)];
            if x.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| x.abs() < a[(bi, bj)].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Clears column `t` below and row `t` to the right of the pivot by floor
/// division. Returns the position of a nonzero remainder smaller than the
/// pivot if one was left behind.
fn reduce_pivot_line(
    a: &mut IntMatrix,
    left: &mut IntMatrix,
    right: &mut IntMatrix,
    t: usize,
) -> Option<(usize, usize)> {
    let pivot = a[(t, t)].clone();
    let mut leftover = None;
    for i in t + 1..a.rows() {
        if a[(i, t)].is_zero() {
            continue;
        }
        let q = -a[(i, t)].div_floor(&pivot);
        a.add_row_multiple(i, t, &q);
        left.add_row_multiple(i, t, &q);
        if !a[(i, t)].is_zero() && leftover.is_none() {
            leftover = Some((i, t));
        }
    }
    for j in t + 1..a.cols() {
        if a[(t, j)].is_zero() {
            continue;
        }
        let q = -a[(t, j)].div_floor(&pivot);
        a.add_col_multiple(j, t, &q);
        right.add_col_multiple(j, t, &q);
        if !a[(t, j)].is_zero() && leftover.is_none() {
            leftover = Some((t, j));
        }
    }
    leftover.map(|_| smallest_in_line(a, t))
}

fn smallest_in_line(a: &IntMatrix, t: usize) -> (usize, usize) {
    let mut best = (t, t);
    let cells = (t + 1..a.rows())
        .map(|i| (i, t))
        .chain((t + 1..a.cols()).map(|j| (t, j)));
    for (i, j) in cells {
        let x = &a[(i, j)];
        if !x.is_zero() && x.abs() < a[best].abs() {
            best = (i, j);
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: &IntMatrix) -> SmithDecomposition {
        let s = smith_normal_form(m);
        assert_eq!(&(&s.left * m) * &s.right, s.diagonal);
        assert!(s.left.is_unimodular());
        assert!(s.right.is_unimodular());
        for i in 0..s.diagonal.rows() {
            for j in 0..s.diagonal.cols() {
                if i != j {
                    assert!(s.diagonal[(i, j)].is_zero());
                }
            }
        }
        let f = s.invariant_factors();
        assert!(f.iter().all(|x| x.is_positive()));
        assert!(f.windows(2).all(|w| w[1].is_multiple_of(&w[0])));
        s
    }

    #[test]
    fn identity() {
        let s = check(&IntMatrix::identity(2));
        assert_eq!(s.diagonal, IntMatrix::identity(2));
        assert_eq!(s.left, IntMatrix::identity(2));
        assert_eq!(s.right, IntMatrix::identity(2));
    }

    #[test]
    fn two_by_two() {
        let s = check(&IntMatrix::from_i64(&[&[2, 4], &[6, 8]]));
        assert_eq!(s.diagonal, IntMatrix::from_i64(&[&[2, 0], &[0, 4]]));
    }

    #[test]
    fn zero_and_empty() {
        let s = check(&IntMatrix::zeros(2, 3));
        assert_eq!(s.diagonal, IntMatrix::zeros(2, 3));
        let s = check(&IntMatrix::zeros(0, 3));
        assert_eq!(s.rank(), 0);
        check(&IntMatrix::zeros(3, 0));
    }

    #[test]
    fn needs_divisibility_fixup() {
        // diag(2, 3) has Smith form diag(1, 6)
        let s = check(&IntMatrix::from_i64(&[&[2, 0], &[0, 3]]));
        assert_eq!(
            s.invariant_factors(),
            vec![BigInt::from(1), BigInt::from(6)]
        );
        let s = check(&IntMatrix::from_i64(&[&[4, 6, 2], &[6, 9, 3], &[0, 0, 0]]));
        assert_eq!(s.invariant_factors(), vec![BigInt::from(1)]);
    }
}
