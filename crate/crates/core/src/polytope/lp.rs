//! Exact phase-one simplex, used only to decide whether a point is a convex
//! combination of others.
//!
//! Rows are scaled to integers and pivoted fraction-free (every entry stays
//! an integer; divisions by the previous pivot are exact). The tableau runs
//! in `i128` with checked arithmetic and is redone in `BigInt` if anything
//! overflows.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

/// Whether `A·λ = b, λ ≥ 0` has a solution. `a` is given row by row.
///
/// Entering columns follow Dantzig's rule; after a run of degenerate pivots
/// the method falls back to Bland's rule, which cannot cycle.
pub(crate) fn is_feasible(a: &[Vec<BigRational>], b: &[BigRational]) -> bool {
    assert_eq!(b.len(), a.len(), "right-hand side length");
    let rows: Vec<Vec<BigInt>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| integral_row(row, rhs))
        .collect();
    let small: Option<Vec<Vec<i128>>> = rows
        .iter()
        .map(|r| r.iter().map(|x| x.to_i128()).collect())
        .collect();
    if let Some(small) = small {
        if let Some(answer) = phase_one(small) {
            return answer;
        }
    }
    phase_one(rows).expect("BigInt arithmetic does not overflow")
}

/// `[row | rhs]` times the lcm of its denominators, negated if `rhs < 0`.
fn integral_row(row: &[BigRational], rhs: &BigRational) -> Vec<BigInt> {
    let lcm = row
        .iter()
        .chain([rhs])
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let scale = BigRational::from_integer(if rhs.is_negative() { -lcm } else { lcm });
    row.iter()
        .chain([rhs])
        .map(|x| (x * &scale).to_integer())
        .collect()
}

/// Integer arithmetic where multiplication and subtraction may overflow.
trait Entry: Clone + Ord + Sized {
    fn from_i8(x: i8) -> Self;
    fn mul(&self, other: &Self) -> Option<Self>;
    fn sub(&self, other: &Self) -> Option<Self>;
    fn div_exact(&self, other: &Self) -> Self;

    fn is_zero(&self) -> bool {
        *self == Self::from_i8(0)
    }
    fn is_negative(&self) -> bool {
        *self < Self::from_i8(0)
    }
    fn is_positive(&self) -> bool {
        *self > Self::from_i8(0)
    }
}

impl Entry for i128 {
    fn from_i8(x: i8) -> Self {
        x.into()
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        self.checked_mul(*other)
    }
    fn sub(&self, other: &Self) -> Option<Self> {
        self.checked_sub(*other)
    }
    fn div_exact(&self, other: &Self) -> Self {
        debug_assert_eq!(self % other, 0);
        self / other
    }
}

impl Entry for BigInt {
    fn from_i8(x: i8) -> Self {
        x.into()
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn sub(&self, other: &Self) -> Option<Self> {
        Some(self - other)
    }
    fn div_exact(&self, other: &Self) -> Self {
        debug_assert!(num_traits::Zero::is_zero(&(self % other)));
        self / other
    }
}

/// Phase one on integer rows `[a_i | b_i]` with `b_i ≥ 0`. `None` means the
/// arithmetic overflowed.
fn phase_one<T: Entry>(rows: Vec<Vec<T>>) -> Option<bool> {
    let m = rows.len();
    if m == 0 {
        return Some(true);
    }
    let n = rows[0].len() - 1;

    // Columns: n structural, m artificial, then the right-hand side. The
    // last row holds the reduced costs of "minimize Σ artificials".
    let width = n + m + 1;
    let zero = T::from_i8(0);
    let mut t: Vec<Vec<T>> = Vec::with_capacity(m + 1);
    for (i, row) in rows.iter().enumerate() {
        let mut r = vec![zero.clone(); width];
        r[..n].clone_from_slice(&row[..n]);
        r[n + i] = T::from_i8(1);
        r[width - 1] = row[n].clone();
        t.push(r);
    }
    let mut cost = vec![zero; width];
    for row in &t {
        for j in (0..n).chain([width - 1]) {
            cost[j] = cost[j].sub(&row[j])?;
        }
    }
    t.push(cost);

    // Every entry is the true tableau entry times `det`, the previous pivot,
    // which stays positive.
    let mut det = T::from_i8(1);
    let mut basis: Vec<usize> = (n..n + m).collect();
    let mut degenerate_run = 0;
    loop {
        let cost = &t[m];
        let mut negative = (0..n + m).filter(|&j| cost[j].is_negative());
        let enter = if degenerate_run > m {
            negative.next()
        } else {
            negative.min_by(|&x, &y| cost[x].cmp(&cost[y]))
        };
        let Some(enter) = enter else {
            break;
        };

        let mut leave: Option<usize> = None;
        for i in 0..m {
            if !t[i][enter].is_positive() {
                continue;
            }
            let better = match leave {
                None => true,
                Some(l) => {
                    // rhs_i / a_i < rhs_l / a_l with both denominators positive
                    let lhs = t[i][width - 1].mul(&t[l][enter])?;
                    let rhs = t[l][width - 1].mul(&t[i][enter])?;
                    lhs < rhs || (lhs == rhs && basis[i] < basis[l])
                }
            };
            if better {
                leave = Some(i);
            }
        }
        let Some(pr) = leave else {
            // Unbounded direction; impossible for an objective bounded below
            // by zero, but stop rather than loop.
            break;
        };
        degenerate_run = if t[pr][width - 1].is_zero() {
            degenerate_run + 1
        } else {
            0
        };

        let pivot = t[pr][enter].clone();
        for i in 0..=m {
            if i == pr {
                continue;
            }
            let factor = t[i][enter].clone();
            for j in 0..width {
                let scaled = t[i][j].mul(&pivot)?;
                let value = if factor.is_zero() || t[pr][j].is_zero() {
                    scaled
                } else {
                    scaled.sub(&factor.mul(&t[pr][j])?)?
                };
                t[i][j] = value.div_exact(&det);
            }
        }
        det = pivot;
        basis[pr] = enter;
    }
    Some(t[m][width - 1].is_zero())
}
