//! Saturated sublattices, unimodular completion, and the fixed-block
//! conjugation `P⁻¹MP = [[Id_k, U], [0, V]]`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{smith_normal_form, IntMatrix};
use crate::error::{Error, Result};

/// ℤ-basis of `ker(M − Id) ⊆ ℤ^g`, in row Hermite normal form so the result
/// depends only on the lattice.
///
/// Kernels of integer maps are saturated, so the returned vectors always
/// extend to a basis of ℤ^g.
pub fn saturated_fixed_lattice(m: &IntMatrix) -> Result<Vec<Vec<BigInt>>> {
    let d = m.minus_identity()?;
    let g = m.cols();
    let snf = smith_normal_form(&d);
    let r = snf.rank();
    let rows: Vec<Vec<BigInt>> = (r..g).map(|j| snf.right.column(j)).collect();
    Ok(row_hermite_form(rows, g))
}

/// Row-style Hermite normal form of a full-row-rank integer matrix given as
/// rows: echelon shape, positive pivots, entries above each pivot reduced
/// into `[0, pivot)`.
fn row_hermite_form(rows: Vec<Vec<BigInt>>, width: usize) -> Vec<Vec<BigInt>> {
    if rows.is_empty() {
        return rows;
    }
    let mut h = IntMatrix::from_rows(rows).expect("rows share a length");
    let n = h.rows();
    let mut r = 0;
    for c in 0..width {
        if r == n {
            break;
        }
        // Euclid down the column until a single nonzero entry remains at row r.
        loop {
            let nonzero: Vec<usize> = (r..n).filter(|&i| !h[(i, c)].is_zero()).collect();
            if nonzero.is_empty() {
                break;
            }
            let best = *nonzero.iter().min_by_key(|&&i| h[(i, c)].abs()).unwrap();
            h.swap_rows(r, best);
            if nonzero.len() == 1 {
                break;
            }
            for i in r + 1..n {
                if !h[(i, c)].is_zero() {
                    let q = -h[(i, c)].div_floor(&h[(r, c)]);
                    h.add_row_multiple(i, r, &q);
                }
            }
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            h.negate_row(r);
        }
        let pivot = h[(r, c)].clone();
        for i in 0..r {
            let q = -h[(i, c)].div_floor(&pivot);
            h.add_row_multiple(i, r, &q);
        }
        r += 1;
    }
    h.to_rows()
}

fn is_saturated_basis(columns: &[Vec<BigInt>], g: usize) -> bool {
    if columns.is_empty() {
        return true;
    }
    let snf = smith_normal_form(&IntMatrix::from_columns(g, columns));
    let factors = snf.invariant_factors();
    factors.len() == columns.len() && factors.iter().all(One::is_one)
}

/// Completes a basis of a saturated sublattice to a matrix `P ∈ GL_g(ℤ)`
/// whose leading columns are the given vectors.
///
/// Completion rule: standard basis vectors are tried from `e_g` down to `e_1`
/// and kept whenever the enlarged set stays saturated; the kept ones follow
/// the input in ascending index order. If that does not reach rank `g`, the
/// rest comes from the Smith transform of the current set.
pub fn extend_to_unimodular_basis(vectors: &[Vec<BigInt>], g: usize) -> Result<IntMatrix> {
    if let Some(v) = vectors.iter().find(|v| v.len() != g) {
        return Err(Error::DimensionMismatch(format!(
            "vector of length {} in ℤ^{g}",
            v.len()
        )));
    }
    if vectors.len() > g || !is_saturated_basis(vectors, g) {
        return Err(Error::NotSaturated(
            "input vectors are dependent or span a non-saturated sublattice".into(),
        ));
    }

    let mut current: Vec<Vec<BigInt>> = vectors.to_vec();
    let mut picked: Vec<usize> = Vec::new();
    for i in (0..g).rev() {
        if current.len() == g {
            break;
        }
        let mut e = vec![BigInt::zero(); g];
        e[i] = BigInt::one();
        current.push(e);
        if is_saturated_basis(&current, g) {
            picked.push(i);
        } else {
            current.pop();
        }
    }

    let mut columns: Vec<Vec<BigInt>> = vectors.to_vec();
    picked.sort_unstable();
    for i in picked {
        let mut e = vec![BigInt::zero(); g];
        e[i] = BigInt::one();
        columns.push(e);
    }

    if columns.len() < g {
        // L·C·R = [Id; 0] so the trailing columns of L⁻¹ complete C.
        let m = columns.len();
        let snf = smith_normal_form(&IntMatrix::from_columns(g, &columns));
        let q = snf.left.unimodular_inverse()?;
        columns.extend((m..g).map(|j| q.column(j)));
    }

    let p = IntMatrix::from_columns(g, &columns);
    debug_assert!(p.is_unimodular());
    Ok(p)
}

/// Result of conjugating `M ∈ GL_g(ℤ)` so that its fixed lattice occupies
/// the leading coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedBlockForm {
    /// `P`, whose first `k` columns are a basis of `ker_ℤ(M − Id)`.
    pub conjugator: IntMatrix,
    /// `P⁻¹MP = [[Id_k, U], [0, V]]`.
    pub conjugated: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    /// `dim_ℚ ker(M − Id)`.
    pub k: usize,
}

impl FixedBlockForm {
    /// `det(V − Id) ≠ 0`. Holds exactly when eigenvalue 1 of `M` has no
    /// Jordan block of size > 1; otherwise `V` keeps an eigenvalue 1 even
    /// though the leading block already carries the whole fixed space.
    pub fn v_minus_identity_invertible(&self) -> bool {
        let d = self.v.minus_identity().expect("V is square");
        !d.determinant().expect("V is square").is_zero()
    }
}

/// Fixed-block conjugation for `M ∈ GL_g(ℤ)`; anything else is rejected.
pub fn conjugate_to_fixed_block_form(m: &IntMatrix) -> Result<FixedBlockForm> {
    let det = m.determinant()?;
    if !det.abs().is_one() {
        return Err(Error::NotUnimodular { det });
    }
    fixed_block_conjugation(m)
}

/// Same construction without the unimodularity gate. Any square integer
/// matrix works: `P` is unimodular because the fixed lattice is saturated,
/// so `P⁻¹MP` stays integral.
pub fn fixed_block_conjugation(m: &IntMatrix) -> Result<FixedBlockForm> {
    m.require_square()?;
    let g = m.rows();
    let fixed = saturated_fixed_lattice(m)?;
    let k = fixed.len();
    let p = extend_to_unimodular_basis(&fixed, g)?;
    let conjugated = &(&p.unimodular_inverse()? * m) * &p;

    debug_assert_eq!(conjugated.block(0, k, 0, k), IntMatrix::identity(k));
    debug_assert!(conjugated.block(k, g, 0, k).is_zero());
    Ok(FixedBlockForm {
        u: conjugated.block(0, k, k, g),
        v: conjugated.block(k, g, k, g),
        conjugator: p,
        conjugated,
        k,
    })
}
