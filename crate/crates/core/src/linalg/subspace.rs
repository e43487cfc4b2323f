use num_rational::BigRational;
use num_traits::{One, Zero};

use super::RatMatrix;
use crate::error::{Error, Result};

/// A linear subspace of ℚⁿ.
///
/// The basis is kept in reduced column echelon form (equivalently: the
/// nonzero rows of the RREF of the spanning vectors stacked as rows), so two
/// equal subspaces always compare equal structurally.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vec<BigRational>>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        let basis = (0..ambient_dim)
            .map(|i| {
                let mut v = vec![BigRational::zero(); ambient_dim];
                v[i] = BigRational::one();
                v
            })
            .collect();
        Subspace { ambient_dim, basis }
    }

    /// Span of arbitrary (possibly dependent) vectors.
    pub fn span<I>(ambient_dim: usize, vectors: I) -> Result<Self>
    where
        I: IntoIterator<Item = Vec<BigRational>>,
    {
        let rows: Vec<Vec<BigRational>> = vectors.into_iter().collect();
        if let Some(v) = rows.iter().find(|v| v.len() != ambient_dim) {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} in ambient dimension {ambient_dim}",
                v.len()
            )));
        }
        if rows.is_empty() {
            return Ok(Self::zero(ambient_dim));
        }
        let (red, pivots) = RatMatrix::from_rows(rows)?.rref();
        let basis = (0..pivots.len()).map(|i| red.row(i).to_vec()).collect();
        Ok(Subspace { ambient_dim, basis })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<BigRational>] {
        &self.basis
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    pub fn contains(&self, v: &[BigRational]) -> bool {
        if v.len() != self.ambient_dim {
            return false;
        }
        let grown = Subspace::span(
            self.ambient_dim,
            self.basis.iter().cloned().chain([v.to_vec()]),
        )
        .expect("lengths checked");
        grown.dim() == self.dim()
    }

    /// Image of this subspace under `m` (which must have `ambient_dim` columns).
    pub fn image_under(&self, m: &RatMatrix) -> Result<Subspace> {
        if m.cols() != self.ambient_dim {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix applied to a subspace of ℚ^{}",
                m.rows(),
                m.cols(),
                self.ambient_dim
            )));
        }
        Subspace::span(m.rows(), self.basis.iter().map(|v| m.mul_vec(v)))
    }
}

/// Kernel of `m` as a subspace of ℚ^cols.
pub fn rational_kernel(m: &RatMatrix) -> Subspace {
    let (red, pivots) = m.rref();
    let n = m.cols();
    let vectors: Vec<Vec<BigRational>> = (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![BigRational::zero(); n];
            v[free] = BigRational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -red[(r, free)].clone();
            }
            v
        })
        .collect();
    Subspace::span(n, vectors).expect("kernel vectors have ambient length")
}

/// Column space of `m` as a subspace of ℚ^rows.
pub fn rational_image(m: &RatMatrix) -> Subspace {
    Subspace::span(m.rows(), (0..m.cols()).map(|j| m.column(j)))
        .expect("columns have ambient length")
}

pub fn subspace_sum(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    check_ambient(a, b)?;
    Subspace::span(a.ambient_dim, a.basis.iter().chain(&b.basis).cloned())
}

pub fn subspace_equals(a: &Subspace, b: &Subspace) -> Result<bool> {
    check_ambient(a, b)?;
    Ok(a == b)
}

fn check_ambient(a: &Subspace, b: &Subspace) -> Result<()> {
    if a.ambient_dim != b.ambient_dim {
        return Err(Error::DimensionMismatch(format!(
            "subspaces of ℚ^{} and ℚ^{}",
            a.ambient_dim, b.ambient_dim
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::IntMatrix;
    use num_bigint::BigInt;

    fn qv(xs: &[i64]) -> Vec<BigRational> {
        xs.iter()
            .map(|&x| BigRational::from_integer(BigInt::from(x)))
            .collect()
    }

    fn qm(rows: &[&[i64]]) -> RatMatrix {
        IntMatrix::from_i64(rows).to_rational()
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(rational_kernel(&RatMatrix::identity(2)), Subspace::zero(2));
        let k = rational_kernel(&qm(&[&[0, 1], &[0, 1]]));
        assert_eq!(k, Subspace::span(2, [qv(&[1, 0])]).unwrap());
        assert_eq!(rational_kernel(&RatMatrix::zeros(2, 2)), Subspace::full(2));
    }

    #[test]
    fn image_examples() {
        assert_eq!(rational_image(&RatMatrix::identity(2)), Subspace::full(2));
        assert_eq!(
            rational_image(&qm(&[&[0, 0], &[3, 1]])),
            Subspace::span(2, [qv(&[0, 1])]).unwrap()
        );
        assert_eq!(rational_image(&RatMatrix::zeros(2, 3)), Subspace::zero(2));
    }

    #[test]
    fn sum_examples() {
        let e1 = Subspace::span(2, [qv(&[1, 0])]).unwrap();
        let e2 = Subspace::span(2, [qv(&[0, 1])]).unwrap();
        assert_eq!(subspace_sum(&e1, &e2).unwrap(), Subspace::full(2));
        let a = Subspace::span(2, [qv(&[1, 3])]).unwrap();
        assert!(subspace_sum(&e2, &a).unwrap().is_full());
        assert_eq!(subspace_sum(&a, &Subspace::zero(2)).unwrap(), a);
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        let err = subspace_sum(&Subspace::zero(2), &Subspace::zero(3)).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch(_)));
        assert!(subspace_equals(&Subspace::zero(1), &Subspace::full(2)).is_err());
    }

    #[test]
    fn canonical_form_ignores_spanning_set() {
        let a = Subspace::span(3, [qv(&[1, 2, 0]), qv(&[0, 1, 1])]).unwrap();
        let b = Subspace::span(3, [qv(&[1, 3, 1]), qv(&[2, 3, -1]), qv(&[1, 2, 0])]).unwrap();
        assert_eq!(a, b);
        assert!(a.contains(&qv(&[1, 1, -1])));
        assert!(!a.contains(&qv(&[0, 0, 1])));
    }
}
