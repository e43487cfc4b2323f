//! Block-matrix model of the handlebody group acting on H₁(S_g; ℚ) = L ⊕ D.
//!
//! Coordinates `1..g` are the basis `a_i` of the Lagrangian `L` (curves that
//! bound disks in the handlebody), coordinates `g+1..2g` are the dual basis
//! `b_i` of `D`. A handlebody mapping class acts by
//!
//! ```text
//! [[A, B], [0, (Aᵗ)⁻¹]]      A ∈ GL_g(ℤ),  A·Bᵗ symmetric
//! ```
//!
//! and `(Aᵗ)⁻¹` is its action on H₁ of the handlebody itself.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

/// The pair of blocks `(A, B)` of a handlebody action in genus `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HandlebodyMatrix {
    a: IntMatrix,
    b: IntMatrix,
}

impl HandlebodyMatrix {
    /// Checks shapes only; use [`validate`] for the symplectic constraints.
    pub fn new(a: IntMatrix, b: IntMatrix) -> Result<Self> {
        a.require_square()?;
        if b.rows() != a.rows() || b.cols() != a.cols() {
            return Err(Error::DimensionMismatch(format!(
                "A is {}x{} but B is {}x{}",
                a.rows(),
                a.cols(),
                b.rows(),
                b.cols()
            )));
        }
        Ok(HandlebodyMatrix { a, b })
    }

    pub fn identity(g: usize) -> Self {
        HandlebodyMatrix {
            a: IntMatrix::identity(g),
            b: IntMatrix::zeros(g, g),
        }
    }

    /// `(Id, S)` for a symmetric `S`.
    pub fn unipotent(s: IntMatrix) -> Result<Self> {
        if !s.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        Ok(HandlebodyMatrix {
            a: IntMatrix::identity(s.rows()),
            b: s,
        })
    }

    pub fn genus(&self) -> usize {
        self.a.rows()
    }

    pub fn a(&self) -> &IntMatrix {
        &self.a
    }

    pub fn b(&self) -> &IntMatrix {
        &self.b
    }

    /// `(Aᵗ)⁻¹`, the action on H₁ of the handlebody.
    pub fn handlebody_action(&self) -> Result<IntMatrix> {
        self.a.transpose().unimodular_inverse()
    }

    /// Symmetric `S = A⁻¹B` with `full = diag(A, (Aᵗ)⁻¹) · [[Id, S], [0, Id]]`.
    pub fn unipotent_part(&self) -> Result<IntMatrix> {
        if !validate(self) {
            return Err(self.invalid());
        }
        Ok(&self.a.unimodular_inverse()? * &self.b)
    }

    /// Block product: `(A₁, B₁)·(A₂, B₂) = (A₁A₂, A₁B₂ + B₁(A₂ᵗ)⁻¹)`.
    pub fn compose(&self, other: &HandlebodyMatrix) -> Result<HandlebodyMatrix> {
        if self.genus() != other.genus() {
            return Err(Error::DimensionMismatch(format!(
                "genus {} vs genus {}",
                self.genus(),
                other.genus()
            )));
        }
        let a = self.a.checked_mul(&other.a)?;
        let b = self
            .a
            .checked_mul(&other.b)?
            .checked_add(&self.b.checked_mul(&other.handlebody_action()?)?)?;
        Ok(HandlebodyMatrix { a, b })
    }

    fn invalid(&self) -> Error {
        Error::InvalidHandlebody(format!(
            "A = {}, B = {} violate A unimodular / A·Bᵗ symmetric",
            self.a, self.b
        ))
    }
}

impl fmt::Display for HandlebodyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(A = {}, B = {})", self.a, self.b)
    }
}

/// True iff `A` is unimodular and `A·Bᵗ = B·Aᵗ` (equivalently
/// `Bᵗ(Aᵗ)⁻¹ = A⁻¹B`).
pub fn validate(h: &HandlebodyMatrix) -> bool {
    h.a.is_unimodular() && (&h.a * &h.b.transpose()).is_symmetric()
}

/// Shape-checking variant of [`validate`] for raw blocks.
pub fn validate_blocks(a: &IntMatrix, b: &IntMatrix) -> Result<bool> {
    Ok(validate(&HandlebodyMatrix::new(a.clone(), b.clone())?))
}

/// `[[A, B], [0, (Aᵗ)⁻¹]]`.
pub fn full_matrix(h: &HandlebodyMatrix) -> Result<IntMatrix> {
    if !validate(h) {
        return Err(h.invalid());
    }
    let g = h.genus();
    IntMatrix::from_blocks(&h.a, &h.b, &IntMatrix::zeros(g, g), &h.handlebody_action()?)
}

/// `J = [[0, Id], [−Id, 0]]`.
pub fn symplectic_form(g: usize) -> IntMatrix {
    let id = IntMatrix::identity(g);
    IntMatrix::from_blocks(
        &IntMatrix::zeros(g, g),
        &id,
        &id.neg(),
        &IntMatrix::zeros(g, g),
    )
    .expect("blocks fit")
}

pub fn is_symplectic(f: &IntMatrix) -> bool {
    if !f.is_square() || !f.rows().is_multiple_of(2) {
        return false;
    }
    let j = symplectic_form(f.rows() / 2);
    &(&f.transpose() * &j) * f == j
}

/// Whether `f` maps `L` (the first half of the coordinates) into itself.
pub fn preserves_lagrangian(f: &IntMatrix) -> bool {
    let g = f.rows() / 2;
    f.is_square() && f.rows().is_multiple_of(2) && f.block(g, 2 * g, 0, g).is_zero()
}

/// Builds the handlebody action whose handlebody part is `f_*`.
///
/// `f_star` must be in fixed-block form `[[Id_k, U], [0, V]]` with
/// `ker_ℚ(f_* − Id)` equal to the span of the first `k` coordinates. Then
/// `Aᵗ = f_*⁻¹ = [[Id, Y], [0, Z]]` and `B = [[Id, 0], [Yᵗ, 0]]`. This gives
/// `A⁻¹B = [[Id_k, 0], [0, 0]]`, which is positive definite on
/// `ker(Aᵗ − Id)`, so `im(A − Id) + B·ker((Aᵗ)⁻¹ − Id) = L`.
///
/// When `V − Id` is invertible the kernel condition holds automatically; it
/// also holds for the output of [`crate::linalg::conjugate_to_fixed_block_form`]
/// when `V` retains a unipotent Jordan block.
pub fn construct_b(f_star: &IntMatrix, k: usize) -> Result<HandlebodyMatrix> {
    f_star.require_square()?;
    let g = f_star.rows();
    if k > g {
        return Err(Error::BlockForm(format!(
            "fixed block size {k} exceeds genus {g}"
        )));
    }
    if f_star.block(0, k, 0, k) != IntMatrix::identity(k) || !f_star.block(k, g, 0, k).is_zero() {
        return Err(Error::BlockForm(format!(
            "{f_star} is not [[Id_{k}, U], [0, V]]"
        )));
    }
    let det = f_star.determinant()?;
    if !num_traits::Signed::abs(&det).is_one() {
        return Err(Error::NotUnimodular { det });
    }
    let fixed_rank = g - f_star.minus_identity()?.rank();
    if fixed_rank != k {
        return Err(Error::BlockForm(format!(
            "V − Id is singular: ker(f_* − Id) has dimension {fixed_rank}, not {k}"
        )));
    }

    let a_t = f_star.unimodular_inverse()?;
    let y = a_t.block(0, k, k, g);
    let b = IntMatrix::from_blocks(
        &IntMatrix::identity(k),
        &IntMatrix::zeros(k, g - k),
        &y.transpose(),
        &IntMatrix::zeros(g - k, g - k),
    )?;
    let h = HandlebodyMatrix::new(a_t.transpose(), b)?;
    debug_assert!(validate(&h));
    Ok(h)
}

/// Same construction from the blocks `U` (k×(g−k)) and `V` ((g−k)×(g−k)).
pub fn construct_b_from_blocks(u: &IntMatrix, v: &IntMatrix, k: usize) -> Result<HandlebodyMatrix> {
    let g = k + v.rows();
    if u.rows() != k || u.cols() != v.rows() || !v.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "U is {}x{}, V is {}x{}, k = {k}",
            u.rows(),
            u.cols(),
            v.rows(),
            v.cols()
        )));
    }
    let f = IntMatrix::from_blocks(&IntMatrix::identity(k), u, &IntMatrix::zeros(g - k, k), v)?;
    construct_b(&f, k)
}

/// Generators of the unipotent subgroup `{(Id, S)}`; indices are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TwistGenerator {
    /// Twist about the disk-bounding curve `α_i`; acts by `S = E_i`.
    Alpha(usize),
    /// Twist about a disk-bounding curve in class `a_i + a_j` (`i < j`);
    /// acts by `S = E_i + E_j + E_ij + E_ji`.
    Delta(usize, usize),
}

impl fmt::Display for TwistGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TwistGenerator::Alpha(i) => write!(f, "alpha({i})"),
            TwistGenerator::Delta(i, j) => write!(f, "delta({i},{j})"),
        }
    }
}

/// A product of commuting twist generators with integer exponents, kept in
/// canonical order (alphas ascending, then deltas lexicographic) with
/// nonzero exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistWord {
    genus: usize,
    factors: Vec<(TwistGenerator, BigInt)>,
}

impl TwistWord {
    pub fn empty(genus: usize) -> Self {
        TwistWord {
            genus,
            factors: Vec::new(),
        }
    }

    /// Normalizes `delta(j, i)` to `delta(i, j)`, merges repeated
    /// generators, and drops zero exponents. The generators commute, so the
    /// input order is irrelevant.
    pub fn new<I>(genus: usize, factors: I) -> Result<Self>
    where
        I: IntoIterator<Item = (TwistGenerator, BigInt)>,
    {
        let mut merged: std::collections::BTreeMap<TwistGenerator, BigInt> = Default::default();
        for (gen, exp) in factors {
            let gen = match gen {
                TwistGenerator::Alpha(i) if (1..=genus).contains(&i) => gen,
                TwistGenerator::Delta(i, j) if i == j => {
                    return Err(Error::InvalidGenerator(format!(
                        "delta({i},{j}) needs distinct indices"
                    )))
                }
                TwistGenerator::Delta(i, j)
                    if (1..=genus).contains(&i) && (1..=genus).contains(&j) =>
                {
                    TwistGenerator::Delta(i.min(j), i.max(j))
                }
                _ => {
                    return Err(Error::InvalidGenerator(format!(
                        "{gen} out of range for genus {genus}"
                    )))
                }
            };
            *merged.entry(gen).or_insert_with(BigInt::zero) += exp;
        }
        let factors = merged.into_iter().filter(|(_, e)| !e.is_zero()).collect();
        Ok(TwistWord { genus, factors })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn factors(&self) -> &[(TwistGenerator, BigInt)] {
        &self.factors
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }
}

impl fmt::Display for TwistWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (n, (gen, exp)) in self.factors.iter().enumerate() {
            if n > 0 {
                f.write_str(" · ")?;
            }
            write!(f, "{gen}^{exp}")?;
        }
        Ok(())
    }
}

/// Writes `(Id, B)` as a product of twist generators: `delta(i,j)` gets
/// exponent `B[i][j]` and `alpha(i)` gets `B[i][i] − Σ_{j≠i} B[i][j]`.
pub fn decompose_unipotent(b: &IntMatrix) -> Result<TwistWord> {
    if !b.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let g = b.rows();
    let mut factors = Vec::new();
    for i in 0..g {
        let off: BigInt = (0..g).filter(|&j| j != i).map(|j| &b[(i, j)]).sum();
        factors.push((TwistGenerator::Alpha(i + 1), &b[(i, i)] - off));
    }
    for i in 0..g {
        for j in i + 1..g {
            factors.push((TwistGenerator::Delta(i + 1, j + 1), b[(i, j)].clone()));
        }
    }
    TwistWord::new(g, factors)
}

pub fn evaluate_twist_word(w: &TwistWord) -> HandlebodyMatrix {
    let g = w.genus;
    let mut b = IntMatrix::zeros(g, g);
    for (gen, exp) in &w.factors {
        match *gen {
            TwistGenerator::Alpha(i) => b[(i - 1, i - 1)] += exp,
            TwistGenerator::Delta(i, j) => {
                let (i, j) = (i - 1, j - 1);
                b[(i, i)] += exp;
                b[(j, j)] += exp;
                b[(i, j)] += exp;
                b[(j, i)] += exp;
            }
        }
    }
    HandlebodyMatrix {
        a: IntMatrix::identity(g),
        b,
    }
}
