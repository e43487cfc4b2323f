//! Exact integer and rational matrix algebra.
//!
//! Nothing in here touches floating point. Integer matrices carry
//! arbitrary-precision entries; rational matrices keep every entry in lowest
//! terms (which `BigRational` guarantees on construction).

mod int_matrix;
mod lattice;
mod rat_matrix;
mod smith;
mod subspace;

pub use int_matrix::IntMatrix;
pub use lattice::{
    conjugate_to_fixed_block_form, extend_to_unimodular_basis, fixed_block_conjugation,
    saturated_fixed_lattice, FixedBlockForm,
};
pub use rat_matrix::RatMatrix;
pub use smith::{smith_normal_form, SmithDecomposition};
pub use subspace::{rational_image, rational_kernel, subspace_equals, subspace_sum, Subspace};

use num_bigint::BigInt;
use num_rational::BigRational;

pub(crate) fn rat(n: &BigInt) -> BigRational {
    BigRational::from_integer(n.clone())
}
