//! First homology of surface and handlebody mapping tori, the
//! full-compatibility criterion, and end-to-end certification.
//!
//! For a monodromy `φ` of `S_g` extending to `V_g` with handlebody action
//! `f_*`:
//!
//! ```text
//! H₁(M; ℚ) = ℚ ⊕ H₁(S_g; ℚ)/(Id − φ_*)
//! H₁(W; ℚ) = ℚ ⊕ H₁(V_g; ℚ)/(Id − f_*)
//! ```
//!
//! and the inclusion `M = ∂W → W` is a rational H₁-isomorphism whenever
//! `im(A − Id) + B·ker((Aᵗ)⁻¹ − Id) = L`.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::handlebody::{self, decompose_unipotent, full_matrix, HandlebodyMatrix, TwistWord};
use crate::linalg::{
    conjugate_to_fixed_block_form, rational_image, rational_kernel, smith_normal_form,
    subspace_sum, FixedBlockForm, IntMatrix, Subspace,
};
use crate::words::{abelianization_matrix, FreeEndomorphism};

/// Every member `ψⁿφ₀` of the family acts the same way on homology, so one
/// certificate covers all of them.
pub const FAMILY_NOTE: &str =
    "applies to every psi^n * phi_0 with psi in the kernel of H_g -> Out(F_g) \
acting trivially on H_1(boundary; Q); homology data is independent of n";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyReport {
    /// dim H₁(M; ℚ) for the surface bundle.
    pub dim_h1_m: usize,
    /// dim H₁(W; ℚ) for the handlebody bundle.
    pub dim_h1_w: usize,
    /// Invariant factors > 1 of the torsion of H₁(M; ℤ), when computed.
    pub torsion_m: Option<Vec<BigInt>>,
    pub iota_iso: bool,
}

/// Returns `(dim H₁(M; ℚ), torsion invariant factors of H₁(M; ℤ))`.
pub fn h1_surface_torus(phi_star: &IntMatrix) -> Result<(usize, Vec<BigInt>)> {
    phi_star.require_square()?;
    let relations = IntMatrix::identity(phi_star.rows()).checked_sub(phi_star)?;
    let snf = smith_normal_form(&relations);
    let factors = snf.invariant_factors();
    let dim = 1 + phi_star.rows() - factors.len();
    let torsion = factors.into_iter().filter(|d| !d.is_one()).collect();
    Ok((dim, torsion))
}

pub fn h1_handlebody_torus(f_star: &IntMatrix) -> Result<usize> {
    let d = f_star.minus_identity()?;
    Ok(1 + f_star.rows() - d.rank())
}

/// `im(A − Id) + B·ker((Aᵗ)⁻¹ − Id)` as a subspace of `L = ℚ^g`.
pub fn criterion_subspace(h: &HandlebodyMatrix) -> Result<Subspace> {
    if !handlebody::validate(h) {
        return Err(Error::InvalidHandlebody(format!(
            "{h} is not a handlebody action"
        )));
    }
    let image = rational_image(&h.a().minus_identity()?.to_rational());
    let fixed = rational_kernel(&h.handlebody_action()?.minus_identity()?.to_rational());
    let pushed = fixed.image_under(&h.b().to_rational())?;
    subspace_sum(&image, &pushed)
}

pub fn check_full_compatibility(h: &HandlebodyMatrix) -> Result<bool> {
    Ok(criterion_subspace(h)?.is_full())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertifyInput {
    Word(FreeEndomorphism),
    Matrix(IntMatrix),
}

impl CertifyInput {
    /// The action `f_*` on H₁(F_g; ℤ).
    pub fn homology_action(&self) -> IntMatrix {
        match self {
            CertifyInput::Word(f) => abelianization_matrix(f),
            CertifyInput::Matrix(m) => m.clone(),
        }
    }
}

/// Norm data at the certified class: the surface fiber has Thurston norm
/// `x = 2g − 2`, so `N = x/2 = g − 1`; the free kernel of rank `g` gives
/// thickness `T = −χ(F_g) = g − 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormBookkeeping {
    pub fiber_genus: usize,
    pub handlebody_rank: usize,
    pub n_value: BigInt,
    pub t_value: BigInt,
}

impl NormBookkeeping {
    pub fn for_genus(g: usize) -> Self {
        let x = BigInt::from(2 * g) - 2;
        let n_value = x / 2;
        let t_value = BigInt::from(g) - 1;
        NormBookkeeping {
            fiber_genus: g,
            handlebody_rank: g,
            n_value,
            t_value,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub input: CertifyInput,
    /// Whitehead-style verification is not attempted; only `|det f_*| = 1`.
    pub automorphism_verified: bool,
    /// `f_*` in the original basis.
    pub f_star: IntMatrix,
    pub block_form: FixedBlockForm,
    pub handlebody: HandlebodyMatrix,
    /// Twist word realizing the unipotent factor `A⁻¹B`.
    pub twist_word: TwistWord,
    pub criterion: bool,
    pub homology: HomologyReport,
    pub norms: NormBookkeeping,
    pub family_note: String,
}

impl Certificate {
    pub fn genus(&self) -> usize {
        self.f_star.rows()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CertifyOptions {
    pub torsion: bool,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions { torsion: true }
    }
}

pub fn certify(input: &CertifyInput) -> Result<Certificate> {
    certify_with(input, CertifyOptions::default())
}

/// abelianization → fixed-block conjugation → B-construction → twist
/// decomposition → criterion → homology.
pub fn certify_with(input: &CertifyInput, options: CertifyOptions) -> Result<Certificate> {
    let f_star = input.homology_action();
    f_star.require_square()?;
    let g = f_star.rows();
    if g == 0 {
        return Err(Error::DimensionMismatch("rank must be at least 1".into()));
    }
    let block_form = conjugate_to_fixed_block_form(&f_star)?;
    let h = handlebody::construct_b(&block_form.conjugated, block_form.k)
        .map_err(|e| Error::CriterionFailed(format!("B-construction failed: {e}")))?;
    let twist_word = decompose_unipotent(&h.unipotent_part()?)?;

    let criterion = check_full_compatibility(&h)?;
    if !criterion {
        return Err(Error::CriterionFailed(format!(
            "subspace sum is not L for {h}"
        )));
    }

    let (dim_h1_m, torsion) = h1_surface_torus(&full_matrix(&h)?)?;
    let dim_h1_w = h1_handlebody_torus(&h.handlebody_action()?)?;
    if dim_h1_m != dim_h1_w || dim_h1_w != 1 + block_form.k {
        return Err(Error::CriterionFailed(format!(
            "dim H1(M) = {dim_h1_m}, dim H1(W) = {dim_h1_w}, expected {}",
            1 + block_form.k
        )));
    }

    Ok(Certificate {
        input: input.clone(),
        automorphism_verified: false,
        f_star,
        block_form,
        handlebody: h,
        twist_word,
        criterion,
        homology: HomologyReport {
            dim_h1_m,
            dim_h1_w,
            torsion_m: options.torsion.then_some(torsion),
            iota_iso: true,
        },
        norms: NormBookkeeping::for_genus(g),
        family_note: FAMILY_NOTE.to_string(),
    })
}

/// Re-derives every claim in a certificate from its own data. Returns the
/// list of violated checks (empty when the certificate is sound).
pub fn verify_certificate(c: &Certificate) -> Vec<String> {
    let mut failures = Vec::new();
    let mut check = |ok: bool, what: &str| {
        if !ok {
            failures.push(what.to_string());
        }
    };

    let g = c.f_star.rows();
    check(
        c.f_star.is_square() && g > 0,
        "f_star is a nonempty square matrix",
    );
    if !c.f_star.is_square() || g == 0 {
        return failures;
    }
    check(
        c.input.homology_action() == c.f_star,
        "f_star equals the homology action of the input",
    );
    check(c.f_star.is_unimodular(), "f_star is unimodular");

    let bf = &c.block_form;
    let k = bf.k;
    let shapes_ok = bf.conjugator.rows() == g
        && bf.conjugator.is_square()
        && bf.conjugated.rows() == g
        && bf.conjugated.is_square()
        && k <= g
        && c.handlebody.genus() == g;
    check(shapes_ok, "matrix shapes agree with the genus");
    if !shapes_ok {
        return failures;
    }
    check(bf.conjugator.is_unimodular(), "conjugator is unimodular");
    if let Ok(p_inv) = bf.conjugator.unimodular_inverse() {
        check(
            &(&p_inv * &c.f_star) * &bf.conjugator == bf.conjugated,
            "P⁻¹ f_* P equals the conjugated matrix",
        );
    }
    check(
        bf.conjugated.block(0, k, 0, k) == IntMatrix::identity(k)
            && bf.conjugated.block(k, g, 0, k).is_zero(),
        "conjugated matrix has the form [[Id_k, U], [0, V]]",
    );
    check(bf.u == bf.conjugated.block(0, k, k, g), "U block matches");
    check(bf.v == bf.conjugated.block(k, g, k, g), "V block matches");
    check(
        g - c.f_star.minus_identity().map_or(0, |d| d.rank()) == k,
        "k = dim ker(f_* − Id)",
    );

    let h = &c.handlebody;
    let valid = handlebody::validate(h);
    check(valid, "A unimodular and A·Bᵗ symmetric");
    if !valid {
        return failures;
    }
    check(
        h.handlebody_action().ok().as_ref() == Some(&bf.conjugated),
        "(Aᵗ)⁻¹ equals the conjugated f_*",
    );
    if let Ok(f) = full_matrix(h) {
        check(handlebody::is_symplectic(&f), "full action is symplectic");
        check(
            handlebody::preserves_lagrangian(&f),
            "full action preserves L",
        );
        match h1_surface_torus(&f) {
            Ok((dim_m, torsion)) => {
                check(dim_m == c.homology.dim_h1_m, "dim H1(M) recomputes");
                if let Some(t) = &c.homology.torsion_m {
                    check(*t == torsion, "torsion of H1(M; Z) recomputes");
                }
            }
            Err(_) => check(false, "dim H1(M) recomputes"),
        }
    }
    check(
        h1_handlebody_torus(&c.f_star).ok() == Some(c.homology.dim_h1_w),
        "dim H1(W) recomputes",
    );
    check(
        c.homology.dim_h1_m == c.homology.dim_h1_w,
        "dim H1(M) = dim H1(W)",
    );
    check(
        c.homology.dim_h1_w == 1 + k,
        "dim H1(W) = 1 + dim ker(f_* − Id)",
    );
    check(c.homology.iota_iso, "iota_iso recorded");
    check(c.criterion, "criterion recorded true");
    check(
        check_full_compatibility(h).unwrap_or(false),
        "criterion subspace sum equals L",
    );

    match h.unipotent_part() {
        Ok(s) => check(
            handlebody::evaluate_twist_word(&c.twist_word).b() == &s,
            "twist word evaluates to A⁻¹B",
        ),
        Err(_) => check(false, "twist word evaluates to A⁻¹B"),
    }
    check(c.twist_word.genus() == g, "twist word genus");
    check(c.norms == NormBookkeeping::for_genus(g), "N = T = g − 1");
    check(c.norms.n_value == c.norms.t_value, "N equals T");
    failures
}
