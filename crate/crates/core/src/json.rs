//! JSON wire formats. Every number is written as a decimal string (rationals
//! as `"p/q"`); integer inputs are accepted either as strings or as JSON
//! numbers.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::handlebody::{HandlebodyMatrix, TwistGenerator, TwistWord};
use crate::linalg::{FixedBlockForm, IntMatrix};
use crate::polytope::{ConeMembership, Covector, Point, Polytope};
use crate::torus::{Certificate, CertifyInput, HomologyReport, NormBookkeeping};
use crate::words::FreeEndomorphism;

/// Arbitrary-precision integer, serialized as a decimal string.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Decimal(pub BigInt);

impl Decimal {
    fn to_count(&self, what: &str) -> Result<usize> {
        self.0.to_usize().ok_or_else(|| {
            Error::Parse(format!(
                "{what} must be a non-negative count, got {}",
                self.0
            ))
        })
    }
}

impl From<usize> for Decimal {
    fn from(n: usize) -> Self {
        Decimal(BigInt::from(n))
    }
}

impl From<&BigInt> for Decimal {
    fn from(n: &BigInt) -> Self {
        Decimal(n.clone())
    }
}

impl Serialize for Decimal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for Decimal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Decimal;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a decimal integer string")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Decimal, E> {
                Ok(Decimal(v.into()))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Decimal, E> {
                Ok(Decimal(v.into()))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Decimal, E> {
                BigInt::from_str(v.trim())
                    .map(Decimal)
                    .map_err(|_| E::custom(format!("invalid integer {v:?}")))
            }
        }
        d.deserialize_any(V)
    }
}

/// Exact rational, serialized as `"p/q"` (or `"p"` when integral).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rational(pub BigRational);

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Rational;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a rational string \"p/q\"")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Rational, E> {
                Ok(Rational(BigRational::from_integer(v.into())))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Rational, E> {
                Ok(Rational(BigRational::from_integer(v.into())))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Rational, E> {
                parse_rational(v)
                    .map(Rational)
                    .map_err(|e| E::custom(e.to_string()))
            }
        }
        d.deserialize_any(V)
    }
}

pub fn parse_rational(text: &str) -> Result<BigRational> {
    let t = text.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num =
        BigInt::from_str(num).map_err(|_| Error::Parse(format!("invalid rational {text:?}")))?;
    let den =
        BigInt::from_str(den).map_err(|_| Error::Parse(format!("invalid rational {text:?}")))?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {text:?}")));
    }
    Ok(BigRational::new(num, den))
}

pub type MatrixJson = Vec<Vec<Decimal>>;

pub fn matrix_to_json(m: &IntMatrix) -> MatrixJson {
    m.to_rows()
        .into_iter()
        .map(|r| r.into_iter().map(Decimal).collect())
        .collect()
}

pub fn matrix_from_json(rows: &MatrixJson) -> Result<IntMatrix> {
    IntMatrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|d| d.0.clone()).collect())
            .collect(),
    )
}

/// Reads a matrix whose shape is known; needed because `[]` carries no
/// column count.
fn matrix_with_shape(rows: &MatrixJson, r: usize, c: usize, what: &str) -> Result<IntMatrix> {
    if r == 0 || c == 0 {
        if rows.len() != r || rows.iter().any(|row| !row.is_empty()) {
            return Err(Error::Parse(format!(
                "{what}: expected an empty {r}x{c} matrix"
            )));
        }
        return Ok(IntMatrix::zeros(r, c));
    }
    let m = matrix_from_json(rows)?;
    if m.rows() != r || m.cols() != c {
        return Err(Error::Parse(format!(
            "{what}: expected {r}x{c}, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    Ok(m)
}

/// `{"rank": g, "images": [...]}` or `{"matrix": [[...]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum InputJson {
    Word { rank: Decimal, images: Vec<String> },
    Matrix { matrix: MatrixJson },
}

impl InputJson {
    pub fn from_input(input: &CertifyInput) -> Self {
        match input {
            CertifyInput::Word(f) => InputJson::Word {
                rank: f.rank().into(),
                images: f.images().iter().map(|w| w.render(f.rank())).collect(),
            },
            CertifyInput::Matrix(m) => InputJson::Matrix {
                matrix: matrix_to_json(m),
            },
        }
    }

    pub fn to_input(&self) -> Result<CertifyInput> {
        match self {
            InputJson::Word { rank, images } => Ok(CertifyInput::Word(FreeEndomorphism::parse(
                rank.to_count("rank")?,
                images,
            )?)),
            InputJson::Matrix { matrix } => {
                let m = matrix_from_json(matrix)?;
                m.require_square()?;
                Ok(CertifyInput::Matrix(m))
            }
        }
    }
}

pub fn parse_input(text: &str) -> Result<CertifyInput> {
    let raw: InputJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    raw.to_input()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistFactorJson {
    pub gen: String,
    pub i: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub j: Option<usize>,
    pub exp: Decimal,
}

pub fn twist_word_to_json(w: &TwistWord) -> Vec<TwistFactorJson> {
    w.factors()
        .iter()
        .map(|(gen, exp)| match *gen {
            TwistGenerator::Alpha(i) => TwistFactorJson {
                gen: "alpha".into(),
                i,
                j: None,
                exp: exp.into(),
            },
            TwistGenerator::Delta(i, j) => TwistFactorJson {
                gen: "delta".into(),
                i,
                j: Some(j),
                exp: exp.into(),
            },
        })
        .collect()
}

pub fn twist_word_from_json(genus: usize, factors: &[TwistFactorJson]) -> Result<TwistWord> {
    let parsed = factors
        .iter()
        .map(|f| {
            let gen = match (f.gen.as_str(), f.j) {
                ("alpha", None) => TwistGenerator::Alpha(f.i),
                ("delta", Some(j)) => TwistGenerator::Delta(f.i, j),
                _ => {
                    return Err(Error::Parse(format!(
                        "bad twist generator {:?} (i={}, j={:?})",
                        f.gen, f.i, f.j
                    )))
                }
            };
            if f.exp.0.is_zero() {
                return Err(Error::Parse("twist exponents must be nonzero".into()));
            }
            Ok((gen, f.exp.0.clone()))
        })
        .collect::<Result<Vec<_>>>()?;
    TwistWord::new(genus, parsed)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlocksJson {
    #[serde(rename = "U")]
    pub u: MatrixJson,
    #[serde(rename = "V")]
    pub v: MatrixJson,
    pub k: Decimal,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyJson {
    #[serde(rename = "dim_M")]
    pub dim_m: Decimal,
    #[serde(rename = "dim_W")]
    pub dim_w: Decimal,
    #[serde(rename = "torsion_M", default, skip_serializing_if = "Option::is_none")]
    pub torsion_m: Option<Vec<Decimal>>,
    pub iota_iso: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormsJson {
    #[serde(rename = "N")]
    pub n: Decimal,
    #[serde(rename = "T")]
    pub t: Decimal,
    pub fiber_genus: Decimal,
    pub handlebody_rank: Decimal,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub input: InputJson,
    pub automorphism_verified: bool,
    pub f_star: MatrixJson,
    pub conjugator: MatrixJson,
    pub f_star_conjugated: MatrixJson,
    pub blocks: BlocksJson,
    #[serde(rename = "A")]
    pub a: MatrixJson,
    #[serde(rename = "B")]
    pub b: MatrixJson,
    pub twist_word: Vec<TwistFactorJson>,
    pub criterion: bool,
    pub homology: HomologyJson,
    pub norms: NormsJson,
    pub family_note: String,
}

impl CertificateJson {
    pub fn from_certificate(c: &Certificate) -> Self {
        let bf = &c.block_form;
        CertificateJson {
            input: InputJson::from_input(&c.input),
            automorphism_verified: c.automorphism_verified,
            f_star: matrix_to_json(&c.f_star),
            conjugator: matrix_to_json(&bf.conjugator),
            f_star_conjugated: matrix_to_json(&bf.conjugated),
            blocks: BlocksJson {
                u: matrix_to_json(&bf.u),
                v: matrix_to_json(&bf.v),
                k: bf.k.into(),
            },
            a: matrix_to_json(c.handlebody.a()),
            b: matrix_to_json(c.handlebody.b()),
            twist_word: twist_word_to_json(&c.twist_word),
            criterion: c.criterion,
            homology: HomologyJson {
                dim_m: c.homology.dim_h1_m.into(),
                dim_w: c.homology.dim_h1_w.into(),
                torsion_m: c
                    .homology
                    .torsion_m
                    .as_ref()
                    .map(|t| t.iter().map(Decimal::from).collect()),
                iota_iso: c.homology.iota_iso,
            },
            norms: NormsJson {
                n: (&c.norms.n_value).into(),
                t: (&c.norms.t_value).into(),
                fiber_genus: c.norms.fiber_genus.into(),
                handlebody_rank: c.norms.handlebody_rank.into(),
            },
            family_note: c.family_note.clone(),
        }
    }

    /// Rebuilds the certificate; shape errors are reported, semantic checks
    /// are left to [`crate::torus::verify_certificate`].
    pub fn to_certificate(&self) -> Result<Certificate> {
        let f_star = matrix_from_json(&self.f_star)?;
        let g = f_star.rows();
        let k = self.blocks.k.to_count("k")?;
        if k > g {
            return Err(Error::Parse(format!("k = {k} exceeds genus {g}")));
        }
        let block_form = FixedBlockForm {
            conjugator: matrix_with_shape(&self.conjugator, g, g, "conjugator")?,
            conjugated: matrix_with_shape(&self.f_star_conjugated, g, g, "f_star_conjugated")?,
            u: matrix_with_shape(&self.blocks.u, k, g - k, "U")?,
            v: matrix_with_shape(&self.blocks.v, g - k, g - k, "V")?,
            k,
        };
        let handlebody = HandlebodyMatrix::new(
            matrix_with_shape(&self.a, g, g, "A")?,
            matrix_with_shape(&self.b, g, g, "B")?,
        )?;
        Ok(Certificate {
            input: self.input.to_input()?,
            automorphism_verified: self.automorphism_verified,
            f_star,
            block_form,
            handlebody,
            twist_word: twist_word_from_json(g, &self.twist_word)?,
            criterion: self.criterion,
            homology: HomologyReport {
                dim_h1_m: self.homology.dim_m.to_count("dim_M")?,
                dim_h1_w: self.homology.dim_w.to_count("dim_W")?,
                torsion_m: self
                    .homology
                    .torsion_m
                    .as_ref()
                    .map(|t| t.iter().map(|d| d.0.clone()).collect()),
                iota_iso: self.homology.iota_iso,
            },
            norms: NormBookkeeping {
                fiber_genus: self.norms.fiber_genus.to_count("fiber_genus")?,
                handlebody_rank: self.norms.handlebody_rank.to_count("handlebody_rank")?,
                n_value: self.norms.n.0.clone(),
                t_value: self.norms.t.0.clone(),
            },
            family_note: self.family_note.clone(),
        })
    }
}

/// Polytope input: `{"dim": d, "vertices": [[...], ...], "covectors": [[...], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeJson {
    pub dim: Decimal,
    pub vertices: Vec<Vec<Rational>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub covectors: Vec<Vec<Rational>>,
}

impl PolytopeJson {
    pub fn polytope(&self) -> Result<Polytope> {
        Polytope::new(
            self.dim.to_count("dim")?,
            self.vertices.iter().map(|v| point_from_json(v)).collect(),
        )
    }

    pub fn covectors(&self) -> Vec<Covector> {
        self.covectors
            .iter()
            .map(|c| Covector(point_from_json(c)))
            .collect()
    }

    pub fn from_polytope(p: &Polytope, covectors: &[Covector]) -> Self {
        PolytopeJson {
            dim: p.ambient_dim().into(),
            vertices: p.vertices().iter().map(|v| point_to_json(v)).collect(),
            covectors: covectors.iter().map(|c| point_to_json(&c.0)).collect(),
        }
    }
}

fn point_from_json(v: &[Rational]) -> Point {
    v.iter().map(|r| r.0.clone()).collect()
}

pub fn point_to_json(v: &[BigRational]) -> Vec<Rational> {
    v.iter().cloned().map(Rational).collect()
}

/// `"boundary"` or `[argmin, argmax]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ConeJson {
    Marker(String),
    Open([Vec<Rational>; 2]),
}

impl From<&ConeMembership> for ConeJson {
    fn from(c: &ConeMembership) -> Self {
        match c {
            ConeMembership::Boundary => ConeJson::Marker("boundary".into()),
            ConeMembership::Open(d) => {
                ConeJson::Open([point_to_json(&d.argmin), point_to_json(&d.argmax)])
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeRecordJson {
    pub covector: Vec<Rational>,
    #[serde(rename = "T")]
    pub t: Rational,
    pub cone: ConeJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chi: Option<Decimal>,
    /// Set when `chi` comes from a single-point polytope (`G ≅ ℤ`), where
    /// the kernel is trivial with χ = 1 rather than −T = 0.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub degenerate_point_polytope: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeReportJson {
    pub dim: Decimal,
    pub vertices: Vec<Vec<Rational>>,
    pub records: Vec<PolytopeRecordJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatchFailureJson {
    pub index: usize,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatchSummaryJson {
    pub successes: Decimal,
    pub failures: Decimal,
    /// Number of certificates per dim H₁(M; ℚ).
    pub dimension_histogram: BTreeMap<String, Decimal>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatchReportJson {
    pub seed: Decimal,
    pub count: Decimal,
    pub genus: String,
    pub summary: BatchSummaryJson,
    pub certificates: Vec<CertificateJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<BatchFailureJson>,
}
