//! Words in the free group F_g and endomorphisms given by generator images.
//!
//! Syntax accepted by [`parse_word`]: letters `a`..`z` name generators
//! 1..26 (uppercase is the inverse), `x1`, `x2`, … name generators by index
//! (`X3` is the inverse of `x3`), and any letter may carry an integer
//! exponent `^n`. Tokens may be separated by whitespace or `*`, or simply
//! concatenated. The empty string and `1` denote the identity.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

/// A generator or its inverse; `generator` is 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    pub fn inv(self) -> Self {
        Letter {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }
}

/// A freely reduced word.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FreeWord {
    letters: Vec<Letter>,
}

impl FreeWord {
    pub fn identity() -> Self {
        FreeWord::default()
    }

    pub fn generator(index: usize) -> Self {
        FreeWord {
            letters: vec![Letter::new(index, false)],
        }
    }

    /// Reduces an arbitrary letter sequence.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        FreeWord { letters: out }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        FreeWord {
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    pub fn concat(&self, other: &FreeWord) -> Self {
        FreeWord::from_letters(self.letters.iter().chain(&other.letters).copied())
    }

    pub fn max_generator(&self) -> usize {
        self.letters.iter().map(|l| l.generator).max().unwrap_or(0)
    }

    /// Exponent sum of each generator 1..=g.
    pub fn exponent_sums(&self, g: usize) -> Vec<BigInt> {
        let mut sums = vec![0i64; g];
        for l in &self.letters {
            sums[l.generator - 1] += if l.inverse { -1 } else { 1 };
        }
        sums.into_iter().map(BigInt::from).collect()
    }

    /// Renders in the syntax accepted by [`parse_word`]: letters when
    /// `g ≤ 26`, indexed `x` names otherwise.
    pub fn render(&self, g: usize) -> String {
        if self.letters.is_empty() {
            return "1".to_string();
        }
        let tokens: Vec<String> = self
            .letters
            .iter()
            .map(|l| {
                if g <= 26 {
                    let c = (b'a' + (l.generator - 1) as u8) as char;
                    if l.inverse {
                        c.to_ascii_uppercase().to_string()
                    } else {
                        c.to_string()
                    }
                } else if l.inverse {
                    format!("x{}^-1", l.generator)
                } else {
                    format!("x{}", l.generator)
                }
            })
            .collect();
        tokens.join(" ")
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(self.max_generator()))
    }
}

const MAX_EXPONENT: u64 = 1 << 20;

pub fn parse_word(text: &str, g: usize) -> Result<FreeWord> {
    let chars: Vec<char> = text.chars().collect();
    let mut letters = Vec::new();
    let mut pos = 0;
    while pos < chars.len() {
        let c = chars[pos];
        if c.is_whitespace() || c == '*' {
            pos += 1;
            continue;
        }
        if c == '1' && letters.is_empty() && text.trim() == "1" {
            return Ok(FreeWord::identity());
        }
        if !c.is_ascii_alphabetic() {
            return Err(Error::Parse(format!(
                "unexpected character {c:?} at position {pos}"
            )));
        }
        let inverse = c.is_ascii_uppercase();
        let lower = c.to_ascii_lowercase();
        pos += 1;
        let generator = if lower == 'x' && chars.get(pos).is_some_and(char::is_ascii_digit) {
            let start = pos;
            while chars.get(pos).is_some_and(char::is_ascii_digit) {
                pos += 1;
            }
            let digits: String = chars[start..pos].iter().collect();
            digits
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("generator index {digits:?} out of range")))?
        } else {
            if g > 26 {
                return Err(Error::Parse(format!(
                    "letter shorthand {c:?} needs rank ≤ 26; use x1..x{g}"
                )));
            }
            (lower as u8 - b'a') as usize + 1
        };
        if generator == 0 || generator > g {
            return Err(Error::Parse(format!(
                "unknown generator {generator} for rank {g}"
            )));
        }

        let mut exponent: i64 = 1;
        if chars.get(pos) == Some(&'^') {
            pos += 1;
            let start = pos;
            if matches!(chars.get(pos), Some('-') | Some('+')) {
                pos += 1;
            }
            while chars.get(pos).is_some_and(char::is_ascii_digit) {
                pos += 1;
            }
            let raw: String = chars[start..pos].iter().collect();
            exponent = raw.parse::<i64>().map_err(|_| {
                Error::Parse(format!("malformed exponent {raw:?} at position {start}"))
            })?;
            if exponent.unsigned_abs() > MAX_EXPONENT {
                return Err(Error::Parse(format!(
                    "exponent {exponent} exceeds {MAX_EXPONENT}"
                )));
            }
        }
        let letter = Letter::new(generator, inverse ^ (exponent < 0));
        for _ in 0..exponent.unsigned_abs() {
            letters.push(letter);
        }
    }
    Ok(FreeWord::from_letters(letters))
}

/// An endomorphism of F_g given by the images of the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeEndomorphism {
    rank: usize,
    images: Vec<FreeWord>,
}

impl FreeEndomorphism {
    pub fn new(rank: usize, images: Vec<FreeWord>) -> Result<Self> {
        if images.len() != rank {
            return Err(Error::DimensionMismatch(format!(
                "rank {rank} endomorphism needs {rank} images, got {}",
                images.len()
            )));
        }
        if let Some(w) = images.iter().find(|w| w.max_generator() > rank) {
            return Err(Error::Parse(format!(
                "image uses generator {} beyond rank {rank}",
                w.max_generator()
            )));
        }
        Ok(FreeEndomorphism { rank, images })
    }

    pub fn parse<S: AsRef<str>>(rank: usize, images: &[S]) -> Result<Self> {
        let words = images
            .iter()
            .map(|s| parse_word(s.as_ref(), rank))
            .collect::<Result<Vec<_>>>()?;
        Self::new(rank, words)
    }

    pub fn identity(rank: usize) -> Self {
        FreeEndomorphism {
            rank,
            images: (1..=rank).map(FreeWord::generator).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn images(&self) -> &[FreeWord] {
        &self.images
    }

    pub fn apply(&self, w: &FreeWord) -> FreeWord {
        let letters = w.letters().iter().flat_map(|l| {
            let image = &self.images[l.generator - 1];
            let image = if l.inverse {
                image.inverse()
            } else {
                image.clone()
            };
            image.letters.into_iter()
        });
        FreeWord::from_letters(letters)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &FreeEndomorphism) -> Result<FreeEndomorphism> {
        if self.rank != other.rank {
            return Err(Error::DimensionMismatch(format!(
                "cannot compose ranks {} and {}",
                self.rank, other.rank
            )));
        }
        Ok(FreeEndomorphism {
            rank: self.rank,
            images: other.images.iter().map(|w| self.apply(w)).collect(),
        })
    }
}

/// Action on H₁(F_g; ℤ) = ℤ^g. Column `j` is the exponent-sum vector of the
/// image of generator `j`.
pub fn abelianization_matrix(f: &FreeEndomorphism) -> IntMatrix {
    let columns: Vec<Vec<BigInt>> = f.images.iter().map(|w| w.exponent_sums(f.rank)).collect();
    IntMatrix::from_columns(f.rank, &columns)
}

/// `|det| = 1` on homology, the necessary condition for an automorphism.
pub fn validate_unimodular(f: &FreeEndomorphism) -> bool {
    abelianization_matrix(f)
        .determinant()
        .is_ok_and(|d| d.abs() == BigInt::from(1))
}
