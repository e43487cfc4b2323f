//! Seeded random instances. Every generator takes an explicit RNG; batch
//! instance `i` of seed `s` uses ChaCha8 stream `i` so instances can be
//! generated independently and in parallel.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::IntMatrix;
use crate::polytope::{Covector, Point};
use crate::words::{FreeEndomorphism, FreeWord, Letter};

/// Largest absolute value of an elementary-matrix entry.
pub const ELEMENTARY_BOUND: i64 = 3;

pub fn instance_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// A product of `3g` random factors, each an elementary matrix
/// `Id + c·e_ij` (`c ∈ [−3, 3] \ {0}`), a transposition, or a sign flip.
pub fn random_gl(g: usize, rng: &mut impl Rng) -> IntMatrix {
    let mut m = IntMatrix::identity(g);
    if g == 0 {
        return m;
    }
    for _ in 0..3 * g {
        let roll = rng.gen_range(0..6);
        if g >= 2 && roll < 4 {
            let i = rng.gen_range(0..g);
            let j = (i + rng.gen_range(1..g)) % g;
            let mut c = rng.gen_range(1..=ELEMENTARY_BOUND);
            if rng.gen_bool(0.5) {
                c = -c;
            }
            m.add_row_multiple(i, j, &BigInt::from(c));
        } else if g >= 2 && roll == 4 {
            let i = rng.gen_range(0..g);
            let j = (i + rng.gen_range(1..g)) % g;
            m.swap_rows(i, j);
        } else {
            m.negate_row(rng.gen_range(0..g));
        }
    }
    m
}

/// Uniform symmetric matrix with entries in `[−bound, bound]`.
pub fn random_symmetric(g: usize, bound: i64, rng: &mut impl Rng) -> IntMatrix {
    let mut rows = vec![vec![BigInt::from(0); g]; g];
    for i in 0..g {
        for j in i..g {
            let x = BigInt::from(rng.gen_range(-bound..=bound));
            rows[i][j] = x.clone();
            rows[j][i] = x;
        }
    }
    IntMatrix::from_rows(rows).expect("square by construction")
}

/// Uniform matrix with entries in `[−bound, bound]`.
pub fn random_matrix(rows: usize, cols: usize, bound: i64, rng: &mut impl Rng) -> IntMatrix {
    let data = (0..rows)
        .map(|_| {
            (0..cols)
                .map(|_| BigInt::from(rng.gen_range(-bound..=bound)))
                .collect()
        })
        .collect();
    IntMatrix::from_rows(data).expect("rectangular by construction")
}

/// Random endomorphism of `F_rank` whose images have at most `max_len`
/// letters.
pub fn random_endomorphism(rank: usize, max_len: usize, rng: &mut impl Rng) -> FreeEndomorphism {
    let images = (0..rank)
        .map(|_| {
            let len = rng.gen_range(0..=max_len);
            FreeWord::from_letters(
                (0..len).map(|_| Letter::new(rng.gen_range(1..=rank), rng.gen_bool(0.5))),
            )
        })
        .collect();
    FreeEndomorphism::new(rank, images).expect("generators in range")
}

/// Random automorphism of `F_rank`, as a product of Nielsen moves
/// (`x_i ↦ x_i x_j^±1`, `x_i ↦ x_j^±1 x_i`, inversions, swaps).
pub fn random_automorphism(rank: usize, moves: usize, rng: &mut impl Rng) -> FreeEndomorphism {
    let mut images: Vec<FreeWord> = (1..=rank).map(FreeWord::generator).collect();
    for _ in 0..moves {
        let i = rng.gen_range(0..rank);
        match rng.gen_range(0..4) {
            0 | 1 if rank >= 2 => {
                let j = (i + rng.gen_range(1..rank)) % rank;
                let other = if rng.gen_bool(0.5) {
                    images[j].clone()
                } else {
                    images[j].inverse()
                };
                images[i] = if rng.gen_bool(0.5) {
                    images[i].concat(&other)
                } else {
                    other.concat(&images[i])
                };
            }
            2 if rank >= 2 => {
                let j = (i + rng.gen_range(1..rank)) % rank;
                images.swap(i, j);
            }
            _ => images[i] = images[i].inverse(),
        }
    }
    FreeEndomorphism::new(rank, images).expect("generators in range")
}

fn random_rational(num_bound: i64, max_den: i64, rng: &mut impl Rng) -> BigRational {
    BigRational::new(
        rng.gen_range(-num_bound..=num_bound).into(),
        rng.gen_range(1..=max_den).into(),
    )
}

/// Random point cloud in ℚ^dim with small-height coordinates.
pub fn random_points(dim: usize, count: usize, rng: &mut impl Rng) -> Vec<Point> {
    (0..count)
        .map(|_| (0..dim).map(|_| random_rational(6, 3, rng)).collect())
        .collect()
}

/// Random covector; `integral` restricts to integer coordinates.
pub fn random_covector(dim: usize, integral: bool, rng: &mut impl Rng) -> Covector {
    Covector(
        (0..dim)
            .map(|_| {
                if integral {
                    BigRational::from_integer(rng.gen_range(-4..=4).into())
                } else {
                    random_rational(4, 3, rng)
                }
            })
            .collect(),
    )
}

/// Picks a genus uniformly from `range`.
pub fn pick_genus(range: &std::ops::RangeInclusive<usize>, rng: &mut impl Rng) -> usize {
    let choices: Vec<usize> = range.clone().collect();
    *choices.choose(rng).expect("nonempty genus range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::abelianization_matrix;

    #[test]
    fn random_gl_is_unimodular_and_deterministic() {
        for g in 1..=6 {
            for idx in 0..20 {
                let m = random_gl(g, &mut instance_rng(7, idx));
                assert!(m.is_unimodular(), "{m}");
                assert_eq!(m, random_gl(g, &mut instance_rng(7, idx)));
            }
        }
        assert_ne!(
            random_gl(4, &mut instance_rng(7, 0)),
            random_gl(4, &mut instance_rng(7, 1))
        );
    }

    #[test]
    fn symmetric_is_symmetric() {
        let mut rng = instance_rng(3, 0);
        for g in 0..6 {
            let s = random_symmetric(g, 9, &mut rng);
            assert!(s.is_symmetric());
        }
    }

    #[test]
    fn automorphisms_abelianize_to_gl() {
        let mut rng = instance_rng(11, 0);
        for rank in 1..=4 {
            let f = random_automorphism(rank, 10, &mut rng);
            assert!(abelianization_matrix(&f).is_unimodular());
        }
    }
}
