//! Acceptance run: one PASS/FAIL line per criterion, exact comparisons
//! throughout, each criterion under its wall-clock budget.
//!
//! A criterion FAILs on any violation. The run exits nonzero on every
//! violation except those proven impossible to meet for the specific
//! instance (each is printed with its proof obligation checked by an
//! oracle), so a red line never hides an implementation bug.

mod common;

use std::time::{Duration, Instant};

use common::{cofactor_det, dense_kernel, dense_mul, dense_rank, dense_transpose, det2, to_q};
use monodromy_core::handlebody::{
    decompose_unipotent, evaluate_twist_word, full_matrix, is_symplectic, validate,
    HandlebodyMatrix,
};
use monodromy_core::linalg::{conjugate_to_fixed_block_form, IntMatrix};
use monodromy_core::polytope::{cone_of, difference_body, thickness, ConeMembership, Polytope};
use monodromy_core::random::{
    instance_rng, pick_genus, random_covector, random_gl, random_points, random_symmetric,
};
use monodromy_core::torus::{
    certify, check_full_compatibility, h1_handlebody_torus, h1_surface_torus, verify_certificate,
    CertifyInput,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

/// Outcome of one criterion. `unattainable` collects violations that are
/// mathematically forced for that instance (no implementation could meet
/// the requirement); they still make the criterion FAIL, but only
/// `problems` make the run exit nonzero.
struct Outcome {
    cases: usize,
    problems: Vec<String>,
    unattainable: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            cases: 0,
            problems: Vec::new(),
            unattainable: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.problems.push(what());
        }
    }
}

fn rows(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    m.to_rows()
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| (0..n).map(|j| BigInt::from((i == j) as i64)).collect())
        .collect()
}

fn sub(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.iter().zip(y).map(|(p, q)| p - q).collect())
        .collect()
}

fn rank_of(a: &[Vec<BigInt>]) -> usize {
    let q: Vec<Vec<BigRational>> = a
        .iter()
        .map(|r| r.iter().cloned().map(BigRational::from_integer).collect())
        .collect();
    dense_rank(&q)
}

fn to_rat(a: &[Vec<BigInt>]) -> Vec<Vec<BigRational>> {
    a.iter()
        .map(|r| r.iter().cloned().map(BigRational::from_integer).collect())
        .collect()
}

/// Criteria 1 and 6: end-to-end certification of seeded random `f_*`.
fn criterion_1_and_6() -> (Outcome, Outcome) {
    let mut c1 = Outcome::new();
    let mut c6 = Outcome::new();
    for index in 0..200u64 {
        let mut rng = instance_rng(0x5EED_0001, index);
        let g = pick_genus(&(2..=6), &mut rng);
        let f = random_gl(g, &mut rng);
        c1.cases += 1;
        let cert = match certify(&CertifyInput::Matrix(f.clone())) {
            Ok(c) => c,
            Err(e) => {
                c1.problems
                    .push(format!("instance {index}: certify failed: {e}"));
                continue;
            }
        };
        let a = rows(cert.handlebody.a());
        let b = rows(cert.handlebody.b());
        let abt = dense_mul(&a, &dense_transpose(&b));
        c1.check(abt == dense_transpose(&abt), || {
            format!("instance {index}: A·Bᵗ not symmetric")
        });

        // im(A − Id) + B·ker(A⁻ᵗ − Id); note ker(A⁻ᵗ − Id) = ker(Aᵗ − Id).
        let a_minus = sub(&a, &identity(g));
        let mut spanning = to_rat(&dense_transpose(&a_minus));
        let fixed = dense_kernel(&to_rat(&sub(&dense_transpose(&a), &identity(g))), g);
        let b_q = to_rat(&b);
        for v in &fixed {
            spanning.push(
                b_q.iter()
                    .map(|row| {
                        row.iter()
                            .zip(v)
                            .fold(BigRational::zero(), |acc, (x, y)| acc + x * y)
                    })
                    .collect(),
            );
        }
        c1.check(dense_rank(&spanning) == g, || {
            format!("instance {index}: criterion sum is not Q^{g}")
        });
        c1.check(cert.criterion, || {
            format!("instance {index}: criterion flag false")
        });

        let expected = 1 + g - rank_of(&sub(&rows(&f), &identity(g)));
        let a_inv_t = rows(&cert.handlebody.handlebody_action().unwrap());
        c1.check(
            dense_mul(&a_inv_t, &dense_transpose(&a)) == identity(g),
            || format!("instance {index}: handlebody action is not A⁻ᵗ"),
        );
        let full: Vec<Vec<BigInt>> = (0..2 * g)
            .map(|i| {
                (0..2 * g)
                    .map(|j| match (i < g, j < g) {
                        (true, true) => a[i][j].clone(),
                        (true, false) => b[i][j - g].clone(),
                        (false, true) => BigInt::zero(),
                        (false, false) => a_inv_t[i - g][j - g].clone(),
                    })
                    .collect()
            })
            .collect();
        let dim_m_oracle = 1 + 2 * g - rank_of(&sub(&identity(2 * g), &full));
        let dim_w_oracle = 1 + g - rank_of(&sub(&a_inv_t, &identity(g)));
        let h = &cert.homology;
        c1.check(
            h.dim_h1_m == expected && h.dim_h1_w == expected && dim_m_oracle == expected && dim_w_oracle == expected,
            || {
                format!(
                    "instance {index}: dims M={} W={} oracle M={dim_m_oracle} W={dim_w_oracle}, expected {expected}",
                    h.dim_h1_m, h.dim_h1_w
                )
            },
        );
        let failed = verify_certificate(&cert);
        c1.check(failed.is_empty(), || {
            format!("instance {index}: verify failed: {failed:?}")
        });

        c6.cases += 1;
        let n = &cert.norms;
        let g_minus_one = BigInt::from(g as i64 - 1);
        c6.check(n.n_value == g_minus_one && n.t_value == g_minus_one, || {
            format!(
                "instance {index}: N = {}, T = {}, g − 1 = {g_minus_one}",
                n.n_value, n.t_value
            )
        });
    }
    (c1, c6)
}

/// Criterion 2: twist decomposition round trip.
fn criterion_2() -> Outcome {
    let mut out = Outcome::new();
    for index in 0..100u64 {
        let mut rng = instance_rng(0x5EED_0002, index);
        let g = rng.gen_range(1..=6);
        let b = random_symmetric(g, 9, &mut rng);
        out.cases += 1;
        let h = decompose_unipotent(&b).map(|w| evaluate_twist_word(&w));
        out.check(
            h.as_ref()
                .is_ok_and(|h| rows(h.a()) == identity(g) && rows(h.b()) == rows(&b)),
            || format!("instance {index}: round trip of {b} gave {h:?}"),
        );
    }
    out
}

/// Criterion 3: the symplectic gate, 100 valid and 100 perturbed matrices.
fn criterion_3() -> Outcome {
    let mut out = Outcome::new();
    for index in 0..100u64 {
        let mut rng = instance_rng(0x5EED_0003, index);
        // In genus 1 every A·Bᵗ is symmetric, so negatives need g ≥ 2.
        let g = rng.gen_range(2..=5);
        let a = random_gl(g, &mut rng);
        let s = random_symmetric(g, 5, &mut rng);
        let b = &a * &s;

        out.cases += 1;
        let h = HandlebodyMatrix::new(a.clone(), b.clone()).unwrap();
        out.check(validate(&h), || {
            format!("positive {index}: valid matrix rejected")
        });
        let f = rows(&full_matrix(&h).unwrap());
        let mut j = vec![vec![BigInt::zero(); 2 * g]; 2 * g];
        for i in 0..g {
            j[i][g + i] = BigInt::one();
            j[g + i][i] = -BigInt::one();
        }
        out.check(
            dense_mul(&dense_mul(&dense_transpose(&f), &j), &f) == j,
            || format!("positive {index}: FᵗJF ≠ J"),
        );
        let lower_left_zero = (g..2 * g).all(|r| (0..g).all(|c| f[r][c].is_zero()));
        let upper_left = f[..g].iter().map(|r| r[..g].to_vec()).collect::<Vec<_>>();
        out.check(
            lower_left_zero && cofactor_det(&upper_left).abs().is_one(),
            || format!("positive {index}: F(L) ≠ L"),
        );

        // Perturb one entry of B until A·Bᵗ is asymmetric (by the oracle).
        out.cases += 1;
        let mut bad = rows(&b);
        loop {
            let (r, c) = (rng.gen_range(0..g), rng.gen_range(0..g));
            bad[r][c] +=
                BigInt::from(rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 });
            let abt = dense_mul(&rows(&a), &dense_transpose(&bad));
            if abt != dense_transpose(&abt) {
                break;
            }
        }
        let bad = IntMatrix::from_rows(bad).unwrap();
        let h = HandlebodyMatrix::new(a.clone(), bad.clone()).unwrap();
        out.check(!validate(&h), || {
            format!("negative {index}: asymmetric A·Bᵗ accepted")
        });
        let full = IntMatrix::from_blocks(
            &a,
            &bad,
            &IntMatrix::zeros(g, g),
            &h.handlebody_action().unwrap(),
        );
        out.check(full.is_ok_and(|f| !is_symplectic(&f)), || {
            format!("negative {index}: perturbed matrix still symplectic")
        });
    }
    out
}

/// Criterion 4: fixed-block conjugation of random `M ∈ GL_g(ℤ)`.
fn criterion_4() -> Outcome {
    let mut out = Outcome::new();
    for index in 0..100u64 {
        let mut rng = instance_rng(0x5EED_0004, index);
        let g = pick_genus(&(2..=6), &mut rng);
        let m = random_gl(g, &mut rng);
        out.cases += 1;
        let bf = match conjugate_to_fixed_block_form(&m) {
            Ok(bf) => bf,
            Err(e) => {
                out.problems.push(format!("instance {index}: {e}"));
                continue;
            }
        };
        let k = bf.k;
        let p = rows(&bf.conjugator);
        out.check(cofactor_det(&p).abs().is_one(), || {
            format!("instance {index}: P not unimodular")
        });
        // P⁻¹MP = C  ⇔  MP = PC with P invertible
        let c = rows(&bf.conjugated);
        out.check(dense_mul(&rows(&m), &p) == dense_mul(&p, &c), || {
            format!("instance {index}: MP ≠ PC")
        });
        let block_ok = (0..g).all(|i| (0..k).all(|j| c[i][j] == BigInt::from((i == j) as i64)));
        out.check(block_ok, || {
            format!("instance {index}: not of the form [[Id, U], [0, V]]")
        });
        out.check(k == g - rank_of(&sub(&rows(&m), &identity(g))), || {
            format!("instance {index}: k = {k} ≠ g − rank(M − Id)")
        });
        let v_minus: Vec<Vec<BigInt>> = (k..g)
            .map(|i| {
                (k..g)
                    .map(|j| &c[i][j] - BigInt::from((i == j) as i64))
                    .collect()
            })
            .collect();
        if cofactor_det(&v_minus).is_zero() {
            // char(M) = (x − 1)^k · char(V). If eigenvalue 1 is not
            // semisimple its algebraic multiplicity exceeds k, so V has
            // eigenvalue 1 for every admissible P.
            let n = sub(&rows(&m), &identity(g));
            let (r1, r2) = (rank_of(&n), rank_of(&dense_mul(&n, &n)));
            let line = format!(
                "instance {index}: det(V − Id) = 0 for M = {m}; rank(M − Id) = {r1}, rank((M − Id)²) = {r2}"
            );
            if r1 != r2 {
                out.unattainable
                    .push(line + " (Jordan block at eigenvalue 1: no conjugator can succeed)");
            } else {
                out.problems.push(line);
            }
        }
    }
    out
}

/// Criterion 5: thickness properties on random rational polytopes.
fn criterion_5() -> Outcome {
    let mut out = Outcome::new();
    for index in 0..50u64 {
        let mut rng = instance_rng(0x5EED_0005, index);
        let dim = rng.gen_range(1..=4);
        let count = rng.gen_range(1..=8);
        let points = random_points(dim, count, &mut rng);
        let p = Polytope::new(dim, points.clone()).unwrap();
        let d = difference_body(&p);
        let ws: Vec<_> = (0..20)
            .map(|i| random_covector(dim, i % 2 == 0, &mut rng))
            .collect();
        for (i, w) in ws.iter().enumerate() {
            out.cases += 1;
            let t = thickness(&p, w).unwrap();
            let lambda =
                BigRational::new(rng.gen_range(-7..=7).into(), rng.gen_range(1..=4).into());
            out.check(
                thickness(&p, &w.scale(&lambda)).unwrap() == lambda.abs() * &t,
                || format!("polytope {index}, covector {i}: homogeneity"),
            );
            out.check(thickness(&p, &w.neg()).unwrap() == t, || {
                format!("polytope {index}, covector {i}: symmetry")
            });
            let other = &ws[(i + 1) % ws.len()];
            out.check(
                thickness(&p, &w.add(other)).unwrap() <= &t + thickness(&p, other).unwrap(),
                || format!("polytope {index}, covector {i}: triangle inequality"),
            );
            // Brute force over all input points, not just the pruned vertices.
            let brute = points
                .iter()
                .flat_map(|x| points.iter().map(move |y| w.eval(x) - w.eval(y)))
                .max()
                .unwrap();
            out.check(brute == t && d.support(w).unwrap() == t, || {
                format!("polytope {index}, covector {i}: vertex pairs / difference body disagree with T")
            });
            if let (ConeMembership::Open(ca), ConeMembership::Open(cb)) =
                (cone_of(&p, w).unwrap(), cone_of(&p, other).unwrap())
            {
                if ca == cb {
                    out.check(
                        thickness(&p, &w.add(other)).unwrap() == &t + thickness(&p, other).unwrap(),
                        || format!("polytope {index}, covector {i}: not additive on a common cone"),
                    );
                }
            }
        }
        // Covectors sharing a cone by construction: positive combinations of
        // one class stay in its cone, so additivity is exercised every time.
        for (i, w) in ws.iter().enumerate() {
            if let ConeMembership::Open(_) = cone_of(&p, w).unwrap() {
                out.cases += 1;
                let two = w.scale(&BigRational::from_integer(2.into()));
                out.check(
                    thickness(&p, &w.add(&two)).unwrap()
                        == thickness(&p, w).unwrap() + thickness(&p, &two).unwrap(),
                    || format!("polytope {index}, covector {i}: cone linearity along a ray"),
                );
            }
        }
    }
    out
}

/// Criterion 7: exhaustive g = 2, A = Id, entries of B in {−2, …, 2}.
fn criterion_7() -> Outcome {
    let mut out = Outcome::new();
    let range = -2i64..=2;
    for b11 in range.clone() {
        for b12 in range.clone() {
            for b21 in range.clone() {
                for b22 in range.clone() {
                    out.cases += 1;
                    let b = IntMatrix::from_i64(&[&[b11, b12], &[b21, b22]]);
                    let h = HandlebodyMatrix::new(IntMatrix::identity(2), b.clone()).unwrap();
                    if b12 != b21 {
                        // A·Bᵗ = Bᵗ must be symmetric; the gate rejects these.
                        out.check(!validate(&h), || format!("B = {b}: asymmetric B accepted"));
                        continue;
                    }
                    let oracle = det2(b11, b12, b21, b22) != 0;
                    out.check(
                        check_full_compatibility(&h).is_ok_and(|c| c == oracle),
                        || format!("B = {b}: criterion disagrees with det ≠ 0"),
                    );
                    let full = full_matrix(&h).unwrap();
                    let dim_m = 1 + 4
                        - dense_rank(&to_q(&IntMatrix::identity(4).checked_sub(&full).unwrap()));
                    let dim_w = 1 + 2
                        - dense_rank(&to_q(
                            &h.handlebody_action().unwrap().minus_identity().unwrap(),
                        ));
                    out.check(
                        h1_surface_torus(&full).is_ok_and(|(d, _)| d == dim_m),
                        || format!("B = {b}: dim H1(M) disagrees with the dense oracle"),
                    );
                    out.check(
                        h1_handlebody_torus(h.handlebody_action().as_ref().unwrap())
                            .is_ok_and(|d| d == dim_w),
                        || format!("B = {b}: dim H1(W) disagrees with the dense oracle"),
                    );
                }
            }
        }
    }
    out
}

/// Prints the criterion line; returns false on any failure that is not
/// mathematically forced.
fn report(id: &str, title: &str, outcome: &Outcome, elapsed: Duration, budget: Duration) -> bool {
    let in_time = elapsed <= budget;
    let sound = outcome.problems.is_empty() && in_time && outcome.cases > 0;
    let pass = sound && outcome.unattainable.is_empty();
    println!(
        "criterion {id}: {} — {title} ({} cases, {} problems, {} unattainable, {:.2}s of {}s)",
        if pass { "PASS" } else { "FAIL" },
        outcome.cases,
        outcome.problems.len(),
        outcome.unattainable.len(),
        elapsed.as_secs_f64(),
        budget.as_secs()
    );
    for p in outcome
        .problems
        .iter()
        .chain(&outcome.unattainable)
        .take(10)
    {
        println!("    {p}");
    }
    if !in_time {
        println!("    over the time budget");
    }
    sound
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let value = f();
    (value, start.elapsed())
}

fn main() {
    let mut all = true;

    let ((c1, c6), t1) = timed(criterion_1_and_6);
    all &= report(
        "1",
        "end-to-end certification, 200 random f_* (g = 2..6)",
        &c1,
        t1,
        Duration::from_secs(60),
    );
    let (c2, t2) = timed(criterion_2);
    all &= report(
        "2",
        "twist-word round trip, 100 symmetric B",
        &c2,
        t2,
        Duration::from_secs(5),
    );
    let (c3, t3) = timed(criterion_3);
    all &= report(
        "3",
        "symplectic gate, 100 valid + 100 perturbed",
        &c3,
        t3,
        Duration::from_secs(5),
    );
    let (c4, t4) = timed(criterion_4);
    all &= report(
        "4",
        "fixed-block conjugation, 100 random M",
        &c4,
        t4,
        Duration::from_secs(10),
    );
    let (c5, t5) = timed(criterion_5);
    all &= report(
        "5",
        "thickness properties, 50 polytopes x 20 covectors",
        &c5,
        t5,
        Duration::from_secs(30),
    );
    all &= report(
        "6",
        "norm bookkeeping N = T = g - 1 (criterion 1's run)",
        &c6,
        t1,
        Duration::from_secs(60),
    );
    let (c7, t7) = timed(criterion_7);
    all &= report(
        "7",
        "exhaustive g = 2, A = Id, B in {-2..2}^4 vs oracles",
        &c7,
        t7,
        Duration::from_secs(10),
    );

    if !all {
        println!("acceptance: unexplained failures present");
        std::process::exit(1);
    }
}
