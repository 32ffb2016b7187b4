//! Property suites for the exact linear algebra: Smith normal form on random
//! matrices, an independent naive mod-2 elimination oracle for homology
//! dimensions, the Euler-characteristic identity, and serialization
//! round-trips.

use chain_core::{
    complex_from_text, complex_to_text, smith_normal_form, GradedComplex, IntMatrix, Ring,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn snf_invariants_on_1000_random_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    for _ in 0..1000 {
        let rows = rng.gen_range(1..=6);
        let cols = rng.gen_range(1..=6);
        let mut a = IntMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                a[(i, j)] = BigInt::from(rng.gen_range(-9i64..=9));
            }
        }
        let s = smith_normal_form(&a);
        assert_eq!(s.u.mul(&s.d).mul(&s.v), a, "A = U·D·V must hold exactly");
        assert_eq!(s.u.determinant().abs(), BigInt::one(), "U not unimodular");
        assert_eq!(s.v.determinant().abs(), BigInt::one(), "V not unimodular");
        let diag = s.diagonal();
        for w in diag.windows(2) {
            if !w[1].is_zero() {
                assert!(!w[0].is_zero(), "zero diagonal entry before a nonzero one");
                assert!(
                    w[1].mod_floor(&w[0]).is_zero(),
                    "divisibility chain broken: {} ∤ {}",
                    w[0],
                    w[1]
                );
            }
        }
        // off-diagonal of D is zero
        for i in 0..rows {
            for j in 0..cols {
                if i != j {
                    assert!(s.d[(i, j)].is_zero());
                }
            }
        }
    }
}

/// Naive mod-2 Gaussian elimination rank, written independently of the
/// bit-packed path so the two can cross-check each other.
fn naive_rank_mod2(m: &IntMatrix) -> usize {
    let mut a: Vec<Vec<u8>> = (0..m.nrows())
        .map(|i| {
            (0..m.ncols())
                .map(|j| {
                    if m[(i, j)].mod_floor(&BigInt::from(2)).is_zero() {
                        0
                    } else {
                        1
                    }
                })
                .collect()
        })
        .collect();
    let mut rank = 0;
    for col in 0..m.ncols() {
        let Some(p) = (rank..m.nrows()).find(|&i| a[i][col] == 1) else {
            continue;
        };
        a.swap(rank, p);
        for i in 0..m.nrows() {
            if i != rank && a[i][col] == 1 {
                for j in 0..m.ncols() {
                    a[i][j] ^= a[rank][j];
                }
            }
        }
        rank += 1;
    }
    rank
}

fn random_valid_complex(rng: &mut ChaCha8Rng) -> GradedComplex {
    // Generators spread over grades 0..=3; boundary from grade g only into
    // the image-killing pattern d(x) = sum of some grade-(g−1) generators,
    // then squared entries are cleared by construction: we build d on grade 1
    // and grade 3 only, so d∘d is automatically 0 (alternating support).
    let mut gens = Vec::new();
    let mut labels_by_grade: Vec<Vec<String>> = vec![Vec::new(); 4];
    for g in 0..4i64 {
        let count = rng.gen_range(0..4);
        for k in 0..count {
            let label = format!("g{g}_{k}");
            labels_by_grade[g as usize].push(label.clone());
            gens.push((label, g));
        }
    }
    let mut entries = Vec::new();
    for &g in &[1usize, 3] {
        for src in &labels_by_grade[g] {
            for tgt in &labels_by_grade[g - 1] {
                if rng.gen_bool(0.5) {
                    entries.push((src.clone(), tgt.clone(), rng.gen_range(-3i64..=3)));
                }
            }
        }
    }
    GradedComplex::build(&gens, &entries, Ring::Z2).expect("valid build")
}

#[test]
fn z2_homology_matches_naive_elimination() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    for _ in 0..200 {
        let c = random_valid_complex(&mut rng);
        assert!(c.verify_d_squared().is_empty());
        let h = c.homology_ranks().unwrap();
        for g in c.grades().collect::<Vec<_>>() {
            let n = c.generators_of_grade(g).len();
            let r_in = naive_rank_mod2(&c.boundary(g));
            let r_above = naive_rank_mod2(&c.boundary(g + 1));
            assert_eq!(
                h[&g].betti,
                n - r_in - r_above,
                "betti mismatch against naive elimination in grade {g}"
            );
        }
    }
}

#[test]
fn euler_characteristic_equals_alternating_betti_sum() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
    for _ in 0..200 {
        let c = random_valid_complex(&mut rng);
        let h = c.homology_ranks().unwrap();
        let chi_from_betti: i64 = h
            .iter()
            .map(|(&g, r)| {
                let sign = if g.rem_euclid(2) == 0 { 1 } else { -1 };
                sign * r.betti as i64
            })
            .sum();
        assert_eq!(c.euler_characteristic(), chi_from_betti);
    }
}

#[test]
fn serialization_round_trip_on_random_complexes() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0004);
    for _ in 0..100 {
        let c = random_valid_complex(&mut rng);
        let text = complex_to_text(&c);
        let c2 = complex_from_text(&text).expect("parse back");
        assert_eq!(complex_to_text(&c2), text, "round-trip must be stable");
        assert_eq!(c2.generators(), c.generators());
        for g in c.grades().collect::<Vec<_>>() {
            assert_eq!(c2.boundary(g), c.boundary(g));
        }
    }
}
