//! Index properties on random loops: additivity under concatenation,
//! negation under reversal, and invariance under refinement.

use maslov::LagrangianLinePath;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

/// Random closed loop based at angle 0 with an integer winding.
fn random_loop(rng: &mut ChaCha8Rng) -> LagrangianLinePath {
    let winding = rng.gen_range(-3i64..=3);
    let n = rng.gen_range(24..64) * (1 + winding.unsigned_abs() as usize);
    // Monotone-ish sweep plus bounded jitter keeps every jump below π/2.
    let total = winding as f64 * PI;
    let samples: Vec<f64> = (0..n)
        .map(|i| {
            let t = i as f64 / n as f64;
            let jitter = if i == 0 { 0.0 } else { rng.gen_range(-0.3..0.3) };
            total * t + jitter
        })
        .collect();
    LagrangianLinePath::new(&samples, true).expect("jumps bounded by construction")
}

#[test]
fn additivity_under_concatenation() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0a51_0001);
    for _ in 0..100 {
        let a = random_loop(&mut rng);
        let b = random_loop(&mut rng);
        let ab = a.concat(&b).unwrap();
        assert_eq!(
            ab.maslov_index().unwrap(),
            a.maslov_index().unwrap() + b.maslov_index().unwrap()
        );
    }
}

#[test]
fn reversal_negates_the_index() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0a51_0002);
    for _ in 0..100 {
        let a = random_loop(&mut rng);
        assert_eq!(
            a.reverse().maslov_index().unwrap(),
            -a.maslov_index().unwrap()
        );
    }
}

#[test]
fn refinement_preserves_the_index() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0a51_0003);
    for _ in 0..100 {
        let a = random_loop(&mut rng);
        let idx = a.maslov_index().unwrap();
        let mut refined = a;
        for _ in 0..3 {
            refined = refined.refine();
            assert_eq!(refined.maslov_index().unwrap(), idx);
        }
    }
}
