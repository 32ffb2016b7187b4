//! Pipeline benchmarks.  Run once with the default (rayon) configuration
//! and once with the sequential fallback to compare the two:
//!
//! ```text
//! cargo bench -p morse-engine
//! cargo bench -p morse-engine --no-default-features
//! ```
//!
//! Both configurations produce identical numerical results; only the wall
//! clock differs.

use chain_core::Ring;
use criterion::{criterion_group, criterion_main, Criterion};
use morse_engine::{build_morse_complex, find_critical_points, Problem, Tolerances};

fn load(name: &str) -> Problem {
    let path = format!("{}/../../fixtures/morse/{name}", env!("CARGO_MANIFEST_DIR"));
    Problem::parse(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn bench_critical_points(c: &mut Criterion) {
    let p = load("skew-torus.prob");
    let surface = p.surface().unwrap();
    let f = p.function().unwrap();
    let tols = p.tolerances(Tolerances::default());
    c.bench_function("critical_points/skew-torus", |b| {
        b.iter(|| find_critical_points(&surface, &f, p.grid, &p.labels, &tols).unwrap())
    });
}

fn bench_full_complex(c: &mut Criterion) {
    let mut group = c.benchmark_group("morse_complex");
    group.sample_size(10);
    for name in ["sphere.prob", "skew-torus.prob"] {
        let p = load(name);
        let surface = p.surface().unwrap();
        let f = p.function().unwrap();
        let tols = p.tolerances(Tolerances::default());
        group.bench_function(name, |b| {
            b.iter(|| {
                build_morse_complex(&surface, &f, p.grid, &p.labels, Ring::Z2, &tols).unwrap()
            })
        });
    }
    group.finish();
}

criterion_group!(benches, bench_critical_points, bench_full_complex);
criterion_main!(benches);
