//! Disk-enumeration benchmark.  Run with the default (rayon) configuration
//! and with `--no-default-features` to compare the sequential fallback;
//! the resulting DGAs are identical either way.

use criterion::{criterion_group, criterion_main, Criterion};
use lch_front::{front_to_dga, SearchLimits};

fn bench_dga(c: &mut Criterion) {
    let mut group = c.benchmark_group("front_to_dga");
    for (name, word) in [
        ("trefoil", "L L X2 X2 X2 R R"),
        ("chekanov-a", "L L X2 X2 X1 X1 X2 X2 X2 R R"),
        ("chekanov-b", "L L X2 X2 X3 X1 X2 X2 X2 R R"),
    ] {
        group.bench_function(name, |b| {
            b.iter(|| front_to_dga(word, SearchLimits::default()).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_dga);
criterion_main!(benches);
