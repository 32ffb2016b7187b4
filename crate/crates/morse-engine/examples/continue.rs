//! Build the continuation chain map between two problem files sharing a
//! surface and print its matrices, chain-map check, and induced ranks:
//!
//! ```text
//! cargo run -p morse-engine --example continue -- \
//!     fixtures/morse/skew-torus.prob fixtures/morse/skew-torus-x.prob
//! ```

use chain_core::Ring;
use morse_engine::{build_morse_complex, continuation_map, Problem, Schedule, Tolerances};

fn main() {
    let mut args = std::env::args().skip(1);
    let path0 = args.next().expect("usage: continue <prob0> <prob1>");
    let path1 = args.next().expect("usage: continue <prob0> <prob1>");
    let load = |path: &str| {
        let text = std::fs::read_to_string(path).expect("read problem file");
        Problem::parse(&text).expect("parse problem file")
    };
    let p0 = load(&path0);
    let p1 = load(&path1);
    let surface = p0.surface().expect("surface");
    let f0 = p0.function().expect("function");
    let f1 = p1.function().expect("function");
    let tols = p0.tolerances(Tolerances::default());
    let start = std::time::Instant::now();
    let run0 = build_morse_complex(&surface, &f0, p0.grid, &p0.labels, Ring::Z2, &tols)
        .expect("source complex");
    let run1 = build_morse_complex(&surface, &f1, p1.grid, &p1.labels, Ring::Z2, &tols)
        .expect("target complex");
    match continuation_map(&surface, &f0, &f1, &run0, &run1, Schedule::default(), &tols) {
        Ok(map) => {
            for g in map.grades() {
                println!("grade {g}: {:?}", map.matrix(g));
            }
            let violations = map.verify();
            println!("chain-map violations: {}", violations.len());
            match map.induced_ranks() {
                Ok(ranks) => {
                    for (g, r) in ranks {
                        println!("induced rank on H_{g}: {r}");
                    }
                }
                Err(e) => println!("induced rank error: {e}"),
            }
            println!("elapsed {:.2?}", start.elapsed());
        }
        Err(e) => {
            println!("error: {e}");
            std::process::exit(2);
        }
    }
}
