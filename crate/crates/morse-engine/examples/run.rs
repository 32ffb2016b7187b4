//! Run a problem file end to end and print the resulting data:
//!
//! ```text
//! cargo run -p morse-engine --example run -- fixtures/morse/sphere.prob
//! ```

use chain_core::Ring;
use morse_engine::{build_morse_complex, Problem, Tolerances};

fn main() {
    let path = std::env::args().nth(1).expect("usage: run <problem file>");
    let ring = match std::env::args().nth(2).as_deref() {
        Some("z") => Ring::Z,
        _ => Ring::Z2,
    };
    let text = std::fs::read_to_string(&path).expect("read problem file");
    let problem = Problem::parse(&text).expect("parse problem file");
    let surface = problem.surface().expect("surface");
    let f = problem.function().expect("function");
    let tols = problem.tolerances(Tolerances::default());
    let start = std::time::Instant::now();
    match build_morse_complex(&surface, &f, problem.grid, &problem.labels, ring, &tols) {
        Ok(run) => {
            for c in &run.critical_points {
                println!(
                    "{}: index {} at ({:.6}, {:.6}, {:.6}) f={:.6} eig=({:.4}, {:.4})",
                    c.label,
                    c.index,
                    c.position.x,
                    c.position.y,
                    c.position.z,
                    c.value,
                    c.eigenvalues[0],
                    c.eigenvalues[1]
                );
            }
            for m in &run.moduli {
                println!(
                    "lines {} -> {}: {} (signed {}) at {:?}",
                    m.source, m.target, m.n_lines, m.signed_count, m.witnesses
                );
            }
            println!("euler characteristic {}", run.euler_characteristic());
            match run.complex.homology_ranks() {
                Ok(ranks) => {
                    for (g, r) in ranks {
                        println!("H_{g}: betti {} torsion {:?}", r.betti, r.torsion);
                    }
                }
                Err(e) => println!("homology error: {e}"),
            }
            println!("elapsed {:.2?}", start.elapsed());
        }
        Err(e) => {
            println!("error: {e}");
            std::process::exit(2);
        }
    }
}
