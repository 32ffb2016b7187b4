use morse_engine::{find_critical_points, flow, FlowLimit, Problem, Tolerances};

fn fixture(name: &str) -> Problem {
    let path = format!("{}/../../fixtures/morse/{name}", env!("CARGO_MANIFEST_DIR"));
    Problem::parse(&std::fs::read_to_string(path).unwrap()).unwrap()
}

/// Along every trajectory, f must be non-increasing (up to roundoff) and
/// every sample must satisfy the surface equation to tolerance.
#[test]
fn descent_is_monotone_and_stays_on_the_surface() {
    let p = fixture("skew-torus.prob");
    let surface = p.surface().unwrap();
    let f = p.function().unwrap();
    let tols = p.tolerances(Tolerances::default());
    let cps = find_critical_points(&surface, &f, p.grid, &p.labels, &tols).unwrap();
    for start in [
        [3.0, 0.0, 0.1],
        [0.0, 3.0, 0.2],
        [-2.0, -1.0, 0.9],
        [1.2, 1.6, -0.5],
    ] {
        let traj = flow(&surface, &f, start, &cps, 1e4, &tols).unwrap();
        assert!(matches!(traj.limit, FlowLimit::CriticalPoint(_)));
        let mut prev = f64::INFINITY;
        for (_, x) in &traj.samples {
            let q = [x.x, x.y, x.z];
            let value = f.eval(q).unwrap();
            assert!(
                value <= prev + 1e-12,
                "f increased from {prev} to {value} at {x:?}"
            );
            prev = value;
            let residual = surface.value(x).unwrap().abs();
            assert!(
                residual <= tols.tol_surface,
                "|F| = {residual:.3e} off-surface at {x:?}"
            );
        }
    }
}

/// Critical-point labels, positions, and flow-line counts must not depend
/// on how many worker threads run the searches.
#[cfg(feature = "parallel")]
#[test]
fn results_are_identical_across_thread_counts() {
    use chain_core::Ring;
    use morse_engine::build_morse_complex;

    let p = fixture("skew-torus.prob");
    let surface = p.surface().unwrap();
    let f = p.function().unwrap();
    let tols = p.tolerances(Tolerances::default());

    let report = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap();
        pool.install(|| {
            let run =
                build_morse_complex(&surface, &f, p.grid, &p.labels, Ring::Z2, &tols).unwrap();
            let mut out = String::new();
            for c in &run.critical_points {
                out.push_str(&format!(
                    "{} {} {:.17e} {:.17e} {:.17e}\n",
                    c.label, c.index, c.position.x, c.position.y, c.position.z
                ));
            }
            for m in &run.moduli {
                out.push_str(&format!(
                    "{}->{} {} {} {:?}\n",
                    m.source, m.target, m.n_lines, m.signed_count, m.witnesses
                ));
            }
            out
        })
    };

    let one = report(1);
    assert_eq!(one, report(2));
    assert_eq!(one, report(4));
}
