use chain_core::Ring;
use morse_engine::{basin_classify, build_morse_complex, flow, Problem, Tolerances};

fn fixture(name: &str) -> Problem {
    let path = format!("{}/../../fixtures/morse/{name}", env!("CARGO_MANIFEST_DIR"));
    Problem::parse(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn sphere_poles_homology_and_speed() {
    let start = std::time::Instant::now();
    let p = fixture("sphere.prob");
    let surface = p.surface().unwrap();
    let f = p.function().unwrap();
    let tols = p.tolerances(Tolerances::default());
    let run = build_morse_complex(&surface, &f, p.grid, &p.labels, Ring::Z2, &tols).unwrap();

    assert_eq!(run.critical_points.len(), 2);
    let s = &run.critical_points[0];
    let n = &run.critical_points[1];
    assert_eq!((s.label.as_str(), s.index), ("S", 0));
    assert_eq!((n.label.as_str(), n.index), ("N", 2));
    assert!((s.position - morse_engine::V3::new(0.0, 0.0, -1.0)).norm() < 1e-8);
    assert!((n.position - morse_engine::V3::new(0.0, 0.0, 1.0)).norm() < 1e-8);

    let ranks = run.complex.homology_ranks().unwrap();
    assert_eq!(ranks[&0].betti, 1);
    assert_eq!(ranks.get(&1).map_or(0, |r| r.betti), 0);
    assert_eq!(ranks[&2].betti, 1);
    assert!(ranks.values().all(|r| r.torsion.is_empty()));

    assert!(
        start.elapsed().as_secs_f64() < 5.0,
        "sphere pipeline took {:.2?}",
        start.elapsed()
    );
}

/// Height-function descent on the unit sphere has the closed form
/// γ(t) = (cos θ / cosh t, sin θ / cosh t, −tanh t) from an equator start.
#[test]
fn sphere_flow_matches_closed_form() {
    let p = fixture("sphere.prob");
    let surface = p.surface().unwrap();
    let f = p.function().unwrap();
    let tols = p.tolerances(Tolerances::default());
    let cps = morse_engine::find_critical_points(&surface, &f, p.grid, &p.labels, &tols).unwrap();

    let theta = 0.3f64;
    let traj = flow(
        &surface,
        &f,
        [theta.cos(), theta.sin(), 0.0],
        &cps,
        1e4,
        &tols,
    )
    .unwrap();
    assert_eq!(
        traj.limit,
        morse_engine::FlowLimit::CriticalPoint("S".into())
    );
    for (t, x) in &traj.samples {
        let exact = morse_engine::V3::new(
            theta.cos() / t.cosh(),
            theta.sin() / t.cosh(),
            -t.tanh(),
        );
        assert!(
            (x - exact).norm() < 1e-4,
            "at t={t}: {x:?} vs exact {exact:?}"
        );
    }
}

#[test]
fn sphere_basins_are_the_south_pole() {
    let p = fixture("sphere.prob");
    let surface = p.surface().unwrap();
    let f = p.function().unwrap();
    let tols = p.tolerances(Tolerances::default());
    let cps = morse_engine::find_critical_points(&surface, &f, p.grid, &p.labels, &tols).unwrap();
    for start in [
        [1.0, 0.0, 0.0],
        [0.0, -1.0, 0.0],
        [0.6, 0.0, 0.8],
        [-0.48, 0.6, 0.64],
    ] {
        assert_eq!(
            basin_classify(&surface, &f, start, &cps, &tols).unwrap(),
            "S"
        );
    }
}
