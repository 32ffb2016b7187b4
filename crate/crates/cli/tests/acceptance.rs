//! End-to-end acceptance suite.  Each numbered check prints exactly one
//! PASS/FAIL line; the test fails if any check fails, but always runs and
//! reports all of them.

use chain_core::{smith_normal_form, IntMatrix, Ring};
use dga_core::{
    format_polynomial, normalized_augmentation_count, poincare_polynomial, serial::dga_to_text,
    FreeDGA,
};
use fieldexpr::ScalarField;
use lch_front::{front_to_dga, SearchLimits};
use maslov::{rotation_arc, LagrangianLinePath};
use morse_engine::{
    build_morse_complex, continuation_map, flow, MorseError, MorseRun, Problem, Schedule,
    Tolerances,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;
use std::time::Instant;

fn fixture_path(rel: &str) -> String {
    format!("{}/../../fixtures/{rel}", env!("CARGO_MANIFEST_DIR"))
}

fn problem(rel: &str) -> Problem {
    Problem::parse(&std::fs::read_to_string(fixture_path(rel)).unwrap()).unwrap()
}

fn morse_run(rel: &str, ring: Ring, tols: &Tolerances) -> Result<MorseRun, MorseError> {
    let p = problem(rel);
    let surface = p.surface()?;
    let f = p.function()?;
    build_morse_complex(&surface, &f, p.grid, &p.labels, ring, &p.tolerances(*tols))
}

fn front_dga(rel: &str) -> (String, FreeDGA) {
    let text = std::fs::read_to_string(fixture_path(rel)).unwrap();
    let dga = front_to_dga(&text, SearchLimits::default()).unwrap();
    (text, dga)
}

fn betti3(run: &MorseRun) -> (usize, usize, usize) {
    let ranks = run.complex.homology_ranks().unwrap();
    let b = |g: i64| ranks.get(&g).map_or(0, |r| r.betti);
    (b(0), b(1), b(2))
}

fn ensure(cond: bool, msg: &str) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.to_string())
    }
}

fn polynomial_multiset(dga: &FreeDGA) -> Vec<String> {
    let mut polys: Vec<String> = dga
        .augmentations()
        .iter()
        .map(|a| {
            let c = dga.linearized_complex(a).expect("integer-graded fixture");
            format_polynomial(&poincare_polynomial(&c).expect("finite complex"))
        })
        .collect();
    polys.sort();
    polys
}

fn criterion_1_sphere() -> Result<(), String> {
    let start = Instant::now();
    let run = morse_run("morse/sphere.prob", Ring::Z2, &Tolerances::default())
        .map_err(|e| e.to_string())?;
    ensure(run.critical_points.len() == 2, "expected exactly 2 critical points")?;
    let s = &run.critical_points[0];
    let n = &run.critical_points[1];
    ensure(s.label == "S" && s.index == 0, "first point must be S of index 0")?;
    ensure(n.label == "N" && n.index == 2, "second point must be N of index 2")?;
    ensure(
        (s.position - morse_engine::V3::new(0.0, 0.0, -1.0)).norm() < 1e-8
            && (n.position - morse_engine::V3::new(0.0, 0.0, 1.0)).norm() < 1e-8,
        "poles not within 1e-8 of (0,0,∓1)",
    )?;
    for g in 0..=2 {
        ensure(run.complex.boundary(g).is_zero(), "differential must vanish")?;
    }
    ensure(betti3(&run) == (1, 0, 1), "homology ranks must be (1,0,1)")?;
    ensure(start.elapsed().as_secs_f64() < 5.0, "sphere run exceeded 5 s")
}

fn criterion_2_skew_torus() -> Result<(), String> {
    let start = Instant::now();
    let check = |run: &MorseRun| -> Result<(), String> {
        let idx: Vec<usize> = run.critical_points.iter().map(|c| c.index).collect();
        ensure(idx == [0, 1, 1, 2], "indices must be 0,1,1,2")?;
        let counts: Vec<(&str, &str, usize)> = run
            .moduli
            .iter()
            .map(|m| (m.source.as_str(), m.target.as_str(), m.n_lines))
            .collect();
        ensure(
            counts == [("b", "a", 2), ("c", "a", 2), ("d", "b", 2), ("d", "c", 2)],
            "all four rigid moduli must have 2 points",
        )?;
        ensure(
            run.complex.verify_d_squared().is_empty(),
            "∂² must vanish over Z/2",
        )?;
        ensure(betti3(run) == (1, 2, 1), "homology ranks must be (1,2,1)")
    };
    let tols = Tolerances::default();
    check(&morse_run("morse/skew-torus.prob", Ring::Z2, &tols).map_err(|e| e.to_string())?)?;
    check(
        &morse_run("morse/skew-torus.prob", Ring::Z2, &tols.halved())
            .map_err(|e| e.to_string())?,
    )?;
    ensure(start.elapsed().as_secs_f64() < 60.0, "torus runs exceeded 60 s")
}

fn criterion_3_symmetric_torus() -> Result<(), String> {
    match morse_run("morse/symmetric-torus.prob", Ring::Z2, &Tolerances::default()) {
        Err(e) => ensure(
            e.to_string() == "non-generic pair (c,b)",
            &format!("expected the (c,b) genericity error, got: {e}"),
        ),
        Ok(_) => Err("untilted torus must fail the genericity check".into()),
    }
}

fn criterion_4_euler() -> Result<(), String> {
    let tols = Tolerances::default();
    for (rel, chi) in [
        ("morse/sphere.prob", 2),
        ("morse/skew-torus.prob", 0),
        ("morse/genus2.prob", -2),
    ] {
        let run = morse_run(rel, Ring::Z2, &tols).map_err(|e| e.to_string())?;
        ensure(
            run.euler_characteristic() == chi,
            &format!("{rel}: expected Euler characteristic {chi}"),
        )?;
    }
    Ok(())
}

fn criterion_5_continuation() -> Result<(), String> {
    let tols = Tolerances::default();
    let load = |rel: &str| -> Result<(Problem, ScalarField, MorseRun), String> {
        let p = problem(rel);
        let f = p.function().map_err(|e| e.to_string())?;
        let run = morse_run(rel, Ring::Z2, &tols).map_err(|e| e.to_string())?;
        Ok((p, f, run))
    };
    let (p0, f0, run0) = load("morse/skew-torus.prob")?;
    let (_, f1, run1) = load("morse/skew-torus-x.prob")?;
    let (_, f2, run2) = load("morse/skew-torus-third.prob")?;
    let surface = p0.surface().map_err(|e| e.to_string())?;
    let cont = |fa: &ScalarField, fb: &ScalarField, ra: &MorseRun, rb: &MorseRun| {
        continuation_map(&surface, fa, fb, ra, rb, Schedule::default(), &tols)
            .map_err(|e| e.to_string())
    };

    let map01 = cont(&f0, &f1, &run0, &run1)?;
    ensure(map01.verify().is_empty(), "Φ must satisfy the chain condition exactly")?;
    let ranks = map01.induced_ranks().map_err(|e| e.to_string())?;
    ensure(
        (ranks[&0], ranks[&1], ranks[&2]) == (1, 2, 1),
        "Φ must induce a rank-(1,2,1) isomorphism",
    )?;

    let id = cont(&f0, &f0, &run0, &run0)?;
    for g in 0..=2 {
        let n = run0.complex.labels_of_grade(g).len();
        ensure(
            id.matrix(g) == IntMatrix::identity(n),
            "constant path must give the identity",
        )?;
    }

    let map12 = cont(&f1, &f2, &run1, &run2)?;
    let composed = map12.compose(&map01).map_err(|e| e.to_string())?;
    ensure(composed.verify().is_empty(), "composition must be a chain map")?;
    let ranks = composed.induced_ranks().map_err(|e| e.to_string())?;
    ensure(
        (ranks[&0], ranks[&1], ranks[&2]) == (1, 2, 1),
        "composed continuation must still induce an isomorphism",
    )
}

fn criterion_6_maslov() -> Result<(), String> {
    let constant = LagrangianLinePath::new(&[0.3; 8], true).map_err(|e| e.to_string())?;
    ensure(
        constant.maslov_index().map_err(|e| e.to_string())? == 0,
        "constant loop must have index 0",
    )?;
    let samples: Vec<f64> = (0..32).map(|i| PI * i as f64 / 32.0).collect();
    let rotation = LagrangianLinePath::new(&samples, true).map_err(|e| e.to_string())?;
    ensure(
        rotation.maslov_index().map_err(|e| e.to_string())? == 1,
        "π-rotation must have index +1",
    )?;
    // Four-arc strip loop: two constant tangent-line paths joined by two
    // anticlockwise quarter turns.
    let mut arcs = vec![0.0; 6];
    arcs.extend(rotation_arc(0.0, PI / 2.0, 8));
    arcs.extend(vec![PI / 2.0; 6]);
    arcs.extend(rotation_arc(PI / 2.0, PI / 2.0, 8));
    arcs.pop();
    let strip = LagrangianLinePath::new(&arcs, true).map_err(|e| e.to_string())?;
    ensure(
        strip.maslov_index().map_err(|e| e.to_string())? == 1,
        "strip-figure loop must have index 1",
    )
}

fn criterion_7_unknot() -> Result<(), String> {
    let start = Instant::now();
    let (_, dga) = front_dga("lch/unknot.front");
    ensure(dga.labels().len() == 1, "unknot must have one generator")?;
    ensure(dga.grade(0) == 1, "the generator must have grade 1")?;
    ensure(
        dga.generator_differential(0).is_zero(),
        "the differential must vanish",
    )?;
    let augs = dga.augmentations();
    ensure(augs.len() == 1, "exactly one augmentation")?;
    let complex = dga.linearized_complex(&augs[0]).map_err(|e| e.to_string())?;
    let poly = format_polynomial(&poincare_polynomial(&complex).map_err(|e| e.to_string())?);
    ensure(poly == "t", "linearized polynomial must be t")?;
    let golden = std::fs::read_to_string(fixture_path("lch/unknot.dga")).unwrap();
    ensure(dga_to_text(&dga) == golden, "golden file mismatch")?;
    ensure(start.elapsed().as_secs_f64() < 1.0, "unknot run exceeded 1 s")
}

fn criterion_8_trefoil() -> Result<(), String> {
    let start = Instant::now();
    let (_, dga) = front_dga("lch/trefoil.front");
    let mut grades: Vec<i64> = (0..dga.labels().len()).map(|i| dga.grade(i)).collect();
    grades.sort();
    ensure(grades == [0, 0, 0, 1, 1], "grades must be (0,0,0,1,1)")?;
    let text = dga_to_text(&dga);
    ensure(
        text.contains("diff a1 1 + b1 + b3 + b1.b2.b3"),
        "∂a1 must equal 1 + b1 + b3 + b1b2b3",
    )?;
    ensure(
        text.contains("diff a2 1 + b1 + b3 + b3.b2.b1"),
        "∂a2 must equal 1 + b1 + b3 + b3b2b1",
    )?;
    let golden = std::fs::read_to_string(fixture_path("lch/trefoil.dga")).unwrap();
    ensure(text == golden, "golden file mismatch")?;
    ensure(dga.verify().is_empty(), "∂² and the grading must check out")?;
    ensure(dga.augmentations().len() == 5, "exactly 5 of the 2³ assignments augment")?;
    ensure(start.elapsed().as_secs_f64() < 5.0, "trefoil run exceeded 5 s")
}

fn criterion_9_chekanov() -> Result<(), String> {
    let start = Instant::now();
    let (_, da) = front_dga("lch/chekanov-a.front");
    let (_, db) = front_dga("lch/chekanov-b.front");
    ensure(da.verify().is_empty() && db.verify().is_empty(), "both dgas must verify")?;
    ensure(
        polynomial_multiset(&da) != polynomial_multiset(&db),
        "linearized polynomial multisets must differ",
    )?;
    ensure(start.elapsed().as_secs_f64() < 60.0, "pair run exceeded 60 s")
}

fn criterion_10_invariance() -> Result<(), String> {
    for pair in ["triple", "left-cusp", "right-cusp"] {
        let (_, before) = front_dga(&format!("lch/moves/{pair}-before.front"));
        let (_, after) = front_dga(&format!("lch/moves/{pair}-after.front"));
        let (cb, kb) = normalized_augmentation_count(&before);
        let (ca, ka) = normalized_augmentation_count(&after);
        let shift = kb.min(ka);
        ensure(
            cb << (ka - shift) == ca << (kb - shift),
            &format!("{pair}: normalized augmentation counts differ"),
        )?;
        let mut pa = polynomial_multiset(&before);
        let mut pb = polynomial_multiset(&after);
        pa.dedup();
        pb.dedup();
        ensure(pa == pb, &format!("{pair}: polynomial sets differ"))?;
    }
    Ok(())
}

fn criterion_11_properties() -> Result<(), String> {
    // Smith normal form on 1000 random small matrices.
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce_0011);
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
        ensure(s.u.mul(&s.d).mul(&s.v) == a, "SNF factorization broken")?;
        ensure(
            s.u.determinant().abs() == BigInt::one() && s.v.determinant().abs() == BigInt::one(),
            "SNF transforms not unimodular",
        )?;
        let diag = s.diagonal();
        for w in diag.windows(2) {
            if !w[1].is_zero() {
                ensure(
                    !w[0].is_zero() && w[1].mod_floor(&w[0]).is_zero(),
                    "SNF divisibility chain broken",
                )?;
            }
        }
    }

    // Gradients against central finite differences on all fixture
    // expressions.
    let expressions = [
        "x^2 + y^2 + z^2 - 1",
        "z",
        "(sqrt(x^2+y^2)-2)^2 + z^2 - 1",
        "z + 0.05*y",
        "z + 0.05*x",
        "z + 0.04*x + 0.03*y",
        "z + 0.1*x",
        "(sqrt(x^2+z^2)-2)^2 + y^2 - 1",
        "(((x-1)^2+y^2)*((x+1)^2+y^2) - 1)^2 + z^2 - 0.16",
        "z + 0.05*x + 0.03*y",
    ];
    for src in expressions {
        let f = ScalarField::parse(src).map_err(|e| e.to_string())?;
        for _ in 0..100 {
            let p = [
                rng.gen_range(0.3..1.5),
                rng.gen_range(0.3..1.5),
                rng.gen_range(0.3..1.5),
            ];
            let exact = f.gradient(p).map_err(|e| e.to_string())?;
            for a in 0..3 {
                let (mut hi, mut lo) = (p, p);
                hi[a] += 1e-5;
                lo[a] -= 1e-5;
                let fd = (f.eval(hi).map_err(|e| e.to_string())?
                    - f.eval(lo).map_err(|e| e.to_string())?)
                    / 2e-5;
                let scale = exact[a].abs().max(1.0);
                ensure(
                    (exact[a] - fd).abs() <= 1e-6 * scale,
                    &format!("{src}: ∂_{a} mismatch at {p:?}"),
                )?;
            }
        }
    }

    // ∂² = 0 and grade drop on every emitted complex and dga.
    let tols = Tolerances::default();
    for rel in ["morse/sphere.prob", "morse/skew-torus.prob", "morse/genus2.prob"] {
        for ring in [Ring::Z2, Ring::Z] {
            let run = morse_run(rel, ring, &tols).map_err(|e| e.to_string())?;
            ensure(
                run.complex.verify_d_squared().is_empty(),
                &format!("{rel}: ∂² ≠ 0"),
            )?;
        }
    }
    for rel in [
        "lch/unknot.front",
        "lch/trefoil.front",
        "lch/stabilized-unknot.front",
        "lch/chekanov-a.front",
        "lch/chekanov-b.front",
    ] {
        let (_, dga) = front_dga(rel);
        ensure(dga.verify().is_empty(), &format!("{rel}: dga violation"))?;
    }

    // Trajectory monotonicity and surface adherence.
    let p = problem("morse/skew-torus.prob");
    let surface = p.surface().map_err(|e| e.to_string())?;
    let f = p.function().map_err(|e| e.to_string())?;
    let cps = morse_engine::find_critical_points(&surface, &f, p.grid, &p.labels, &tols)
        .map_err(|e| e.to_string())?;
    for start in [[3.0, 0.0, 0.1], [0.0, 3.0, 0.2], [-2.0, -1.0, 0.9]] {
        let traj = flow(&surface, &f, start, &cps, 1e4, &tols).map_err(|e| e.to_string())?;
        let mut prev = f64::INFINITY;
        for (_, x) in &traj.samples {
            let v = f.eval([x.x, x.y, x.z]).map_err(|e| e.to_string())?;
            ensure(v <= prev + 1e-12, "f must be non-increasing along flows")?;
            prev = v;
            ensure(
                surface.value(x).map_err(|e| e.to_string())?.abs() <= tols.tol_surface,
                "samples must stay on the surface",
            )?;
        }
    }

    // Determinism under thread-count variation.
    let report = |threads: usize| -> Result<String, String> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| e.to_string())?;
        pool.install(|| -> Result<String, String> {
            let run =
                morse_run("morse/skew-torus.prob", Ring::Z2, &tols).map_err(|e| e.to_string())?;
            let mut out = String::new();
            for c in &run.critical_points {
                out.push_str(&format!(
                    "{} {} {:.17e} {:.17e} {:.17e}\n",
                    c.label, c.index, c.position.x, c.position.y, c.position.z
                ));
            }
            for m in &run.moduli {
                out.push_str(&format!("{}->{} {}\n", m.source, m.target, m.n_lines));
            }
            Ok(out)
        })
    };
    let one = report(1)?;
    ensure(one == report(3)?, "results must not depend on the thread count")
}

#[test]
fn acceptance() {
    let checks: Vec<(&str, fn() -> Result<(), String>)> = vec![
        ("1 sphere critical points and homology", criterion_1_sphere),
        ("2 skew-torus counts and stability", criterion_2_skew_torus),
        ("3 symmetric-torus genericity error", criterion_3_symmetric_torus),
        ("4 Euler characteristics", criterion_4_euler),
        ("5 continuation invariance", criterion_5_continuation),
        ("6 Maslov index examples", criterion_6_maslov),
        ("7 LCH unknot", criterion_7_unknot),
        ("8 LCH trefoil", criterion_8_trefoil),
        ("9 Chekanov-pair separation", criterion_9_chekanov),
        ("10 invariance smoke suite", criterion_10_invariance),
        ("11 property suites", criterion_11_properties),
    ];
    let mut failures = 0;
    for (name, check) in checks {
        let result = std::panic::catch_unwind(check);
        match result {
            Ok(Ok(())) => println!("criterion {name}: PASS"),
            Ok(Err(msg)) => {
                failures += 1;
                println!("criterion {name}: FAIL — {msg}");
            }
            Err(_) => {
                failures += 1;
                println!("criterion {name}: FAIL — panicked");
            }
        }
    }
    assert_eq!(failures, 0, "{failures} acceptance criteria failed");
}
