//! Hand-checked differentials for the standard unknot and the
//! maximal-Thurston–Bennequin trefoil.

use dga_core::serial::dga_to_text;
use lch_front::{front_to_dga, knot, thurston_bennequin, FrontDiagram, ResolvedDiagram,
    SearchLimits};

#[test]
fn unknot_classical_invariants() {
    let front = FrontDiagram::parse("L R").unwrap();
    assert_eq!(front.rotation_number(), 0);
    assert_eq!(front.grading_modulus(), 0);
    assert_eq!(thurston_bennequin(&front), -1);
}

#[test]
fn unknot_dga() {
    let dga = front_to_dga("L R", SearchLimits::default()).unwrap();
    assert_eq!(dga.labels(), &["a1".to_string()]);
    assert_eq!(dga.grade(0), 1);
    // The loop disk and the body disk both contribute 1; they cancel mod 2.
    assert!(dga.generator_differential(0).is_zero());
    assert_eq!(dga.augmentations().len(), 1);
}

#[test]
fn trefoil_classical_invariants() {
    let front = FrontDiagram::parse("L L X2 X2 X2 R R").unwrap();
    assert_eq!(front.rotation_number(), 0);
    assert_eq!(thurston_bennequin(&front), 1);
}

#[test]
fn trefoil_dga() {
    let dga = front_to_dga("L L X2 X2 X2 R R", SearchLimits::default()).unwrap();
    let text = dga_to_text(&dga);
    assert_eq!(
        text,
        "dga\nmodulus 0\ngenerator b1 0\ngenerator b2 0\ngenerator b3 0\n\
         generator a1 1\ngenerator a2 1\n\
         diff a1 1 + b1 + b3 + b1.b2.b3\n\
         diff a2 1 + b1 + b3 + b3.b2.b1\nend\n"
    );
    assert_eq!(dga.augmentations().len(), 5);
}

#[test]
fn knot_determinants() {
    for (word, det) in [("L R", 1), ("L L X2 X2 X2 R R", 3), ("L L2 R3 R", 1)] {
        let front = FrontDiagram::parse(word).unwrap();
        let diagram = ResolvedDiagram::build(&front).unwrap();
        assert_eq!(knot::determinant(&diagram), det.into(), "{word}");
    }
}

#[test]
fn bad_fronts_are_rejected() {
    // Two disjoint unknots.
    assert!(matches!(
        FrontDiagram::parse("L R L R"),
        Err(lch_front::FrontError::MultipleComponents { .. })
    ));
    // Unbalanced cusps.
    assert!(matches!(
        FrontDiagram::parse("L L R"),
        Err(lch_front::FrontError::NotClosed { open: 2 })
    ));
    // Crossing out of range.
    assert!(FrontDiagram::parse("L X2 R").is_err());
}

#[test]
fn stabilized_unknot_has_mod_two_grading() {
    // A zigzag stabilization makes |r| = 1, so grades live in Z/2.
    // Stabilize the unknot's upper strand: a new cusp pair at heights 2–3
    // and a right cusp joining the new upper branch to the old one.
    let front = FrontDiagram::parse("L L2 R3 R").unwrap();
    assert_eq!(front.rotation_number().abs(), 1);
    assert_eq!(front.grading_modulus(), 2);
    assert_eq!(thurston_bennequin(&front), -2);
}
