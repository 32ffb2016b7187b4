//! Print a full invariant report for a front given as an event word:
//!
//! ```text
//! cargo run -p lch-front --example report -- "L L X2 X2 X2 R R"
//! ```

use dga_core::{
    format_polynomial, normalized_augmentation_count, poincare_polynomial, serial::dga_to_text,
};
use lch_front::{front_to_dga, knot, thurston_bennequin, FrontDiagram, ResolvedDiagram,
    SearchLimits};

fn main() {
    let word = std::env::args().nth(1).expect("usage: report \"L L X2 ... R R\"");
    let front = FrontDiagram::parse(&word).expect("invalid front");
    println!(
        "rotation {}  tb {}",
        front.rotation_number(),
        thurston_bennequin(&front)
    );
    let diagram = ResolvedDiagram::build(&front).expect("resolution failed");
    println!("determinant {}", knot::determinant(&diagram));
    let dga = front_to_dga(&word, SearchLimits::default()).expect("dga construction failed");
    print!("{}", dga_to_text(&dga));
    let (count, k) = normalized_augmentation_count(&dga);
    println!("augmentations {count} (normalization exponent {k})");
    for a in dga.augmentations() {
        match dga.linearized_complex(&a) {
            Ok(complex) => println!(
                "  {:?} -> {}",
                a.values(),
                format_polynomial(&poincare_polynomial(&complex).unwrap())
            ),
            Err(e) => println!("  {:?} -> not linearizable: {e}", a.values()),
        }
    }
}
