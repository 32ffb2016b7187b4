//! Legendrian fronts and their Chekanov–Eliashberg invariants over Z/2.
//!
//! The pipeline: parse an event word into a [`FrontDiagram`], resolve it
//! into a 4-valent planar diagram ([`ResolvedDiagram`]), enumerate the
//! immersed polygons with one positive corner, and assemble the resulting
//! differential graded algebra (a [`dga_core::FreeDGA`]).
//!
//! Generators are the front crossings (`b1`, `b2`, …, graded by Maslov
//! potential differences) and the right cusps (`a1`, `a2`, …, grade 1).
//! Gradings live in Z when the rotation number vanishes and in Z/2|r|
//! otherwise.

mod dga;
pub mod knot;
mod disks;
mod front;
mod resolve;

pub use dga::{all_disks, build_dga, front_to_dga};
pub use disks::{disks_for_generator, Disk, SearchLimits};
pub use front::{FrontDiagram, FrontEvent, Segment, TraceStep};
pub use resolve::{Crossing, CrossingKind, Edge, Face, ResolvedDiagram, SlotRef, NE, NW, SE, SW};

use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum FrontError {
    #[error("token {token}: {message}")]
    Parse { token: usize, message: String },
    #[error("empty front")]
    Empty,
    #[error("front does not close: {open} strands remain open")]
    NotClosed { open: usize },
    #[error("front has more than one component ({traced} of {total} segments in one cycle)")]
    MultipleComponents { traced: usize, total: usize },
    #[error("Maslov potential inconsistent modulo {modulus} (mismatch {mismatch})")]
    PotentialInconsistent { modulus: u64, mismatch: i64 },
    #[error("resolved diagram fails the Euler check: V={v}, E={e}, F={f}")]
    EulerCheck { v: i64, e: i64, f: i64 },
    #[error("resolved diagram has {count} unbounded faces, expected exactly one")]
    UnboundedFaces { count: usize },
    #[error("disk search for generator {generator} exceeded its budget of {budget} steps")]
    DiskSearchBudget { generator: String, budget: usize },
    #[error("assembled differential is not valid: {details}")]
    DgaInvalid { details: String },
    #[error(transparent)]
    Dga(#[from] dga_core::DgaError),
}

/// Thurston–Bennequin number of a front: the writhe of its resolution minus
/// the number of right cusps.
pub fn thurston_bennequin(front: &FrontDiagram) -> i64 {
    let mut right_cusps = 0i64;
    let mut writhe = 0i64;
    // Orientation of each segment from the closed-curve trace.
    let mut rightward = std::collections::HashMap::new();
    for step in front.trace() {
        rightward.insert(step.segment, step.rightward);
    }
    for (e, ev) in front.events().iter().enumerate() {
        match *ev {
            FrontEvent::RightCusp(_) => right_cusps += 1,
            FrontEvent::Crossing(h) => {
                // Descending strand (the overstrand) enters at height h+1,
                // ascending at height h.
                let over_right = rightward[&Segment { gap: e, height: h + 1 }];
                let under_right = rightward[&Segment { gap: e, height: h }];
                let over = if over_right { (1.0, -1.0) } else { (-1.0, 1.0) };
                let under = if under_right { (1.0, 1.0) } else { (-1.0, -1.0) };
                let cross: f64 = over.0 * under.1 - over.1 * under.0;
                writhe += if cross > 0.0 { 1 } else { -1 };
            }
            FrontEvent::LeftCusp(_) => {}
        }
    }
    writhe - right_cusps
}
