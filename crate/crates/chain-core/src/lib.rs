//! Exact homological algebra for the rest of the workspace: graded chain
//! complexes over Z/2 and Z, boundary verification, homology (betti numbers
//! and torsion via Smith normal form), chain maps, and induced maps on
//! homology.
//!
//! Everything is immutable after construction and safe to share across
//! threads; all operations are pure functions.  Integer work uses
//! arbitrary-precision entries because Smith-normal-form pivots overflow
//! fixed-width types even on small inputs.

pub mod chain_map;
pub mod complex;
pub mod matrix;
pub mod serial;
pub mod snf;
pub mod z2;

pub use chain_map::{ChainMap, ChainMapViolation};
pub use complex::{ComplexError, DSquaredViolation, GradedComplex, Generator, HomologyRank, Ring};
pub use matrix::IntMatrix;
pub use serial::{complex_from_text, complex_to_text, SerialError};
pub use snf::{smith_normal_form, SmithDecomposition};
pub use z2::Z2Matrix;
