//! Assembling the Morse chain complex: generators are critical points
//! graded by index, boundaries are rigid flow-line counts — mod 2 by
//! default, or signed over Z using the surface orientation rule (branch
//! orientation at saddles, crossing-sweep orientation at maxima).

use crate::critical::{find_critical_points, CriticalPoint};
use crate::moduli::{all_rigid_counts, ModuliCount};
use crate::surface::LevelSurface;
use crate::{MorseError, Tolerances};
use chain_core::{GradedComplex, Ring};
use fieldexpr::ScalarField;

/// Everything a Morse run produces: the classified critical points, the
/// rigid moduli counts, and the chain complex they assemble into.
#[derive(Debug, Clone)]
pub struct MorseRun {
    pub critical_points: Vec<CriticalPoint>,
    pub moduli: Vec<ModuliCount>,
    pub complex: GradedComplex,
}

impl MorseRun {
    /// Σ (−1)^i · #critical points of index i.
    pub fn euler_characteristic(&self) -> i64 {
        self.critical_points
            .iter()
            .map(|c| if c.index % 2 == 0 { 1 } else { -1 })
            .sum()
    }
}

/// Build the Morse complex of f on the surface from an already-classified
/// critical point set.
pub fn complex_from_points(
    surface: &LevelSurface,
    f: &ScalarField,
    cps: &[CriticalPoint],
    ring: Ring,
    tols: &Tolerances,
) -> Result<MorseRun, MorseError> {
    let moduli = all_rigid_counts(surface, f, cps, tols)?;
    let generators: Vec<(String, i64)> = cps
        .iter()
        .map(|c| (c.label.clone(), c.index as i64))
        .collect();
    let entries: Vec<(String, String, i64)> = moduli
        .iter()
        .filter(|m| m.n_lines > 0)
        .map(|m| {
            let coeff = match ring {
                Ring::Z2 => m.count_mod2 as i64,
                Ring::Z => m.signed_count,
            };
            (m.source.clone(), m.target.clone(), coeff)
        })
        .collect();
    let complex = GradedComplex::build(&generators, &entries, ring)?;
    let violations = complex.verify_d_squared();
    if !violations.is_empty() {
        return Err(MorseError::Unresolved {
            from: "d".into(),
            to: "d".into(),
            reason: format!("boundary does not square to zero: {violations:?}"),
        });
    }
    Ok(MorseRun {
        critical_points: cps.to_vec(),
        moduli,
        complex,
    })
}

/// Full pipeline: find critical points, count rigid lines, emit the
/// complex, and check ∂² = 0 over the requested ring.
pub fn build_morse_complex(
    surface: &LevelSurface,
    f: &ScalarField,
    grid_density: usize,
    labels: &[String],
    ring: Ring,
    tols: &Tolerances,
) -> Result<MorseRun, MorseError> {
    let cps = find_critical_points(surface, f, grid_density, labels, tols)?;
    complex_from_points(surface, f, &cps, ring, tols)
}
