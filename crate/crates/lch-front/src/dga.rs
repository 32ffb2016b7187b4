//! From a resolved diagram to its differential graded algebra.

use crate::disks::{disks_for_generator, Disk, SearchLimits};
use crate::front::FrontDiagram;
use crate::resolve::ResolvedDiagram;
use crate::FrontError;
use dga_core::{AlgebraElement, FreeDGA};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Differentials for every generator, computed independently per generator
/// and merged in generator order, so the result does not depend on the
/// thread count.
pub fn all_disks(
    diagram: &ResolvedDiagram,
    limits: SearchLimits,
) -> Result<Vec<Vec<Disk>>, FrontError> {
    let indices: Vec<usize> = (0..diagram.crossings.len()).collect();
    #[cfg(feature = "parallel")]
    let iter = indices.par_iter();
    #[cfg(not(feature = "parallel"))]
    let iter = indices.iter();
    iter.map(|&g| disks_for_generator(diagram, g, limits))
        .collect()
}

/// Builds the DGA of a resolved diagram: generators are its crossings, the
/// differential of each is the mod-2 sum of the negative-corner words of its
/// disks.
pub fn build_dga(diagram: &ResolvedDiagram, limits: SearchLimits) -> Result<FreeDGA, FrontError> {
    let generators: Vec<(String, i64)> = diagram
        .crossings
        .iter()
        .map(|c| (c.label.clone(), c.grade))
        .collect();
    let disks = all_disks(diagram, limits)?;
    let mut diffs = Vec::new();
    for (g, disks) in disks.iter().enumerate() {
        let element = AlgebraElement::from_words(disks.iter().map(|d| d.word.clone()));
        if !element.is_zero() {
            diffs.push((diagram.crossings[g].label.clone(), element));
        }
    }
    let dga = FreeDGA::build(&generators, diagram.grading_modulus(), &diffs)?;
    let violations = dga.verify();
    if !violations.is_empty() {
        return Err(FrontError::DgaInvalid {
            details: violations
                .iter()
                .map(|v| format!("{v:?}"))
                .collect::<Vec<_>>()
                .join("; "),
        });
    }
    Ok(dga)
}

/// One-call pipeline: parse, resolve, enumerate, assemble, verify.
pub fn front_to_dga(text: &str, limits: SearchLimits) -> Result<FreeDGA, FrontError> {
    let front = FrontDiagram::parse(text)?;
    let diagram = ResolvedDiagram::build(&front)?;
    build_dga(&diagram, limits)
}
