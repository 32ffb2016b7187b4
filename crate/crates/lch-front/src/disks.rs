//! Enumeration of the immersed polygons that contribute to the differential.
//!
//! A contributing disk is traversed anticlockwise (disk on the left).  Its
//! boundary follows diagram edges; at a crossing it either passes straight
//! through or makes a convex corner by leaving through the slot immediately
//! clockwise of the arrival slot.  Every corner occupies one quadrant; a
//! corner is positive when the boundary steps from the understrand to the
//! overstrand (arrival slots NE/SW) and negative in the opposite case
//! (arrival slots NW/SE).  A disk has exactly one positive corner — at the
//! generator whose differential it feeds — and closes with turning number
//! one.  The search is a depth-first walk with a step budget and a cap on
//! edge multiplicity.

use crate::resolve::{turning_number, ResolvedDiagram, SlotRef, NE, NW, SE, SW};
use crate::FrontError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Disk {
    /// Negative corners in anticlockwise order from the positive corner.
    pub word: Vec<usize>,
    /// Directed boundary (edge, forward) starting just after the positive corner.
    pub boundary: Vec<(usize, bool)>,
}

#[derive(Debug, Clone, Copy)]
pub struct SearchLimits {
    /// Upper bound on DFS steps per generator.
    pub step_budget: usize,
    /// How often one edge may appear in a single boundary, counting both
    /// directions.  Disks of resolved fronts sweep an interval in every
    /// vertical slice, so their boundaries are embedded and one is enough.
    pub max_edge_multiplicity: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            step_budget: 1_000_000,
            max_edge_multiplicity: 1,
        }
    }
}

struct Search<'a> {
    diagram: &'a ResolvedDiagram,
    generator: usize,
    close_slot: usize,
    limits: SearchLimits,
    steps: usize,
    usage: Vec<usize>,
    signed_usage: Vec<i64>,
    word: Vec<usize>,
    boundary: Vec<(usize, bool)>,
    found: Vec<Disk>,
}

impl<'a> Search<'a> {
    fn boundary_points(&self) -> Vec<(f64, f64)> {
        let mut pts = Vec::new();
        for &(e, fwd) in &self.boundary {
            let path = &self.diagram.edges[e].path;
            if fwd {
                pts.extend(path.iter().copied());
            } else {
                pts.extend(path.iter().rev().copied());
            }
        }
        pts
    }

    /// A closed walk bounds a disk when its turning number is one and it
    /// winds non-negatively around every face (and so zero around the
    /// unbounded one).
    fn closes_a_disk(&self) -> bool {
        if turning_number(&self.boundary_points()) != 1 {
            return false;
        }
        self.diagram
            .face_windings(&self.signed_usage)
            .iter()
            .all(|&w| w >= 0)
    }

    fn extend(&mut self, edge: usize, forward: bool) -> Result<(), FrontError> {
        self.steps += 1;
        if self.steps > self.limits.step_budget {
            return Err(FrontError::DiskSearchBudget {
                generator: self.diagram.crossings[self.generator].label.clone(),
                budget: self.limits.step_budget,
            });
        }
        if self.usage[edge] >= self.limits.max_edge_multiplicity {
            return Ok(());
        }
        self.usage[edge] += 1;
        self.signed_usage[edge] += if forward { 1 } else { -1 };
        self.boundary.push((edge, forward));
        let at = self.diagram.arrive(edge, forward);
        if at.crossing == self.generator && at.slot == self.close_slot && self.closes_a_disk() {
            // Closing here makes this arrival the positive corner.
            self.found.push(Disk {
                word: self.word.clone(),
                boundary: self.boundary.clone(),
            });
        }
        if at.slot == NW || at.slot == SE {
            // Negative corner: leave through the clockwise-adjacent slot.
            let out = SlotRef {
                crossing: at.crossing,
                slot: (at.slot + 3) % 4,
            };
            self.word.push(at.crossing);
            let (ne, nf) = self.diagram.depart(out);
            self.extend(ne, nf)?;
            self.word.pop();
        }
        // Straight through, on any arrival.
        let out = SlotRef {
            crossing: at.crossing,
            slot: (at.slot + 2) % 4,
        };
        let (ne, nf) = self.diagram.depart(out);
        self.extend(ne, nf)?;
        self.boundary.pop();
        self.usage[edge] -= 1;
        self.signed_usage[edge] -= if forward { 1 } else { -1 };
        Ok(())
    }
}

/// All disks whose unique positive corner sits at `generator`, in a
/// deterministic order (east quadrant first, then west; depth-first within
/// each).  The word of each disk lists its negative corners anticlockwise.
pub fn disks_for_generator(
    diagram: &ResolvedDiagram,
    generator: usize,
    limits: SearchLimits,
) -> Result<Vec<Disk>, FrontError> {
    let mut out = Vec::new();
    // Positive corners: (arrive NE, depart SE) spans the east quadrant and
    // (arrive SW, depart NW) the west quadrant.
    for (depart, close) in [(SE, NE), (NW, SW)] {
        let mut search = Search {
            diagram,
            generator,
            close_slot: close,
            limits,
            steps: 0,
            usage: vec![0; diagram.edges.len()],
            signed_usage: vec![0; diagram.edges.len()],
            word: Vec::new(),
            boundary: Vec::new(),
            found: Vec::new(),
        };
        let (e, f) = diagram.depart(SlotRef {
            crossing: generator,
            slot: depart,
        });
        search.extend(e, f)?;
        out.extend(search.found);
    }
    Ok(out)
}
