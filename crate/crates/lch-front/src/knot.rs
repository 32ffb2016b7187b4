//! Smooth-knot data of a resolved diagram: checkerboard coloring, Goeritz
//! matrix, and the knot determinant |H₁| of the double branched cover.
//!
//! The determinant separates the small knot types that can share classical
//! Legendrian invariants in our fixtures: unknot 1, trefoil 3, figure-eight
//! 5, cinquefoil 5, the 5₂ knot 7.

use crate::resolve::{ResolvedDiagram, SlotRef};
use chain_core::IntMatrix;
use num_bigint::BigInt;

/// Face of the sector anticlockwise from slot `s` to slot `s+1` at a
/// crossing (s = 0: north, 1: west, 2: south, 3: east).
fn sector_face(diagram: &ResolvedDiagram, crossing: usize, s: usize) -> usize {
    let from = SlotRef { crossing, slot: s };
    let (e, fwd) = diagram.depart(from);
    diagram.side_face[e][fwd as usize]
}

/// Two-colors the faces so that neighbors across an edge differ; returns
/// one bit per face.  Four-valent planar diagrams always admit this.
pub fn checkerboard(diagram: &ResolvedDiagram) -> Vec<bool> {
    let n = diagram.faces.len();
    let mut color = vec![None; n];
    color[0] = Some(false);
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(f) = queue.pop_front() {
        let c = color[f].unwrap();
        for &(e, _) in &diagram.faces[f].sides {
            for other in [diagram.side_face[e][0], diagram.side_face[e][1]] {
                if other == f {
                    continue;
                }
                match color[other] {
                    None => {
                        color[other] = Some(!c);
                        queue.push_back(other);
                    }
                    Some(oc) => debug_assert_ne!(oc, c, "checkerboard coloring exists"),
                }
            }
        }
    }
    color.into_iter().map(|c| c.expect("connected diagram")).collect()
}

/// Knot determinant from the Goeritz matrix of the white faces (the color
/// class not containing the unbounded face).
pub fn determinant(diagram: &ResolvedDiagram) -> BigInt {
    let color = checkerboard(diagram);
    let unbounded = diagram
        .faces
        .iter()
        .position(|f| f.unbounded)
        .expect("one unbounded face");
    let white_color = !color[unbounded];
    let white: Vec<usize> = (0..diagram.faces.len())
        .filter(|&f| color[f] == white_color)
        .collect();
    let index_of = |f: usize| white.iter().position(|&w| w == f);
    let m = white.len();
    if m <= 1 {
        return BigInt::from(1);
    }
    let mut g = IntMatrix::zeros(m, m);
    for c in 0..diagram.crossings.len() {
        // The two white sectors at a crossing are an opposite pair; with the
        // overstrand always NW–SE the Goeritz type is fixed by which pair.
        let north = sector_face(diagram, c, 0);
        let west = sector_face(diagram, c, 1);
        let (u, v, eta) = if color[north] == white_color {
            let south = sector_face(diagram, c, 2);
            (north, south, 1)
        } else {
            let east = sector_face(diagram, c, 3);
            (west, east, -1)
        };
        let (i, j) = (index_of(u).unwrap(), index_of(v).unwrap());
        if i == j {
            continue;
        }
        let delta = BigInt::from(-eta);
        for (r, c, sign) in [(i, j, 1), (j, i, 1), (i, i, -1), (j, j, -1)] {
            let value = &g[(r, c)] + BigInt::from(sign) * &delta;
            g[(r, c)] = value;
        }
    }
    let minor = g.select_rows(&(1..m).collect::<Vec<_>>());
    let minor = minor.select_columns(&(1..m).collect::<Vec<_>>());
    let det = minor.determinant();
    if det < BigInt::from(0) {
        -det
    } else {
        det
    }
}
