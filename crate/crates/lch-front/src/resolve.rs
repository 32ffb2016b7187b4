//! Resolution of a front into a 4-valent planar diagram.
//!
//! Every front crossing stays a crossing; every right cusp becomes a small
//! loop with one new crossing.  Each crossing has four half-edge slots in
//! anticlockwise order NE, NW, SW, SE.  The overstrand (the sheet with the
//! larger z-coordinate after resolving) always runs NW–SE: at a front
//! crossing that is the strand of lesser slope, and at a cusp loop it is the
//! upper cusp branch.  Edges carry polyline geometry so that disk boundaries
//! have a computable turning number and the diagram can be plotted.

use crate::front::{FrontDiagram, FrontEvent, Segment};
use crate::FrontError;

pub const NE: usize = 0;
pub const NW: usize = 1;
pub const SW: usize = 2;
pub const SE: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SlotRef {
    pub crossing: usize,
    pub slot: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrossingKind {
    /// A crossing of the front itself.
    Front { event: usize, height: usize },
    /// The loop crossing created by resolving a right cusp.
    CuspLoop { event: usize, height: usize },
}

#[derive(Debug, Clone)]
pub struct Crossing {
    pub kind: CrossingKind,
    pub label: String,
    pub grade: i64,
    /// Center of the crossing in diagram coordinates.
    pub pos: (f64, f64),
}

#[derive(Debug, Clone)]
pub struct Edge {
    pub a: SlotRef,
    pub b: SlotRef,
    /// Polyline from the point of `a` to the point of `b`.
    pub path: Vec<(f64, f64)>,
}

#[derive(Debug, Clone)]
pub struct Face {
    /// Directed edge ids (edge, forward) traversed with the face on the left.
    pub sides: Vec<(usize, bool)>,
    /// Crossing indices at the corners, aligned with `sides`.
    pub corners: Vec<usize>,
    pub unbounded: bool,
}

#[derive(Debug, Clone)]
pub struct ResolvedDiagram {
    pub crossings: Vec<Crossing>,
    pub edges: Vec<Edge>,
    /// Edge id attached at each slot of each crossing.
    pub slot_edge: Vec<[usize; 4]>,
    pub faces: Vec<Face>,
    /// `side_face[e][d]` is the face with the directed edge `(e, d == 1)` on
    /// its boundary, i.e. the face to the left of that traversal.
    pub side_face: Vec<[usize; 2]>,
    grading_modulus: u64,
}

/// Signed exterior-angle sum of a closed polyline, in turns.
pub(crate) fn turning_number(points: &[(f64, f64)]) -> i64 {
    let mut pts: Vec<(f64, f64)> = Vec::with_capacity(points.len());
    for &p in points {
        if pts
            .last()
            .is_none_or(|q: &(f64, f64)| (q.0 - p.0).abs() + (q.1 - p.1).abs() > 1e-9)
        {
            pts.push(p);
        }
    }
    while pts.len() > 1
        && (pts[0].0 - pts[pts.len() - 1].0).abs() + (pts[0].1 - pts[pts.len() - 1].1).abs() < 1e-9
    {
        pts.pop();
    }
    let n = pts.len();
    if n < 3 {
        return 0;
    }
    let mut total = 0.0f64;
    for i in 0..n {
        let p = pts[i];
        let q = pts[(i + 1) % n];
        let r = pts[(i + 2) % n];
        let u = (q.0 - p.0, q.1 - p.1);
        let v = (r.0 - q.0, r.1 - q.1);
        let cross = u.0 * v.1 - u.1 * v.0;
        let dot = u.0 * v.0 + u.1 * v.1;
        total += cross.atan2(dot);
    }
    (total / std::f64::consts::TAU).round() as i64
}

fn slot_point(center: (f64, f64), slot: usize) -> (f64, f64) {
    let (x, y) = center;
    match slot {
        NE => (x + 0.25, y + 0.5),
        NW => (x - 0.25, y + 0.5),
        SW => (x - 0.25, y - 0.5),
        SE => (x + 0.25, y - 0.5),
        _ => unreachable!("slot out of range"),
    }
}

struct Builder<'a> {
    front: &'a FrontDiagram,
    crossings: Vec<Crossing>,
    /// Crossing index per event, for events that produce one.
    event_crossing: Vec<Option<usize>>,
}

impl<'a> Builder<'a> {
    fn new(front: &'a FrontDiagram) -> Self {
        let mut crossings = Vec::new();
        let mut event_crossing = vec![None; front.events().len()];
        let mut n_cross = 0usize;
        let mut n_cusp = 0usize;
        for (e, ev) in front.events().iter().enumerate() {
            match *ev {
                FrontEvent::Crossing(h) => {
                    n_cross += 1;
                    event_crossing[e] = Some(crossings.len());
                    crossings.push(Crossing {
                        kind: CrossingKind::Front { event: e, height: h },
                        label: format!("b{n_cross}"),
                        grade: front.crossing_grade(e),
                        pos: (e as f64 + 1.0, h as f64 + 0.5),
                    });
                }
                FrontEvent::RightCusp(h) => {
                    n_cusp += 1;
                    event_crossing[e] = Some(crossings.len());
                    crossings.push(Crossing {
                        kind: CrossingKind::CuspLoop { event: e, height: h },
                        label: format!("a{n_cusp}"),
                        grade: 1,
                        pos: (e as f64 + 1.0, h as f64 + 0.5),
                    });
                }
                FrontEvent::LeftCusp(_) => {}
            }
        }
        Builder {
            front,
            crossings,
            event_crossing,
        }
    }

    /// Walks from a west or east slot along the front until the next slot,
    /// accumulating the polyline.  `rightward` is the initial travel
    /// direction away from the crossing.
    fn walk(&self, start: SlotRef, mut seg: Segment, mut rightward: bool) -> (SlotRef, Vec<(f64, f64)>) {
        let mut path = vec![slot_point(self.crossings[start.crossing].pos, start.slot)];
        loop {
            let (g, h) = (seg.gap, seg.height);
            let (left_pt, right_pt) = ((g as f64 + 0.25, h as f64), (g as f64 + 0.75, h as f64));
            if rightward {
                path.push(left_pt);
                path.push(right_pt);
                let ev = self.front.events()[g];
                match ev {
                    FrontEvent::Crossing(c) | FrontEvent::RightCusp(c)
                        if h == c || h == c + 1 =>
                    {
                        let crossing = self.event_crossing[g].unwrap();
                        let slot = if h == c { SW } else { NW };
                        path.push(slot_point(self.crossings[crossing].pos, slot));
                        return (SlotRef { crossing, slot }, path);
                    }
                    _ => {
                        let (next, same) = self.front_right(seg);
                        debug_assert!(same, "turnarounds never reach this arm");
                        seg = next;
                    }
                }
            } else {
                path.push(right_pt);
                path.push(left_pt);
                let ev = self.front.events()[g - 1];
                match ev {
                    FrontEvent::Crossing(c) if h == c || h == c + 1 => {
                        let crossing = self.event_crossing[g - 1].unwrap();
                        let slot = if h == c { SE } else { NE };
                        path.push(slot_point(self.crossings[crossing].pos, slot));
                        return (SlotRef { crossing, slot }, path);
                    }
                    FrontEvent::LeftCusp(c) if h == c || h == c + 1 => {
                        // Smooth turnaround at the cusp tip.
                        path.push((g as f64, c as f64 + 0.5));
                        seg = Segment {
                            gap: g,
                            height: if h == c { c + 1 } else { c },
                        };
                        rightward = true;
                    }
                    _ => {
                        let (next, same) = self.front_left(seg);
                        debug_assert!(same);
                        seg = next;
                    }
                }
            }
        }
    }

    fn front_right(&self, seg: Segment) -> (Segment, bool) {
        // Re-derive the pass-through height shift for non-participating strands.
        let g = seg.gap;
        let h = seg.height;
        match self.front.events()[g] {
            FrontEvent::LeftCusp(c) => (
                Segment { gap: g + 1, height: if h >= c { h + 2 } else { h } },
                true,
            ),
            FrontEvent::RightCusp(c) => {
                debug_assert!(h != c && h != c + 1);
                (
                    Segment { gap: g + 1, height: if h > c + 1 { h - 2 } else { h } },
                    true,
                )
            }
            FrontEvent::Crossing(c) => {
                debug_assert!(h != c && h != c + 1);
                (Segment { gap: g + 1, height: h }, true)
            }
        }
    }

    fn front_left(&self, seg: Segment) -> (Segment, bool) {
        let g = seg.gap;
        let h = seg.height;
        match self.front.events()[g - 1] {
            FrontEvent::LeftCusp(c) => {
                debug_assert!(h != c && h != c + 1);
                (
                    Segment { gap: g - 1, height: if h > c + 1 { h - 2 } else { h } },
                    true,
                )
            }
            FrontEvent::RightCusp(c) => (
                Segment { gap: g - 1, height: if h >= c { h + 2 } else { h } },
                true,
            ),
            FrontEvent::Crossing(c) => {
                debug_assert!(h != c && h != c + 1);
                (Segment { gap: g - 1, height: h }, true)
            }
        }
    }

    /// Initial walk state for a west slot of a crossing.
    fn west_seed(&self, c: usize, slot: usize) -> (Segment, bool) {
        let (event, height) = match self.crossings[c].kind {
            CrossingKind::Front { event, height } | CrossingKind::CuspLoop { event, height } => {
                (event, height)
            }
        };
        let h = if slot == SW { height } else { height + 1 };
        (Segment { gap: event, height: h }, false)
    }

    /// Initial walk state for an east slot of a front crossing.
    fn east_seed(&self, c: usize, slot: usize) -> (Segment, bool) {
        let CrossingKind::Front { event, height } = self.crossings[c].kind else {
            unreachable!("cusp loops have no east walk seeds");
        };
        let h = if slot == SE { height } else { height + 1 };
        (Segment { gap: event + 1, height: h }, true)
    }

    fn build(self) -> ResolvedDiagram {
        let n = self.crossings.len();
        let mut slot_edge = vec![[usize::MAX; 4]; n];
        let mut edges: Vec<Edge> = Vec::new();
        for c in 0..n {
            for slot in 0..4 {
                if slot_edge[c][slot] != usize::MAX {
                    continue;
                }
                let start = SlotRef { crossing: c, slot };
                let (end, path) = match (self.crossings[c].kind, slot) {
                    (CrossingKind::CuspLoop { .. }, NE) | (CrossingKind::CuspLoop { .. }, SE) => {
                        // The cap: a small anticlockwise arc from SE up to NE.
                        let (x, y) = self.crossings[c].pos;
                        let start = SlotRef { crossing: c, slot: SE };
                        let path = vec![
                            slot_point((x, y), SE),
                            (x + 0.55, y - 0.4),
                            (x + 0.7, y),
                            (x + 0.55, y + 0.4),
                            slot_point((x, y), NE),
                        ];
                        let end = SlotRef { crossing: c, slot: NE };
                        let id = edges.len();
                        edges.push(Edge { a: start, b: end, path });
                        slot_edge[c][SE] = id;
                        slot_edge[c][NE] = id;
                        continue;
                    }
                    (CrossingKind::Front { .. }, NE) | (CrossingKind::Front { .. }, SE) => {
                        let (seg, dir) = self.east_seed(c, slot);
                        self.walk(start, seg, dir)
                    }
                    (_, NW) | (_, SW) => {
                        let (seg, dir) = self.west_seed(c, slot);
                        self.walk(start, seg, dir)
                    }
                    _ => unreachable!(),
                };
                let id = edges.len();
                slot_edge[start.crossing][start.slot] = id;
                slot_edge[end.crossing][end.slot] = id;
                edges.push(Edge { a: start, b: end, path });
            }
        }
        debug_assert_eq!(edges.len(), 2 * n);
        let faces = compute_faces(&edges, &slot_edge);
        let mut side_face = vec![[usize::MAX; 2]; edges.len()];
        for (f, face) in faces.iter().enumerate() {
            for &(e, fwd) in &face.sides {
                side_face[e][fwd as usize] = f;
            }
        }
        debug_assert!(side_face.iter().flatten().all(|&f| f != usize::MAX));
        ResolvedDiagram {
            crossings: self.crossings,
            edges,
            slot_edge,
            faces,
            side_face,
            grading_modulus: self.front.grading_modulus(),
        }
    }
}

/// Faces are the orbits of the always-turn-clockwise-at-a-crossing walk,
/// which keeps the face on the left of each directed edge.
fn compute_faces(edges: &[Edge], slot_edge: &[[usize; 4]]) -> Vec<Face> {
    let mut seen = vec![[false; 2]; edges.len()];
    let mut faces = Vec::new();
    for e0 in 0..edges.len() {
        for fwd0 in [true, false] {
            if seen[e0][fwd0 as usize] {
                continue;
            }
            let mut sides = Vec::new();
            let mut corners = Vec::new();
            let mut boundary: Vec<(f64, f64)> = Vec::new();
            let (mut e, mut fwd) = (e0, fwd0);
            loop {
                if seen[e][fwd as usize] {
                    break;
                }
                seen[e][fwd as usize] = true;
                sides.push((e, fwd));
                if fwd {
                    boundary.extend(edges[e].path.iter().copied());
                } else {
                    boundary.extend(edges[e].path.iter().rev().copied());
                }
                let arrive = if fwd { edges[e].b } else { edges[e].a };
                corners.push(arrive.crossing);
                let out = SlotRef {
                    crossing: arrive.crossing,
                    slot: (arrive.slot + 3) % 4,
                };
                let ne = slot_edge[out.crossing][out.slot];
                (e, fwd) = (ne, edges[ne].a == out);
                if (e, fwd) == (e0, fwd0) {
                    break;
                }
            }
            let unbounded = turning_number(&boundary) < 0;
            faces.push(Face {
                sides,
                corners,
                unbounded,
            });
        }
    }
    faces
}

impl ResolvedDiagram {
    pub fn build(front: &FrontDiagram) -> Result<Self, FrontError> {
        let diagram = Builder::new(front).build();
        let v = diagram.crossings.len() as i64;
        let e = diagram.edges.len() as i64;
        let f = diagram.faces.len() as i64;
        if v - e + f != 2 {
            return Err(FrontError::EulerCheck { v, e, f });
        }
        let unbounded = diagram.faces.iter().filter(|f| f.unbounded).count();
        if unbounded != 1 {
            return Err(FrontError::UnboundedFaces { count: unbounded });
        }
        Ok(diagram)
    }

    pub fn grading_modulus(&self) -> u64 {
        self.grading_modulus
    }

    /// The edge attached at a slot, directed away from that slot.
    pub fn depart(&self, from: SlotRef) -> (usize, bool) {
        let e = self.slot_edge[from.crossing][from.slot];
        (e, self.edges[e].a == from)
    }

    /// Arrival slot of a directed edge.
    pub fn arrive(&self, edge: usize, forward: bool) -> SlotRef {
        if forward {
            self.edges[edge].b
        } else {
            self.edges[edge].a
        }
    }

    /// Winding number of a closed boundary walk around each face, from the
    /// net traversal count of every edge (`net[e]` = forward minus backward).
    /// Crossing edge `e` from its right to its left raises the winding by
    /// `net[e]`; the unbounded face has winding zero.
    pub fn face_windings(&self, net: &[i64]) -> Vec<i64> {
        let unbounded = self
            .faces
            .iter()
            .position(|f| f.unbounded)
            .expect("validated diagrams have an unbounded face");
        let mut winding = vec![i64::MIN; self.faces.len()];
        winding[unbounded] = 0;
        let mut queue = std::collections::VecDeque::from([unbounded]);
        while let Some(f) = queue.pop_front() {
            for &(e, fwd) in &self.faces[f].sides {
                // `f` is on the left of (e, fwd); the face on the other
                // side differs in winding by net[e] relative to forward.
                let other = self.side_face[e][!fwd as usize];
                let value = if fwd {
                    winding[f] - net[e]
                } else {
                    winding[f] + net[e]
                };
                if winding[other] == i64::MIN {
                    winding[other] = value;
                    queue.push_back(other);
                } else {
                    debug_assert_eq!(winding[other], value, "winding is well defined");
                }
            }
        }
        debug_assert!(winding.iter().all(|&w| w != i64::MIN));
        winding
    }
}
