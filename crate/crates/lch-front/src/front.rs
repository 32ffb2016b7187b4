//! Front diagram grammar, validation, and strand tracing.
//!
//! A front is a whitespace-separated event word read left to right:
//!
//! - `L` / `Lk` — left cusp.  The new strand pair is inserted at height `k`
//!   (1-based from the bottom); plain `L` inserts at the top of the stack.
//! - `R` / `Rk` — right cusp joining the strands at heights `k` and `k+1`;
//!   plain `R` closes the topmost pair.
//! - `Xk` — crossing of the strands at heights `k` and `k+1`.
//!
//! `L R` is the standard unknot; `L L X2 X2 X2 R R` is the
//! maximal-Thurston–Bennequin trefoil.  The word must describe a single
//! closed component.

use crate::FrontError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrontEvent {
    /// Left cusp inserting a strand pair at this height.
    LeftCusp(usize),
    /// Right cusp joining the strands at this height and the next.
    RightCusp(usize),
    /// Crossing of the strands at this height and the next.
    Crossing(usize),
}

/// A strand segment lives in the gap between two consecutive events.
/// Gap `g` is the vertical slice after event `g-1` and before event `g`,
/// so gap `0` and gap `events.len()` are empty for a closed front.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Segment {
    pub gap: usize,
    /// 1-based height from the bottom within the gap.
    pub height: usize,
}

/// One step of the closed-curve traversal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TraceStep {
    pub segment: Segment,
    /// True when the segment is traversed left to right.
    pub rightward: bool,
}

#[derive(Debug, Clone)]
pub struct FrontDiagram {
    events: Vec<FrontEvent>,
    /// Strand count in each gap; `counts[g]` is the count in gap `g`.
    counts: Vec<usize>,
    /// The closed curve as an oriented cyclic segment sequence.
    trace: Vec<TraceStep>,
    rotation: i64,
    /// Maslov potential per segment, indexed like `segment_index`.
    potentials: Vec<i64>,
    seg_offsets: Vec<usize>,
}

fn parse_event(token: &str, index: usize) -> Result<FrontEvent, FrontError> {
    let bad = |message: String| FrontError::Parse {
        token: index + 1,
        message,
    };
    let (head, rest) = token.split_at(1);
    let height = if rest.is_empty() {
        None
    } else {
        Some(rest.parse::<usize>().map_err(|_| {
            bad(format!("`{token}`: height suffix is not a positive integer"))
        })?)
    };
    if height == Some(0) {
        return Err(bad(format!("`{token}`: heights are 1-based")));
    }
    match head {
        "L" => Ok(FrontEvent::LeftCusp(height.unwrap_or(usize::MAX))),
        "R" => Ok(FrontEvent::RightCusp(height.unwrap_or(usize::MAX))),
        "X" => height
            .map(FrontEvent::Crossing)
            .ok_or_else(|| bad(format!("`{token}`: crossings need a height, e.g. `X2`"))),
        _ => Err(bad(format!("`{token}`: expected `L`, `R`, or `Xk`"))),
    }
}

impl FrontDiagram {
    /// Parses and validates an event word.
    pub fn parse(text: &str) -> Result<Self, FrontError> {
        let mut events = Vec::new();
        for (i, token) in text.split_whitespace().enumerate() {
            events.push(parse_event(token, i)?);
        }
        if events.is_empty() {
            return Err(FrontError::Empty);
        }
        // Resolve default heights and check strand counts.
        let mut counts = vec![0usize];
        let mut n = 0usize;
        for (i, ev) in events.iter_mut().enumerate() {
            let bad = |message: String| FrontError::Parse {
                token: i + 1,
                message,
            };
            match ev {
                FrontEvent::LeftCusp(h) => {
                    if *h == usize::MAX {
                        *h = n + 1;
                    }
                    if *h > n + 1 {
                        return Err(bad(format!(
                            "left cusp height {h} exceeds {} available positions",
                            n + 1
                        )));
                    }
                    n += 2;
                }
                FrontEvent::RightCusp(h) => {
                    if *h == usize::MAX {
                        *h = n.saturating_sub(1).max(1);
                    }
                    if n < 2 || *h + 1 > n {
                        return Err(bad(format!(
                            "right cusp at height {h} needs strands {h} and {}",
                            *h + 1
                        )));
                    }
                    n -= 2;
                }
                FrontEvent::Crossing(h) => {
                    if *h + 1 > n {
                        return Err(bad(format!(
                            "crossing at height {h} needs strands {h} and {}",
                            *h + 1
                        )));
                    }
                }
            }
            counts.push(n);
        }
        if n != 0 {
            return Err(FrontError::NotClosed { open: n });
        }
        let mut front = FrontDiagram {
            events,
            counts,
            trace: Vec::new(),
            rotation: 0,
            potentials: Vec::new(),
            seg_offsets: Vec::new(),
        };
        front.seg_offsets = {
            let mut off = Vec::with_capacity(front.counts.len() + 1);
            let mut acc = 0;
            for &c in &front.counts {
                off.push(acc);
                acc += c;
            }
            off.push(acc);
            off
        };
        front.trace = front.compute_trace()?;
        front.rotation = front.compute_rotation();
        front.potentials = front.compute_potentials()?;
        Ok(front)
    }

    pub fn events(&self) -> &[FrontEvent] {
        &self.events
    }

    /// Strand count in gap `g` (gap 0 precedes the first event).
    pub fn strand_count(&self, gap: usize) -> usize {
        self.counts[gap]
    }

    pub fn segment_count(&self) -> usize {
        *self.seg_offsets.last().unwrap()
    }

    pub fn segment_index(&self, seg: Segment) -> usize {
        debug_assert!(seg.height >= 1 && seg.height <= self.counts[seg.gap]);
        self.seg_offsets[seg.gap] + seg.height - 1
    }

    /// The oriented closed-curve traversal (one full cycle).
    pub fn trace(&self) -> &[TraceStep] {
        &self.trace
    }

    /// Rotation number of the oriented front: (down cusps − up cusps) / 2.
    pub fn rotation_number(&self) -> i64 {
        self.rotation
    }

    /// Grading modulus 2|r|; zero means Z-graded.
    pub fn grading_modulus(&self) -> u64 {
        2 * self.rotation.unsigned_abs()
    }

    /// Maslov potential of a segment, well defined modulo `grading_modulus`.
    pub fn potential(&self, seg: Segment) -> i64 {
        self.potentials[self.segment_index(seg)]
    }

    /// Neighbor of a segment across the event on its right, with a flag that
    /// is true when the curve keeps moving rightward there (false at a right
    /// cusp, where it turns around onto the returned segment).
    fn right_neighbor(&self, seg: Segment) -> (Segment, bool) {
        let ev = self.events[seg.gap];
        let g = seg.gap + 1;
        let h = seg.height;
        match ev {
            FrontEvent::LeftCusp(c) => {
                let nh = if h >= c { h + 2 } else { h };
                (Segment { gap: g, height: nh }, true)
            }
            FrontEvent::RightCusp(c) => {
                if h == c {
                    (Segment { gap: seg.gap, height: c + 1 }, false)
                } else if h == c + 1 {
                    (Segment { gap: seg.gap, height: c }, false)
                } else {
                    let nh = if h > c + 1 { h - 2 } else { h };
                    (Segment { gap: g, height: nh }, true)
                }
            }
            FrontEvent::Crossing(c) => {
                let nh = if h == c {
                    c + 1
                } else if h == c + 1 {
                    c
                } else {
                    h
                };
                (Segment { gap: g, height: nh }, true)
            }
        }
    }

    /// Neighbor across the event on a segment's left; flag is true when the
    /// curve keeps moving leftward (false at a left cusp turnaround).
    fn left_neighbor(&self, seg: Segment) -> (Segment, bool) {
        let ev = self.events[seg.gap - 1];
        let g = seg.gap - 1;
        let h = seg.height;
        match ev {
            FrontEvent::LeftCusp(c) => {
                if h == c {
                    (Segment { gap: seg.gap, height: c + 1 }, false)
                } else if h == c + 1 {
                    (Segment { gap: seg.gap, height: c }, false)
                } else {
                    let nh = if h > c + 1 { h - 2 } else { h };
                    (Segment { gap: g, height: nh }, true)
                }
            }
            FrontEvent::RightCusp(c) => {
                let nh = if h >= c { h + 2 } else { h };
                (Segment { gap: g, height: nh }, true)
            }
            FrontEvent::Crossing(c) => {
                let nh = if h == c {
                    c + 1
                } else if h == c + 1 {
                    c
                } else {
                    h
                };
                (Segment { gap: g, height: nh }, true)
            }
        }
    }

    fn compute_trace(&self) -> Result<Vec<TraceStep>, FrontError> {
        let total = self.segment_count();
        if total == 0 {
            return Err(FrontError::Empty);
        }
        // Start on the first segment of the first nonempty gap, rightward.
        let start_gap = (0..self.counts.len())
            .find(|&g| self.counts[g] > 0)
            .expect("nonempty front has a populated gap");
        let start = TraceStep {
            segment: Segment { gap: start_gap, height: 1 },
            rightward: true,
        };
        let mut trace = vec![start];
        let mut cur = start;
        loop {
            let (next_seg, same_dir) = if cur.rightward {
                self.right_neighbor(cur.segment)
            } else {
                self.left_neighbor(cur.segment)
            };
            let next = TraceStep {
                segment: next_seg,
                rightward: if same_dir { cur.rightward } else { !cur.rightward },
            };
            if next == start {
                break;
            }
            trace.push(next);
            cur = next;
            if trace.len() > 2 * total {
                unreachable!("trace exceeds twice the segment count");
            }
        }
        if trace.len() != total {
            return Err(FrontError::MultipleComponents {
                traced: trace.len(),
                total,
            });
        }
        Ok(trace)
    }

    /// Counts up and down cusps along the oriented traversal.
    fn compute_rotation(&self) -> i64 {
        let mut down = 0i64;
        let mut up = 0i64;
        let n = self.trace.len();
        for i in 0..n {
            let cur = self.trace[i];
            let next = self.trace[(i + 1) % n];
            // A cusp passage flips the traversal direction.
            if cur.rightward != next.rightward {
                if next.segment.height > cur.segment.height {
                    up += 1;
                } else {
                    down += 1;
                }
            }
        }
        debug_assert_eq!((down + up) % 2, 0);
        (down - up) / 2
    }

    /// Assigns an integer Maslov potential to every segment.  At each cusp
    /// the upper branch carries potential one more than the lower branch;
    /// the assignment is consistent modulo 2|r| (exactly when r = 0).
    fn compute_potentials(&self) -> Result<Vec<i64>, FrontError> {
        let total = self.segment_count();
        let modulus = self.grading_modulus() as i64;
        let mut pot = vec![i64::MIN; total];
        let n = self.trace.len();
        pot[self.segment_index(self.trace[0].segment)] = 0;
        let mut prev = 0i64;
        for i in 1..=n {
            let cur = self.trace[i % n];
            let before = self.trace[i - 1];
            let delta = if cur.rightward != before.rightward {
                if cur.segment.height > before.segment.height {
                    1
                } else {
                    -1
                }
            } else {
                0
            };
            let value = prev + delta;
            let idx = self.segment_index(cur.segment);
            if pot[idx] == i64::MIN {
                pot[idx] = value;
            } else {
                let diff = pot[idx] - value;
                let consistent = if modulus == 0 {
                    diff == 0
                } else {
                    diff.rem_euclid(modulus) == 0
                };
                if !consistent {
                    return Err(FrontError::PotentialInconsistent {
                        modulus: modulus as u64,
                        mismatch: diff,
                    });
                }
            }
            prev = if pot[idx] == i64::MIN { value } else { pot[idx] };
        }
        debug_assert!(pot.iter().all(|&p| p != i64::MIN));
        Ok(pot)
    }

    /// Grade of the front crossing at event `e` (which must be a crossing):
    /// potential of the descending (lesser-slope) strand minus the ascending
    /// one, reduced modulo the grading modulus.
    pub fn crossing_grade(&self, event: usize) -> i64 {
        let FrontEvent::Crossing(h) = self.events[event] else {
            panic!("event {event} is not a crossing");
        };
        // Left of the crossing: the strand at height h+1 descends through it.
        let upper = self.potential(Segment { gap: event, height: h + 1 });
        let lower = self.potential(Segment { gap: event, height: h });
        let raw = upper - lower;
        let m = self.grading_modulus() as i64;
        if m == 0 {
            raw
        } else {
            raw.rem_euclid(m)
        }
    }
}
