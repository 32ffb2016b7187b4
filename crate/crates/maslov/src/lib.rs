//! Winding (Maslov) indices for paths of Lagrangian lines in C ≅ R².
//!
//! A Lagrangian line in C is determined by its angle θ ∈ [0, π) — a line and
//! its negative are the same subspace, so angles live mod π.  The index of a
//! closed loop is the winding number of the lifted angle divided by π, with
//! the convention that an anticlockwise rotation through π counts +1.
//!
//! Sampling must be fine enough that consecutive jumps (taken mod π) stay
//! strictly below π/2; otherwise the lift is ambiguous and the path is
//! rejected.  Only lines in C are handled (n = 1): that is all the surface
//! orientations and knot-diagram gradings downstream need.

use std::f64::consts::PI;
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum MaslovError {
    #[error("angular jump of {jump:.6} rad (mod π) between samples {index} and {} is not below π/2; sample the path more finely", index + 1)]
    SamplingTooCoarse { index: usize, jump: f64 },
    #[error("maslov_index requires a closed loop; call close_path first")]
    NotClosed,
    #[error("endpoint lines are not transverse (angles agree mod π)")]
    EndpointsNotTransverse,
    #[error("a path needs at least one sample")]
    Empty,
}

/// A sampled path of Lagrangian lines, each given by its angle in [0, π).
#[derive(Clone, Debug, PartialEq)]
pub struct LagrangianLinePath {
    samples: Vec<f64>,
    closed: bool,
}

/// Wrap an angle into [0, π).
fn wrap_line(theta: f64) -> f64 {
    let t = theta.rem_euclid(PI);
    if t >= PI {
        0.0
    } else {
        t
    }
}

/// Angular jump between consecutive line samples, wrapped into (−π/2, π/2].
/// Returns `None` when the jump is not unambiguously liftable (|d| ≥ π/2
/// after wrapping, which only happens at exactly π/2).
fn lift_jump(from: f64, to: f64) -> Option<f64> {
    let mut d = (to - from).rem_euclid(PI);
    if d > PI / 2.0 {
        d -= PI;
    }
    if d.abs() >= PI / 2.0 {
        None
    } else {
        Some(d)
    }
}

impl LagrangianLinePath {
    /// Build a path from angle samples (any real angles; wrapped mod π).
    /// Checks the sampling invariant, including the wrap-around jump for
    /// closed loops.
    pub fn new(samples: &[f64], closed: bool) -> Result<LagrangianLinePath, MaslovError> {
        if samples.is_empty() {
            return Err(MaslovError::Empty);
        }
        let wrapped: Vec<f64> = samples.iter().map(|&t| wrap_line(t)).collect();
        let path = LagrangianLinePath {
            samples: wrapped,
            closed,
        };
        path.check_sampling()?;
        Ok(path)
    }

    fn check_sampling(&self) -> Result<(), MaslovError> {
        let n = self.samples.len();
        let pairs = if self.closed { n } else { n.saturating_sub(1) };
        for i in 0..pairs {
            let from = self.samples[i];
            let to = self.samples[(i + 1) % n];
            if lift_jump(from, to).is_none() {
                let jump = (to - from).rem_euclid(PI);
                return Err(MaslovError::SamplingTooCoarse { index: i, jump });
            }
        }
        Ok(())
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    /// Total change of the lifted angle along the path (including the
    /// wrap-around jump when closed).
    fn total_lift(&self) -> f64 {
        let n = self.samples.len();
        let pairs = if self.closed { n } else { n - 1 };
        (0..pairs)
            .map(|i| lift_jump(self.samples[i], self.samples[(i + 1) % n]).expect("checked"))
            .sum()
    }

    /// Winding number of the lifted angle divided by π; anticlockwise
    /// π-rotation counts +1.  Requires a closed loop.
    pub fn maslov_index(&self) -> Result<i64, MaslovError> {
        if !self.closed {
            return Err(MaslovError::NotClosed);
        }
        let winding = self.total_lift() / PI;
        let index = winding.round();
        debug_assert!(
            (winding - index).abs() < 1e-9,
            "closed-loop lift must be an integer multiple of π, got {winding}π"
        );
        Ok(index as i64)
    }

    /// Close an open path by appending the reverse of the anticlockwise
    /// e^{tI}-interpolation between its endpoint lines (the return leg of
    /// the concatenation γ₀ * γ * γ̄₁ * γ̄).  The endpoints must be
    /// transverse.  Closed inputs are returned unchanged.
    pub fn close_path(&self) -> Result<LagrangianLinePath, MaslovError> {
        if self.closed {
            return Ok(self.clone());
        }
        let first = self.samples[0];
        let last = *self.samples.last().unwrap();
        // Anticlockwise gap from the start line to the end line.
        let gap = (last - first).rem_euclid(PI);
        if gap.abs() < 1e-12 || (PI - gap).abs() < 1e-12 {
            return Err(MaslovError::EndpointsNotTransverse);
        }
        // Walk back from `last` to `first` clockwise through that gap, in
        // steps well below π/2 so the lift stays unambiguous.
        let steps = (gap / (PI / 8.0)).ceil() as usize + 1;
        let mut samples = self.samples.clone();
        for s in 1..=steps {
            let t = gap * s as f64 / steps as f64;
            samples.push(wrap_line(last - t));
        }
        // Last appended sample equals the first sample mod π; drop it so the
        // loop closure provides the (zero-length) final jump.
        samples.pop();
        samples.push(self.samples[0]);
        LagrangianLinePath::new(&samples, true)
    }

    /// Orientation reversal.
    pub fn reverse(&self) -> LagrangianLinePath {
        let mut samples = self.samples.clone();
        samples.reverse();
        LagrangianLinePath {
            samples,
            closed: self.closed,
        }
    }

    /// Concatenation of two loops based at the same line (used by the
    /// additivity property); both must be closed.
    pub fn concat(&self, other: &LagrangianLinePath) -> Result<LagrangianLinePath, MaslovError> {
        let mut samples = self.samples.clone();
        samples.extend_from_slice(&other.samples);
        LagrangianLinePath::new(&samples, true)
    }

    /// Insert midpoints between consecutive samples (refinement never
    /// changes the index).
    pub fn refine(&self) -> LagrangianLinePath {
        let n = self.samples.len();
        let pairs = if self.closed { n } else { n - 1 };
        let mut samples = Vec::with_capacity(2 * n);
        for i in 0..pairs {
            let from = self.samples[i];
            let jump = lift_jump(from, self.samples[(i + 1) % n]).expect("checked");
            samples.push(from);
            samples.push(wrap_line(from + jump / 2.0));
        }
        if !self.closed {
            samples.push(*self.samples.last().unwrap());
        }
        LagrangianLinePath {
            samples,
            closed: self.closed,
        }
    }
}

/// Evenly sampled anticlockwise rotation arc from `from` through `angle`
/// radians (use a negative `angle` for clockwise).
pub fn rotation_arc(from: f64, angle: f64, samples_per_quarter: usize) -> Vec<f64> {
    let steps = ((angle.abs() / (PI / 4.0)).ceil() as usize * samples_per_quarter).max(1);
    (0..=steps)
        .map(|s| wrap_line(from + angle * s as f64 / steps as f64))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_loop_has_index_zero() {
        let l = LagrangianLinePath::new(&[0.3; 8], true).unwrap();
        assert_eq!(l.maslov_index().unwrap(), 0);
    }

    #[test]
    fn full_pi_rotation_counts_plus_one() {
        // θ(t) = t for t ∈ [0, π], sampled finely; closing jump is zero.
        let samples: Vec<f64> = (0..32).map(|i| PI * i as f64 / 32.0).collect();
        let l = LagrangianLinePath::new(&samples, true).unwrap();
        assert_eq!(l.maslov_index().unwrap(), 1);
    }

    #[test]
    fn clockwise_rotation_counts_minus_one() {
        let samples: Vec<f64> = (0..32).map(|i| -PI * i as f64 / 32.0).collect();
        let l = LagrangianLinePath::new(&samples, true).unwrap();
        assert_eq!(l.maslov_index().unwrap(), -1);
    }

    #[test]
    fn coarse_sampling_rejected() {
        let err = LagrangianLinePath::new(&[0.0, PI / 2.0], false).unwrap_err();
        assert!(matches!(err, MaslovError::SamplingTooCoarse { .. }));
    }

    #[test]
    fn close_path_of_quarter_wind_is_trivial() {
        // Straight path from θ = 0 to θ = π/4, closed anticlockwise: the
        // return leg cancels the outgoing rotation, index 0.
        let samples: Vec<f64> = (0..=8).map(|i| PI / 4.0 * i as f64 / 8.0).collect();
        let open = LagrangianLinePath::new(&samples, false).unwrap();
        let closed = open.close_path().unwrap();
        assert_eq!(closed.maslov_index().unwrap(), 0);
    }

    #[test]
    fn close_path_after_full_wind_keeps_the_wind() {
        // Path winding once (0 → π) and a little more (→ π + π/4), then
        // closed: index 1.
        let samples: Vec<f64> = (0..=40)
            .map(|i| (PI + PI / 4.0) * i as f64 / 40.0)
            .collect();
        let open = LagrangianLinePath::new(&samples, false).unwrap();
        let closed = open.close_path().unwrap();
        assert_eq!(closed.maslov_index().unwrap(), 1);
    }

    #[test]
    fn close_path_on_closed_input_is_identity() {
        let l = LagrangianLinePath::new(&[0.1; 4], true).unwrap();
        assert_eq!(l.close_path().unwrap(), l);
    }

    #[test]
    fn non_transverse_endpoints_rejected() {
        let open = LagrangianLinePath::new(&[0.2, 0.3, 0.2], false).unwrap();
        assert_eq!(
            open.close_path().unwrap_err(),
            MaslovError::EndpointsNotTransverse
        );
    }

    #[test]
    fn strip_figure_loop_has_index_one() {
        // Four-arc loop of the disk with two boundary punctures: tangent
        // lines along the lower arc (constant 0), an anticlockwise quarter
        // turn at the first puncture, the upper-arc tangents traversed
        // backwards (constant π/2), and a second anticlockwise quarter turn
        // back to the start line.  Total rotation π ⇒ index 1.
        let mut samples = vec![0.0; 6];
        samples.extend(rotation_arc(0.0, PI / 2.0, 8));
        samples.extend(vec![PI / 2.0; 6]);
        samples.extend(rotation_arc(PI / 2.0, PI / 2.0, 8));
        samples.pop(); // endpoint ≡ start line; the closure jump is zero
        let l = LagrangianLinePath::new(&samples, true).unwrap();
        assert_eq!(l.maslov_index().unwrap(), 1);
    }
}
