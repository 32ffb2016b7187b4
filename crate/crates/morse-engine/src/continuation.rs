//! Continuation chain maps between two Morse functions on the same
//! surface, counting rigid solutions of the time-dependent flow
//! γ' = −∇((1−ρ(t))·f0 + ρ(t)·f1) with a smooth monotone ramp ρ.
//!
//! Grade 0: the single trajectory out of each f0-minimum, classified at an
//! f1-minimum.  Grade 1: one-parameter shooting along each f0-saddle's
//! unstable branches (plus the trajectory released at the saddle itself,
//! the compactification point of the family), with bracketed refinement
//! onto f1-saddles.  Grade 2: the grade-0 construction applied to the
//! time-reversed problem — running s = −t turns descent of the
//! interpolation from f0 to f1 into descent of the interpolation from −f1
//! to −f0, and maxima into minima — and transposing.
//!
//! Grade-1 solutions approach their target saddle along its stable
//! manifold while errors grow along its unstable one, so the shooting
//! window is only resolvable when the stable rate dominates.  Each entry
//! is therefore computed in whichever time direction gives its target the
//! better stable-to-unstable rate ratio; the reversed direction reuses the
//! same machinery on (−f1, −f0).

use crate::critical::{negated_points, CriticalPoint};
use crate::flow::{run_flow, Field, FlowLimit, FlowSpec};
use crate::surface::LevelSurface;
use crate::{MorseError, MorseRun, Tolerances, V3};
use chain_core::{ChainMap, IntMatrix, Ring};
use fieldexpr::ScalarField;
use std::collections::BTreeMap;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Release points tried along each unstable branch in grade 1.
const TAU_SAMPLES: usize = 128;

/// Ramp support: ρ ≡ 0 for t ≤ t0, ρ ≡ 1 for t ≥ t1.
#[derive(Debug, Clone, Copy)]
pub struct Schedule {
    pub t0: f64,
    pub t1: f64,
}

impl Default for Schedule {
    fn default() -> Self {
        Schedule { t0: 0.0, t1: 1.0 }
    }
}

/// Integrate the ramped flow from x at time t0 and classify against the
/// f1 critical set.
fn ramped_limit(
    surface: &LevelSurface,
    f0: &ScalarField,
    f1: &ScalarField,
    cps1: &[CriticalPoint],
    schedule: Schedule,
    x: &V3,
    levels: &[f64],
    tols: &Tolerances,
) -> Result<(FlowLimit, Vec<Option<V3>>), MorseError> {
    let spec = FlowSpec {
        surface,
        field: Field::Ramped {
            f0,
            f1,
            t0: schedule.t0,
            t1: schedule.t1,
        },
        critical_points: cps1,
        levels,
        tols,
        horizon: (schedule.t1 - schedule.t0) + 1e4,
        record: false,
    };
    let traj = run_flow(&spec, x, schedule.t0)?;
    Ok((traj.limit, traj.crossings))
}

/// The unstable-branch path of a saddle under the autonomous f0 flow,
/// sampled densely enough for linear interpolation: (time, position)
/// pairs from the saddle out to capture at a minimum.
fn branch_path(
    surface: &LevelSurface,
    f0: &ScalarField,
    cps0: &[CriticalPoint],
    p: &CriticalPoint,
    sign: f64,
    tols: &Tolerances,
) -> Result<Vec<(f64, V3)>, MorseError> {
    let spec = FlowSpec {
        surface,
        field: Field::Autonomous(f0),
        critical_points: cps0,
        levels: &[],
        tols,
        horizon: 1e4,
        record: true,
    };
    let x0 = p.position + p.negative_frame[0] * (tols.shoot_eps * sign);
    let traj = run_flow(&spec, &x0, 0.0)?;
    match traj.limit {
        FlowLimit::CriticalPoint(_) => Ok(traj.samples),
        other => Err(MorseError::NonGenericHomotopy(format!(
            "unstable branch of {} ended with {other:?}",
            p.label
        ))),
    }
}

fn interpolate(path: &[(f64, V3)], tau: f64) -> V3 {
    match path.iter().position(|(t, _)| *t >= tau) {
        Some(0) => path[0].1,
        None => path.last().unwrap().1,
        Some(i) => {
            let (t0, x0) = path[i - 1];
            let (t1, x1) = path[i];
            let w = (tau - t0) / (t1 - t0);
            x0 * (1.0 - w) + x1 * w
        }
    }
}

/// Which side of the target saddle a released trajectory passes on.
#[derive(Debug, Clone, Copy, PartialEq)]
enum Side {
    /// Crossed the monitored level with positive component along the
    /// saddle's unstable direction.
    Plus,
    /// Crossed with negative component.
    Minus,
    /// Converged to the target saddle itself.
    Capture,
    /// Never crossed the level (settled below it, or stopped elsewhere).
    Unknown,
}

struct Grade1Scan<'a> {
    surface: &'a LevelSurface,
    f0: &'a ScalarField,
    f1: &'a ScalarField,
    cps1: &'a [CriticalPoint],
    schedule: Schedule,
    path: &'a [(f64, V3)],
    q: &'a CriticalPoint,
    /// Monitored f1-level slightly below the target saddle: below it the
    /// two sides of the saddle's stable manifold have separated.
    level: f64,
    tols: &'a Tolerances,
}

impl<'a> Grade1Scan<'a> {
    fn side(&self, tau: f64) -> Result<Side, MorseError> {
        let x = self
            .surface
            .project(&interpolate(self.path, tau), self.tols.tol_surface * 1e-3)?;
        let (limit, crossings) = ramped_limit(
            self.surface,
            self.f0,
            self.f1,
            self.cps1,
            self.schedule,
            &x,
            &[self.level],
            self.tols,
        )?;
        if limit == FlowLimit::CriticalPoint(self.q.label.clone()) {
            return Ok(Side::Capture);
        }
        match crossings[0] {
            Some(point) => {
                let tangent = self.q.negative_frame[0];
                if (point - self.q.position).dot(&tangent) >= 0.0 {
                    Ok(Side::Plus)
                } else {
                    Ok(Side::Minus)
                }
            }
            None => Ok(Side::Unknown),
        }
    }
}

/// Count rigid continuation solutions along one branch into the target
/// saddle.  The released family is classified by which side of the target
/// it passes; each sign change brackets a candidate, refined by bisection
/// and accepted only if the refined trajectory is captured by the target.
/// (Sign changes can also occur where the family sweeps past the far side
/// of the basin; those fail the capture test.)
fn branch_solutions(scan: &Grade1Scan) -> Result<usize, MorseError> {
    let t_end = scan.path.last().unwrap().0;
    let taus: Vec<f64> = (0..=TAU_SAMPLES)
        .map(|k| t_end * k as f64 / TAU_SAMPLES as f64)
        .collect();
    #[cfg(feature = "parallel")]
    let sides: Result<Vec<Side>, MorseError> =
        taus.par_iter().map(|&tau| scan.side(tau)).collect();
    #[cfg(not(feature = "parallel"))]
    let sides: Result<Vec<Side>, MorseError> =
        taus.iter().map(|&tau| scan.side(tau)).collect();
    let sides = sides?;

    let mut count = 0usize;
    // A grid point sitting exactly on a solution.  k = 0 releases at the
    // saddle itself, which is the compactification trajectory counted
    // separately.
    count += sides[1..].iter().filter(|s| **s == Side::Capture).count();

    for k in 1..sides.len() {
        let (a, b) = (sides[k - 1], sides[k]);
        let flip = matches!(
            (a, b),
            (Side::Plus, Side::Minus) | (Side::Minus, Side::Plus)
        );
        if !flip {
            continue;
        }
        let mut lo = taus[k - 1];
        let mut hi = taus[k];
        let lo_side = a;
        for _ in 0..80 {
            if hi - lo <= 1e-15 * t_end.max(1.0) {
                break;
            }
            let mid = 0.5 * (lo + hi);
            match scan.side(mid)? {
                Side::Capture => {
                    count += 1;
                    break;
                }
                s if s == lo_side => lo = mid,
                Side::Unknown => break,
                _ => hi = mid,
            }
        }
    }
    Ok(count)
}

/// Continuation entries in grade 0: minimum-to-minimum classification of
/// the single trajectory out of each source minimum.
fn grade0_entries(
    surface: &LevelSurface,
    f0: &ScalarField,
    f1: &ScalarField,
    cps0: &[CriticalPoint],
    cps1: &[CriticalPoint],
    schedule: Schedule,
    tols: &Tolerances,
) -> Result<Vec<(String, String)>, MorseError> {
    let mut entries = Vec::new();
    for p in cps0.iter().filter(|c| c.index == 0) {
        let (limit, _) = ramped_limit(surface, f0, f1, cps1, schedule, &p.position, &[], tols)?;
        match limit {
            FlowLimit::CriticalPoint(label) => {
                let q = cps1.iter().find(|c| c.label == label).unwrap();
                if q.index != 0 {
                    return Err(MorseError::NonGenericHomotopy(format!(
                        "trajectory from minimum {} settled on {} of index {}",
                        p.label, q.label, q.index
                    )));
                }
                entries.push((p.label.clone(), label));
            }
            other => {
                return Err(MorseError::NonGenericHomotopy(format!(
                    "trajectory from minimum {} ended with {other:?}",
                    p.label
                )))
            }
        }
    }
    Ok(entries)
}

/// All grade-1 counts for the ramped problem f0 → f1, keyed
/// (source saddle, target saddle).
fn grade1_counts(
    surface: &LevelSurface,
    f0: &ScalarField,
    f1: &ScalarField,
    cps0: &[CriticalPoint],
    cps1: &[CriticalPoint],
    schedule: Schedule,
    tols: &Tolerances,
) -> Result<BTreeMap<(String, String), usize>, MorseError> {
    let saddles1: Vec<&CriticalPoint> = cps1.iter().filter(|c| c.index == 1).collect();
    let spread = {
        let lo = cps1.iter().map(|c| c.value).fold(f64::INFINITY, f64::min);
        let hi = cps1.iter().map(|c| c.value).fold(f64::NEG_INFINITY, f64::max);
        (hi - lo).max(1e-6)
    };
    let mut all: BTreeMap<(String, String), usize> = BTreeMap::new();
    for p in cps0.iter().filter(|c| c.index == 1) {
        let mut counts: BTreeMap<String, usize> = BTreeMap::new();
        // The compactification point of the family: the trajectory
        // released at the saddle itself.
        let (limit, _) = ramped_limit(surface, f0, f1, cps1, schedule, &p.position, &[], tols)?;
        if let FlowLimit::CriticalPoint(label) = limit {
            let q = cps1.iter().find(|c| c.label == label).unwrap();
            if q.index == 1 {
                *counts.entry(label).or_insert(0) += 1;
            }
        }
        for sign in [1.0f64, -1.0] {
            let path = branch_path(surface, f0, cps0, p, sign, tols)?;
            for q in &saddles1 {
                let scan = Grade1Scan {
                    surface,
                    f0,
                    f1,
                    cps1,
                    schedule,
                    path: &path,
                    q,
                    level: q.value - 1e-3 * spread,
                    tols,
                };
                let n = branch_solutions(&scan)?;
                if n > 0 {
                    *counts.entry(q.label.clone()).or_insert(0) += n;
                }
            }
        }
        for (q, n) in counts {
            all.insert((p.label.clone(), q), n);
        }
    }
    Ok(all)
}

/// Stable-to-unstable rate ratio at an index-1 point: large means
/// trajectories into the point are numerically resolvable.
fn approach_score(c: &CriticalPoint) -> f64 {
    c.eigenvalues[1] / c.eigenvalues[0].abs()
}

/// The continuation chain map Φ: C(f0) → C(f1) over Z/2.
pub fn continuation_map(
    surface: &LevelSurface,
    f0: &ScalarField,
    f1: &ScalarField,
    run0: &MorseRun,
    run1: &MorseRun,
    schedule: Schedule,
    tols: &Tolerances,
) -> Result<ChainMap, MorseError> {
    if run0.complex.ring() != Ring::Z2 || run1.complex.ring() != Ring::Z2 {
        return Err(MorseError::NonGenericHomotopy(
            "continuation counts are mod 2; build both complexes over Z/2".into(),
        ));
    }
    let cps0 = &run0.critical_points;
    let cps1 = &run1.critical_points;
    // (source label, target label) -> count mod 2, per grade.
    let mut entries: BTreeMap<i64, BTreeMap<(String, String), usize>> = BTreeMap::new();

    for (p, q) in grade0_entries(surface, f0, f1, cps0, cps1, schedule, tols)? {
        *entries.entry(0).or_default().entry((p, q)).or_insert(0) += 1;
    }

    // Grade 1, in both time directions; each (p, q) entry is taken from
    // the direction whose target is better conditioned.
    let neg0 = ScalarField::parse(&format!("-({})", f0.source()))?;
    let neg1 = ScalarField::parse(&format!("-({})", f1.source()))?;
    let rev0 = negated_points(surface, &neg1, cps1, tols)?;
    let rev1 = negated_points(surface, &neg0, cps0, tols)?;
    let forward = grade1_counts(surface, f0, f1, cps0, cps1, schedule, tols)?;
    let reversed = grade1_counts(surface, &neg1, &neg0, &rev0, &rev1, schedule, tols)?;
    for p in cps0.iter().filter(|c| c.index == 1) {
        for q in cps1.iter().filter(|c| c.index == 1) {
            let rev_target = rev1.iter().find(|c| c.label == p.label).unwrap();
            let n = if approach_score(q) >= approach_score(rev_target) {
                forward.get(&(p.label.clone(), q.label.clone())).copied()
            } else {
                reversed.get(&(q.label.clone(), p.label.clone())).copied()
            };
            if let Some(n) = n {
                *entries
                    .entry(1)
                    .or_default()
                    .entry((p.label.clone(), q.label.clone()))
                    .or_insert(0) += n;
            }
        }
    }

    // Grade 2 by time reversal: descent from f0 to f1 backwards in time is
    // descent from −f1 to −f0, turning maxima into minima.
    for (q, p) in grade0_entries(surface, &neg1, &neg0, &rev0, &rev1, schedule, tols)? {
        *entries.entry(2).or_default().entry((p, q)).or_insert(0) += 1;
    }

    let mut maps: BTreeMap<i64, IntMatrix> = BTreeMap::new();
    for g in 0..=2i64 {
        let src = run0.complex.labels_of_grade(g);
        let tgt = run1.complex.labels_of_grade(g);
        let mut m = IntMatrix::zeros(tgt.len(), src.len());
        if let Some(pairs) = entries.get(&g) {
            for ((p, q), n) in pairs {
                if n % 2 == 1 {
                    let col = src.iter().position(|l| l == p).unwrap();
                    let row = tgt.iter().position(|l| l == q).unwrap();
                    m[(row, col)] += 1;
                }
            }
        }
        maps.insert(g, m);
    }
    Ok(ChainMap::new(run0.complex.clone(), run1.complex.clone(), maps)?)
}
