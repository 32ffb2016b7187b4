//! Counting rigid flow lines (index difference one) by shooting along
//! unstable branches of saddles.
//!
//! Lines from a saddle to a minimum are the ω-limits of the saddle's two
//! unstable branches.  Lines from a maximum p to a saddle q are counted in
//! reversed time: under −f the maximum becomes a minimum and the saddle
//! keeps index one, so the same branch construction applies — and the
//! approach to the target happens along its numerically fast direction,
//! which direct shooting from the unstable circle of p cannot resolve
//! (the shooting window shrinks like exp(−λ_fast/λ_slow)).
//!
//! A branch that terminates at — or shadows within the saddle guard of —
//! a saddle it was not aimed at is a broken flow line, reported as a
//! non-generic pair.

use crate::critical::{negated_points, CriticalPoint};
use crate::flow::{run_flow, Field, FlowLimit, FlowSpec, Trajectory};
use crate::surface::LevelSurface;
use crate::{MorseError, Tolerances, V3};
use fieldexpr::ScalarField;

#[derive(Debug, Clone)]
pub struct ModuliCount {
    pub source: String,
    pub target: String,
    pub n_lines: usize,
    pub count_mod2: u8,
    /// Signed count: each line carries the orientation of the unstable
    /// branch it travels (+1 along the chosen frame vector, −1 opposite).
    pub signed_count: i64,
    /// Branch parameters (±1) of the accepted lines.
    pub witnesses: Vec<f64>,
}

fn cp<'a>(cps: &'a [CriticalPoint], label: &str) -> Option<&'a CriticalPoint> {
    cps.iter().find(|c| c.label == label)
}

/// Start a trajectory just off `p` in tangent direction `dir`.
pub(crate) fn shoot(
    surface: &LevelSurface,
    f: &ScalarField,
    cps: &[CriticalPoint],
    p: &CriticalPoint,
    dir: &V3,
    tols: &Tolerances,
) -> Result<Trajectory, MorseError> {
    let spec = FlowSpec {
        surface,
        field: Field::Autonomous(f),
        critical_points: cps,
        levels: &[],
        tols,
        horizon: 1e4,
        record: false,
    };
    let x0 = p.position + dir * tols.shoot_eps;
    run_flow(&spec, &x0, 0.0)
}

/// The ω-limits of the two unstable branches of the index-1 point `p`:
/// (branch sign, limit label) pairs.  Errors on broken saddle-to-saddle
/// configurations and unresolved flows.
fn branch_limits(
    surface: &LevelSurface,
    f: &ScalarField,
    cps: &[CriticalPoint],
    p: &CriticalPoint,
    tols: &Tolerances,
) -> Result<Vec<(f64, String)>, MorseError> {
    let e1 = p.negative_frame[0];
    let mut out = Vec::new();
    for sign in [1.0f64, -1.0] {
        let traj = shoot(surface, f, cps, p, &(e1 * sign), tols)?;
        for (i, other) in cps.iter().enumerate() {
            if other.index == 1 && other.label != p.label && traj.min_distance[i] < tols.saddle_guard
            {
                return Err(MorseError::NonGenericPair {
                    from: p.label.clone(),
                    to: other.label.clone(),
                });
            }
        }
        match traj.limit {
            FlowLimit::CriticalPoint(label) => out.push((sign, label)),
            other => {
                return Err(MorseError::Unresolved {
                    from: p.label.clone(),
                    to: "minimum".into(),
                    reason: format!("branch {sign:+} ended with {other:?}"),
                })
            }
        }
    }
    Ok(out)
}

fn count_from_branches(
    surface: &LevelSurface,
    f: &ScalarField,
    cps: &[CriticalPoint],
    saddle: &str,
    target: &str,
    tols: &Tolerances,
) -> Result<(Vec<f64>, i64), MorseError> {
    let p = cp(cps, saddle).unwrap();
    let mut witnesses = Vec::new();
    let mut signed = 0i64;
    for (sign, label) in branch_limits(surface, f, cps, p, tols)? {
        if label == target {
            witnesses.push(sign);
            signed += sign as i64;
        }
    }
    Ok((witnesses, signed))
}

/// Rigid flow lines between two named critical points of index difference
/// one.
pub fn count_flow_lines(
    surface: &LevelSurface,
    f: &ScalarField,
    cps: &[CriticalPoint],
    from: &str,
    to: &str,
    tols: &Tolerances,
) -> Result<ModuliCount, MorseError> {
    let p = cp(cps, from).ok_or_else(|| MorseError::Problem(format!("unknown label {from}")))?;
    let q = cp(cps, to).ok_or_else(|| MorseError::Problem(format!("unknown label {to}")))?;
    if p.index != q.index + 1 {
        return Err(MorseError::NotRigid {
            from: p.label.clone(),
            from_index: p.index,
            to: q.label.clone(),
            to_index: q.index,
        });
    }
    let (witnesses, signed) = if p.index == 1 {
        count_from_branches(surface, f, cps, from, to, tols)?
    } else {
        // Reverse time: shoot along the saddle's −f-unstable branches and
        // look for the maximum, now a minimum.
        let neg = ScalarField::parse(&format!("-({})", f.source()))
            .expect("negation of a valid expression parses");
        let ncps = negated_points(surface, &neg, cps, tols)?;
        count_from_branches(surface, &neg, &ncps, to, from, tols)?
    };
    Ok(ModuliCount {
        source: p.label.clone(),
        target: q.label.clone(),
        n_lines: witnesses.len(),
        count_mod2: (witnesses.len() % 2) as u8,
        signed_count: signed,
        witnesses,
    })
}

/// All rigid counts for every index-difference-one pair, saddles-to-minima
/// first so that broken saddle-to-saddle configurations surface with the
/// pair that actually breaks.
pub(crate) fn all_rigid_counts(
    surface: &LevelSurface,
    f: &ScalarField,
    cps: &[CriticalPoint],
    tols: &Tolerances,
) -> Result<Vec<ModuliCount>, MorseError> {
    let mut pairs = Vec::new();
    for upper in [1usize, 2] {
        for p in cps.iter().filter(|c| c.index == upper) {
            for q in cps.iter().filter(|c| c.index == upper - 1) {
                pairs.push((p.label.clone(), q.label.clone()));
            }
        }
    }
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        // Run the saddle-to-minimum block first (sequentially cheap, and
        // it is where broken connections must be reported), then the
        // maxima in parallel.
        let split = pairs
            .iter()
            .position(|(p, _)| cp(cps, p).unwrap().index == 2)
            .unwrap_or(pairs.len());
        let mut out = Vec::new();
        for (p, q) in &pairs[..split] {
            out.push(count_flow_lines(surface, f, cps, p, q, tols)?);
        }
        let rest: Result<Vec<ModuliCount>, MorseError> = pairs[split..]
            .par_iter()
            .map(|(p, q)| count_flow_lines(surface, f, cps, p, q, tols))
            .collect();
        out.extend(rest?);
        Ok(out)
    }
    #[cfg(not(feature = "parallel"))]
    {
        pairs
            .iter()
            .map(|(p, q)| count_flow_lines(surface, f, cps, p, q, tols))
            .collect()
    }
}
