//! Projected-gradient flow on a level surface: adaptive Dormand–Prince
//! integration of γ' = −P∇f with orthogonal re-adherence to {F = 0} after
//! every step, capture classification against a known critical-point set,
//! and level-crossing localization used by the flow-line counters.

use crate::critical::CriticalPoint;
use crate::surface::LevelSurface;
use crate::{MorseError, Tolerances, V3};
use fieldexpr::ScalarField;

#[derive(Debug, Clone, PartialEq)]
pub enum FlowLimit {
    /// Converged into the capture radius of the named critical point with
    /// projected gradient below tol_crit.
    CriticalPoint(String),
    /// Left the bounding box.
    Escaped,
    /// Step budget or time horizon exhausted.
    BudgetExceeded,
    /// The adaptive step collapsed; the last sample is reported.
    StepUnderflow,
}

#[derive(Debug, Clone)]
pub struct Trajectory {
    pub samples: Vec<(f64, V3)>,
    pub limit: FlowLimit,
    /// Closest approach to each critical point of the spec, same order.
    pub min_distance: Vec<f64>,
    /// First crossing point of each monitored level of the terminal
    /// function, if reached (crossings are unique by monotonicity).
    pub crossings: Vec<Option<V3>>,
}

/// The (possibly time-dependent) function whose negative gradient drives
/// the flow.
pub(crate) enum Field<'a> {
    Autonomous(&'a ScalarField),
    /// Smooth interpolation (1−ρ)f0 + ρf1 with ρ ramping 0→1 on [t0, t1].
    Ramped {
        f0: &'a ScalarField,
        f1: &'a ScalarField,
        t0: f64,
        t1: f64,
    },
}

/// C∞ monotone ramp: 0 for s ≤ 0, 1 for s ≥ 1.
pub(crate) fn smooth_ramp(s: f64) -> f64 {
    fn bump(s: f64) -> f64 {
        if s <= 0.0 {
            0.0
        } else {
            (-1.0 / s).exp()
        }
    }
    let a = bump(s);
    let b = bump(1.0 - s);
    a / (a + b)
}

impl<'a> Field<'a> {
    fn gradient(&self, t: f64, p: [f64; 3]) -> Result<V3, MorseError> {
        match self {
            Field::Autonomous(f) => Ok(V3::from(f.gradient(p)?)),
            Field::Ramped { f0, f1, t0, t1 } => {
                let rho = smooth_ramp((t - t0) / (t1 - t0));
                let g0 = V3::from(f0.gradient(p)?);
                let g1 = V3::from(f1.gradient(p)?);
                Ok(g0 * (1.0 - rho) + g1 * rho)
            }
        }
    }

    /// The function governing capture and level classification.
    fn terminal(&self) -> &'a ScalarField {
        match self {
            Field::Autonomous(f) => f,
            Field::Ramped { f1, .. } => f1,
        }
    }

    /// Whether the field has settled into its terminal form at time t.
    fn settled(&self, t: f64) -> bool {
        match self {
            Field::Autonomous(_) => true,
            Field::Ramped { t1, .. } => t >= *t1,
        }
    }
}

pub(crate) struct FlowSpec<'a> {
    pub surface: &'a LevelSurface,
    pub field: Field<'a>,
    pub critical_points: &'a [CriticalPoint],
    /// Terminal-function levels whose first crossing should be localized.
    pub levels: &'a [f64],
    pub tols: &'a Tolerances,
    pub horizon: f64,
    /// Keep all samples (for reports/plots) or just the endpoints.
    pub record: bool,
}

fn velocity(spec: &FlowSpec, t: f64, x: &V3) -> Result<V3, MorseError> {
    let g = spec.field.gradient(t, [x.x, x.y, x.z])?;
    let n = spec.surface.normal_grad(x)?.normalize();
    Ok(-(g - n * n.dot(&g)))
}

/// One Dormand–Prince 5(4) step; returns (5th-order solution, error norm).
fn dp45_step(spec: &FlowSpec, t: f64, x: &V3, h: f64) -> Result<(V3, f64), MorseError> {
    let k1 = velocity(spec, t, x)?;
    let k2 = velocity(spec, t + h / 5.0, &(x + k1 * (h / 5.0)))?;
    let k3 = velocity(
        spec,
        t + 3.0 * h / 10.0,
        &(x + (k1 * (3.0 / 40.0) + k2 * (9.0 / 40.0)) * h),
    )?;
    let k4 = velocity(
        spec,
        t + 4.0 * h / 5.0,
        &(x + (k1 * (44.0 / 45.0) - k2 * (56.0 / 15.0) + k3 * (32.0 / 9.0)) * h),
    )?;
    let k5 = velocity(
        spec,
        t + 8.0 * h / 9.0,
        &(x + (k1 * (19372.0 / 6561.0) - k2 * (25360.0 / 2187.0) + k3 * (64448.0 / 6561.0)
            - k4 * (212.0 / 729.0))
            * h),
    )?;
    let k6 = velocity(
        spec,
        t + h,
        &(x + (k1 * (9017.0 / 3168.0) - k2 * (355.0 / 33.0) + k3 * (46732.0 / 5247.0)
            + k4 * (49.0 / 176.0)
            - k5 * (5103.0 / 18656.0))
            * h),
    )?;
    let y5 = x + (k1 * (35.0 / 384.0)
        + k3 * (500.0 / 1113.0)
        + k4 * (125.0 / 192.0)
        - k5 * (2187.0 / 6784.0)
        + k6 * (11.0 / 84.0))
        * h;
    let k7 = velocity(spec, t + h, &y5)?;
    let y4 = x + (k1 * (5179.0 / 57600.0)
        + k3 * (7571.0 / 16695.0)
        + k4 * (393.0 / 640.0)
        - k5 * (92097.0 / 339200.0)
        + k6 * (187.0 / 2100.0)
        + k7 * (1.0 / 40.0))
        * h;
    Ok((y5, (y5 - y4).norm()))
}

const STEP_ERR_TOL: f64 = 1e-9;
const H_INIT: f64 = 1e-3;
const H_MIN: f64 = 1e-13;

/// Integrate the flow from x0 at time t_start until capture, escape, or
/// exhaustion.  x0 must already satisfy |F| ≤ tol_surface.
pub(crate) fn run_flow(spec: &FlowSpec, x0: &V3, t_start: f64) -> Result<Trajectory, MorseError> {
    let adhere = (spec.tols.tol_surface * 1e-3).max(1e-15);
    let mut x = spec.surface.project(x0, adhere)?;
    let mut t = t_start;
    let mut h = H_INIT;
    let mut samples = vec![(t, x)];
    let mut min_distance = vec![f64::INFINITY; spec.critical_points.len()];
    let mut crossings: Vec<Option<V3>> = vec![None; spec.levels.len()];
    let terminal = spec.field.terminal();
    let mut steps = 0usize;

    let classify = |t: f64, x: &V3, min_distance: &mut [f64]| -> Result<Option<String>, MorseError> {
        let mut near = None;
        for (i, cp) in spec.critical_points.iter().enumerate() {
            let d = (x - cp.position).norm();
            if d < min_distance[i] {
                min_distance[i] = d;
            }
            if d < spec.tols.r_cap {
                near = Some(cp);
            }
        }
        if let Some(cp) = near {
            if spec.field.settled(t) {
                let g = V3::from(terminal.gradient([x.x, x.y, x.z])?);
                let n = spec.surface.normal_grad(x)?.normalize();
                if (g - n * n.dot(&g)).norm() <= spec.tols.tol_crit {
                    return Ok(Some(cp.label.clone()));
                }
            }
        }
        Ok(None)
    };

    if let Some(label) = classify(t, &x, &mut min_distance)? {
        return Ok(Trajectory {
            samples,
            limit: FlowLimit::CriticalPoint(label),
            min_distance,
            crossings,
        });
    }

    let limit = loop {
        if steps >= spec.tols.step_budget || t - t_start > spec.horizon {
            break FlowLimit::BudgetExceeded;
        }
        steps += 1;

        // Cap the arc length per step so close approaches are sampled.
        let speed = velocity(spec, t, &x)?.norm().max(1e-30);
        let h_arc = 0.05 / speed;
        if h > h_arc {
            h = h_arc;
        }
        // Near a critical point the step error competes directly with the
        // capture gradient threshold; tighten it there.
        let near_cp = spec
            .critical_points
            .iter()
            .any(|cp| (x - cp.position).norm() < 2.0 * spec.tols.r_cap);
        let err_tol = if near_cp {
            STEP_ERR_TOL * 1e-4
        } else {
            STEP_ERR_TOL
        };
        let (mut y, err) = dp45_step(spec, t, &x, h)?;
        if err > err_tol {
            h *= (0.9 * (err_tol / err).powf(0.2)).clamp(0.2, 1.0);
            if h < H_MIN {
                break FlowLimit::StepUnderflow;
            }
            continue;
        }
        y = spec.surface.project(&y, adhere)?;
        let t_new = t + h;
        // Localize any level first crossed during this step, by bisection
        // on the sub-step size.
        if spec.field.settled(t) {
            let f_old = terminal.eval([x.x, x.y, x.z])?;
            let f_new = terminal.eval([y.x, y.y, y.z])?;
            for (li, &level) in spec.levels.iter().enumerate() {
                if crossings[li].is_none() && f_old > level && f_new <= level {
                    let mut lo = 0.0f64;
                    let mut hi = h;
                    let mut point = y;
                    for _ in 0..60 {
                        let mid = 0.5 * (lo + hi);
                        let (z, _) = dp45_step(spec, t, &x, mid)?;
                        let z = spec.surface.project(&z, adhere)?;
                        let fz = terminal.eval([z.x, z.y, z.z])?;
                        point = z;
                        if fz > level {
                            lo = mid;
                        } else {
                            hi = mid;
                        }
                        if (f_old - f_new).abs() * (hi - lo) / h < 1e-12 {
                            break;
                        }
                    }
                    crossings[li] = Some(point);
                }
            }
        }
        x = y;
        t = t_new;
        h *= (0.9 * (err_tol / err.max(1e-300)).powf(0.2)).clamp(0.2, 5.0);
        if spec.record {
            samples.push((t, x));
        } else {
            samples.truncate(1);
            samples.push((t, x));
        }
        if !spec.surface.in_box(&x, 0.0) {
            break FlowLimit::Escaped;
        }
        if let Some(label) = classify(t, &x, &mut min_distance)? {
            break FlowLimit::CriticalPoint(label);
        }
    };
    Ok(Trajectory {
        samples,
        limit,
        min_distance,
        crossings,
    })
}

/// Gradient descent of f on the surface from x0: the public autonomous
/// flow with full sample recording.
pub fn flow(
    surface: &LevelSurface,
    f: &ScalarField,
    x0: [f64; 3],
    critical_points: &[CriticalPoint],
    horizon: f64,
    tols: &Tolerances,
) -> Result<Trajectory, MorseError> {
    let spec = FlowSpec {
        surface,
        field: Field::Autonomous(f),
        critical_points,
        levels: &[],
        tols,
        horizon,
        record: true,
    };
    run_flow(&spec, &V3::from(x0), 0.0)
}

/// The ω-limit critical point of the trajectory through x0.
pub fn basin_classify(
    surface: &LevelSurface,
    f: &ScalarField,
    x0: [f64; 3],
    critical_points: &[CriticalPoint],
    tols: &Tolerances,
) -> Result<String, MorseError> {
    let spec = FlowSpec {
        surface,
        field: Field::Autonomous(f),
        critical_points,
        levels: &[],
        tols,
        horizon: 1e4,
        record: false,
    };
    let traj = run_flow(&spec, &V3::from(x0), 0.0)?;
    match traj.limit {
        FlowLimit::CriticalPoint(label) => Ok(label),
        other => Err(MorseError::Unresolved {
            from: format!("({:.4}, {:.4}, {:.4})", x0[0], x0[1], x0[2]),
            to: "ω-limit".into(),
            reason: format!("{other:?}"),
        }),
    }
}
