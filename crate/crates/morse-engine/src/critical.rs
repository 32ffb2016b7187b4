//! Critical points of f restricted to a level surface, found by Newton
//! iteration on the Lagrange system ∇f = λ∇F, F = 0, and classified by the
//! index of the intrinsic (tangent-plane) Hessian.

use crate::surface::LevelSurface;
use crate::{MorseError, Tolerances, V3};
use fieldexpr::ScalarField;
use nalgebra::{Matrix2, Matrix3, Matrix4, Vector2, Vector3, Vector4};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone)]
pub struct CriticalPoint {
    pub position: V3,
    /// Number of negative eigenvalues of the intrinsic Hessian: 0, 1 or 2.
    pub index: usize,
    /// Intrinsic Hessian eigenvalues in ascending order.
    pub eigenvalues: Vec<f64>,
    /// Orthonormal basis of the negative eigenspace inside the tangent
    /// plane (one vector per negative eigenvalue, matching order).
    pub negative_frame: Vec<V3>,
    pub label: String,
    pub value: f64,
}

/// A deterministic orthonormal tangent basis (u, v) at a point with unit
/// normal n, with (u, v, n) right-handed.
fn tangent_basis(n: &V3) -> (V3, V3) {
    // Pick the coordinate axis least aligned with n for stability.
    let mut axis = 0;
    for i in 1..3 {
        if n[i].abs() < n[axis].abs() {
            axis = i;
        }
    }
    let mut e = V3::zeros();
    e[axis] = 1.0;
    let u = (e - n * n.dot(&e)).normalize();
    let v = n.cross(&u);
    (u, v)
}

/// The Lagrange multiplier of the constrained problem at x.
fn multiplier(grad_f: &V3, grad_big_f: &V3) -> f64 {
    grad_f.dot(grad_big_f) / grad_big_f.norm_squared()
}

/// The intrinsic Hessian data at a (near-)critical point: eigenvalues in
/// ascending order, eigenvectors as tangent 3-vectors, and the index.
pub fn morse_index(
    surface: &LevelSurface,
    f: &ScalarField,
    position: &V3,
    tols: &Tolerances,
) -> Result<(usize, Vec<f64>, Vec<V3>), MorseError> {
    let p = [position.x, position.y, position.z];
    let grad_f = V3::from(f.gradient(p)?);
    let grad_big_f = surface.normal_grad(position)?;
    let lambda = multiplier(&grad_f, &grad_big_f);
    let hess_f = Matrix3::from_fn(|i, j| f.hessian(p).unwrap()[i][j]);
    let hess_big_f = surface.hessian(position)?;
    let a = hess_f - hess_big_f * lambda;
    let n = grad_big_f.normalize();
    let (u, v) = tangent_basis(&n);
    let a2 = Matrix2::new(
        (u.transpose() * a * u)[0],
        (u.transpose() * a * v)[0],
        (v.transpose() * a * u)[0],
        (v.transpose() * a * v)[0],
    );
    let sym = nalgebra::SymmetricEigen::new(a2.symmetric_part());
    let mut pairs: Vec<(f64, Vector2<f64>)> = (0..2)
        .map(|i| (sym.eigenvalues[i], sym.eigenvectors.column(i).into_owned()))
        .collect();
    pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    for (ev, _) in &pairs {
        if ev.abs() <= tols.tol_degenerate {
            return Err(MorseError::NotMorse {
                x: position.x,
                y: position.y,
                z: position.z,
                eigenvalue: *ev,
            });
        }
    }
    let eigenvalues: Vec<f64> = pairs.iter().map(|p| p.0).collect();
    let frame: Vec<V3> = pairs
        .iter()
        .filter(|p| p.0 < 0.0)
        .map(|p| {
            let w = u * p.1[0] + v * p.1[1];
            // Fix the overall sign deterministically: first significant
            // component positive.
            let lead = (0..3).find(|&i| w[i].abs() > 1e-12).unwrap_or(0);
            if w[lead] < 0.0 {
                -w
            } else {
                w
            }
        })
        .collect();
    let index = frame.len();
    Ok((index, eigenvalues, frame))
}

/// Critical points of −f share positions with those of f; indices flip to
/// 2 − index and frames are recomputed for the negated field.
pub(crate) fn negated_points(
    surface: &LevelSurface,
    neg_f: &ScalarField,
    cps: &[CriticalPoint],
    tols: &Tolerances,
) -> Result<Vec<CriticalPoint>, MorseError> {
    let mut out = Vec::new();
    for c in cps {
        let (index, eigenvalues, negative_frame) = morse_index(surface, neg_f, &c.position, tols)?;
        out.push(CriticalPoint {
            position: c.position,
            index,
            eigenvalues,
            negative_frame,
            label: c.label.clone(),
            value: -c.value,
        });
    }
    Ok(out)
}

fn newton_from_seed(
    surface: &LevelSurface,
    f: &ScalarField,
    seed: V3,
    tols: &Tolerances,
) -> Option<V3> {
    let mut x = surface.project(&seed, tols.tol_surface / 100.0).ok()?;
    let mut lambda = {
        let g = V3::from(f.gradient([x.x, x.y, x.z]).ok()?);
        let gf = surface.normal_grad(&x).ok()?;
        multiplier(&g, &gf)
    };
    for _ in 0..60 {
        let p = [x.x, x.y, x.z];
        let grad_f = V3::from(f.gradient(p).ok()?);
        let grad_big_f = surface.normal_grad(&x).ok()?;
        let value_big_f = surface.value(&x).ok()?;
        let res = grad_f - grad_big_f * lambda;
        let proj = Matrix3::identity()
            - grad_big_f.normalize() * grad_big_f.normalize().transpose();
        if (proj * grad_f).norm() <= tols.tol_crit && value_big_f.abs() <= tols.tol_surface {
            if !surface.in_box(&x, 1e-9) {
                return None;
            }
            return Some(x);
        }
        let hess_f = Matrix3::from_fn(|i, j| f.hessian(p).unwrap()[i][j]);
        let hess_big_f = surface.hessian(&x).ok()?;
        let a = hess_f - hess_big_f * lambda;
        let mut jac = Matrix4::zeros();
        jac.fixed_view_mut::<3, 3>(0, 0).copy_from(&a);
        jac.fixed_view_mut::<3, 1>(0, 3).copy_from(&(-grad_big_f));
        jac.fixed_view_mut::<1, 3>(3, 0)
            .copy_from(&grad_big_f.transpose());
        let rhs = Vector4::new(-res.x, -res.y, -res.z, -value_big_f);
        let delta = jac.lu().solve(&rhs)?;
        // Damp very large steps so seeds far from any root do not fly off.
        let dx = Vector3::new(delta.x, delta.y, delta.z);
        let scale = if dx.norm() > 0.5 { 0.5 / dx.norm() } else { 1.0 };
        x += dx * scale;
        lambda += delta.w * scale;
        if !surface.in_box(&x, 1.0) {
            return None;
        }
    }
    None
}

/// Locate, deduplicate and classify all critical points of f on the
/// surface reachable from a grid of `grid_density`³ seeds in the bounding
/// box.  Labels are assigned in order of ascending (index, f-value).
pub fn find_critical_points(
    surface: &LevelSurface,
    f: &ScalarField,
    grid_density: usize,
    labels: &[String],
    tols: &Tolerances,
) -> Result<Vec<CriticalPoint>, MorseError> {
    let lo = V3::from(surface.box_min());
    let hi = V3::from(surface.box_max());
    let n = grid_density.max(2);
    let seeds: Vec<V3> = (0..n * n * n)
        .map(|k| {
            let (i, j, l) = (k / (n * n), (k / n) % n, k % n);
            let t = |m: usize| (m as f64 + 0.5) / n as f64;
            V3::new(
                lo.x + (hi.x - lo.x) * t(i),
                lo.y + (hi.y - lo.y) * t(j),
                lo.z + (hi.z - lo.z) * t(l),
            )
        })
        .collect();

    #[cfg(feature = "parallel")]
    let roots: Vec<Option<V3>> = seeds
        .par_iter()
        .map(|s| newton_from_seed(surface, f, *s, tols))
        .collect();
    #[cfg(not(feature = "parallel"))]
    let roots: Vec<Option<V3>> = seeds
        .iter()
        .map(|s| newton_from_seed(surface, f, *s, tols))
        .collect();

    // Merge duplicates in deterministic seed order.  The merge radius is
    // far below the separation of distinct critical points on unit-scale
    // surfaces but far above Newton's convergence scatter.
    let merge_radius = (10.0 * tols.tol_crit).max(1e-6);
    let mut distinct: Vec<V3> = Vec::new();
    for root in roots.into_iter().flatten() {
        if distinct.iter().all(|p| (p - root).norm() > merge_radius) {
            distinct.push(root);
        }
    }
    if distinct.is_empty() {
        return Err(MorseError::NoCriticalPoints);
    }

    let mut points = Vec::new();
    for position in distinct {
        let (index, eigenvalues, negative_frame) = morse_index(surface, f, &position, tols)?;
        let value = f.eval([position.x, position.y, position.z])?;
        points.push(CriticalPoint {
            position,
            index,
            eigenvalues,
            negative_frame,
            label: String::new(),
            value,
        });
    }
    points.sort_by(|a, b| {
        (a.index, a.value, a.position.x, a.position.y, a.position.z)
            .partial_cmp(&(b.index, b.value, b.position.x, b.position.y, b.position.z))
            .unwrap()
    });
    for (i, p) in points.iter_mut().enumerate() {
        p.label = labels
            .get(i)
            .cloned()
            .unwrap_or_else(|| format!("p{i}"));
    }
    Ok(points)
}
