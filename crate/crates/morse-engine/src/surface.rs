//! Compact surfaces presented as regular level sets {F = 0} in a bounding
//! box, carrying the metric induced from Euclidean R³.

use crate::{MorseError, V3};
use fieldexpr::ScalarField;
use nalgebra::{Matrix3, Vector3};

#[derive(Debug, Clone)]
pub struct LevelSurface {
    big_f: ScalarField,
    box_min: V3,
    box_max: V3,
    /// Lower bound on |∇F| at every point used by any computation; keeps
    /// the level set a manifold wherever we work.
    rho_min: f64,
}

impl LevelSurface {
    pub fn new(big_f: ScalarField, box_min: [f64; 3], box_max: [f64; 3], rho_min: f64) -> Self {
        LevelSurface {
            big_f,
            box_min: Vector3::from(box_min),
            box_max: Vector3::from(box_max),
            rho_min,
        }
    }

    pub fn defining_field(&self) -> &ScalarField {
        &self.big_f
    }

    pub fn box_min(&self) -> [f64; 3] {
        self.box_min.into()
    }

    pub fn box_max(&self) -> [f64; 3] {
        self.box_max.into()
    }

    pub fn value(&self, x: &V3) -> Result<f64, MorseError> {
        Ok(self.big_f.eval([x.x, x.y, x.z])?)
    }

    /// ∇F, checked against the regularity bound.
    pub fn normal_grad(&self, x: &V3) -> Result<V3, MorseError> {
        let g = V3::from(self.big_f.gradient([x.x, x.y, x.z])?);
        let norm = g.norm();
        if norm < self.rho_min {
            return Err(MorseError::IrregularSurface {
                x: x.x,
                y: x.y,
                z: x.z,
                norm,
                rho_min: self.rho_min,
            });
        }
        Ok(g)
    }

    pub fn hessian(&self, x: &V3) -> Result<Matrix3<f64>, MorseError> {
        let h = self.big_f.hessian([x.x, x.y, x.z])?;
        Ok(Matrix3::from_fn(|i, j| h[i][j]))
    }

    /// Orthogonal projector onto the tangent plane at x.
    pub fn tangent_projector(&self, x: &V3) -> Result<Matrix3<f64>, MorseError> {
        let n = self.normal_grad(x)?.normalize();
        Ok(Matrix3::identity() - n * n.transpose())
    }

    pub fn in_box(&self, x: &V3, margin: f64) -> bool {
        (0..3).all(|i| x[i] >= self.box_min[i] - margin && x[i] <= self.box_max[i] + margin)
    }

    /// Newton steps along ∇F driving F to zero; used to place seeds on the
    /// surface and to re-adhere trajectory samples after each flow step.
    /// Converges to well below `target` so downstream f-monotonicity is not
    /// perturbed at the reporting tolerance.
    pub fn project(&self, x0: &V3, target: f64) -> Result<V3, MorseError> {
        let mut x = *x0;
        for _ in 0..30 {
            let v = self.value(&x)?;
            if v.abs() <= target {
                return Ok(x);
            }
            let g = self.normal_grad(&x)?;
            x -= g * (v / g.norm_squared());
        }
        if self.value(&x)?.abs() <= target {
            Ok(x)
        } else {
            Err(MorseError::ProjectionFailed {
                x: x0.x,
                y: x0.y,
                z: x0.z,
            })
        }
    }
}
