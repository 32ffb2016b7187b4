//! Line-oriented problem files: a surface F, a function f, a bounding box,
//! seeding density, optional labels and tolerance overrides.
//!
//! ```text
//! # torus of revolution, tilted height
//! surface: (sqrt(x^2+y^2)-2)^2 + z^2 - 1
//! function: z + 0.05*y
//! box: -3.2 3.2 -3.2 3.2 -1.2 1.2
//! grid: 24
//! labels: a b c d
//! ```

use crate::surface::LevelSurface;
use crate::{MorseError, Tolerances};
use fieldexpr::ScalarField;

#[derive(Debug, Clone)]
pub struct Problem {
    pub surface_expr: String,
    pub function_expr: String,
    pub box_min: [f64; 3],
    pub box_max: [f64; 3],
    pub grid: usize,
    pub labels: Vec<String>,
    pub rho_min: f64,
    pub tol_crit: Option<f64>,
    pub tol_degenerate: Option<f64>,
    pub tol_surface: Option<f64>,
    pub r_cap: Option<f64>,
}

impl Problem {
    pub fn parse(text: &str) -> Result<Problem, MorseError> {
        let mut surface_expr = None;
        let mut function_expr = None;
        let mut bounds = None;
        let mut grid = 16usize;
        let mut labels = Vec::new();
        let mut rho_min = 1e-4;
        let mut tol_crit = None;
        let mut tol_degenerate = None;
        let mut tol_surface = None;
        let mut r_cap = None;

        let bad = |line: usize, msg: String| MorseError::Problem(format!("line {line}: {msg}"));
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once(':')
                .ok_or_else(|| bad(i + 1, format!("expected `key: value`, got `{line}`")))?;
            let value = value.trim();
            let number = |v: &str| -> Result<f64, MorseError> {
                v.parse::<f64>()
                    .map_err(|_| bad(i + 1, format!("`{v}` is not a number")))
            };
            match key.trim() {
                "surface" => surface_expr = Some(value.to_string()),
                "function" => function_expr = Some(value.to_string()),
                "box" => {
                    let parts: Vec<f64> = value
                        .split_whitespace()
                        .map(number)
                        .collect::<Result<_, _>>()?;
                    if parts.len() != 6 {
                        return Err(bad(i + 1, "box needs 6 numbers".into()));
                    }
                    bounds = Some((
                        [parts[0], parts[2], parts[4]],
                        [parts[1], parts[3], parts[5]],
                    ));
                }
                "grid" => {
                    grid = value
                        .parse()
                        .map_err(|_| bad(i + 1, format!("`{value}` is not a grid size")))?
                }
                "labels" => labels = value.split_whitespace().map(str::to_string).collect(),
                "rho_min" => rho_min = number(value)?,
                "tol_crit" => tol_crit = Some(number(value)?),
                "tol_degenerate" => tol_degenerate = Some(number(value)?),
                "tol_surface" => tol_surface = Some(number(value)?),
                "r_cap" => r_cap = Some(number(value)?),
                other => return Err(bad(i + 1, format!("unknown key `{other}`"))),
            }
        }
        let (box_min, box_max) = bounds
            .ok_or_else(|| MorseError::Problem("missing `box:` line".into()))?;
        Ok(Problem {
            surface_expr: surface_expr
                .ok_or_else(|| MorseError::Problem("missing `surface:` line".into()))?,
            function_expr: function_expr
                .ok_or_else(|| MorseError::Problem("missing `function:` line".into()))?,
            box_min,
            box_max,
            grid,
            labels,
            rho_min,
            tol_crit,
            tol_degenerate,
            tol_surface,
            r_cap,
        })
    }

    pub fn surface(&self) -> Result<LevelSurface, MorseError> {
        let field = ScalarField::parse(&self.surface_expr)?;
        Ok(LevelSurface::new(
            field,
            self.box_min,
            self.box_max,
            self.rho_min,
        ))
    }

    pub fn function(&self) -> Result<ScalarField, MorseError> {
        Ok(ScalarField::parse(&self.function_expr)?)
    }

    /// The base tolerances with this problem's overrides applied.
    pub fn tolerances(&self, base: Tolerances) -> Tolerances {
        let mut t = base;
        if let Some(v) = self.tol_crit {
            t.tol_crit = v;
        }
        if let Some(v) = self.tol_degenerate {
            t.tol_degenerate = v;
        }
        if let Some(v) = self.tol_surface {
            t.tol_surface = v;
        }
        if let Some(v) = self.r_cap {
            t.r_cap = v;
        }
        t
    }
}
