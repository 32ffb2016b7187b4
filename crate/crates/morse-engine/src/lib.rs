//! Numerical Morse homology of compact surfaces presented as regular level
//! sets {F = 0} in R³ with the induced Euclidean metric.
//!
//! The pipeline: locate the critical points of a function f restricted to
//! the surface (constrained Newton on the Lagrange system), classify them
//! by the index of the intrinsic Hessian, integrate the negative projected
//! gradient flow, count rigid flow lines between critical points of index
//! difference one by shooting from unstable spheres, assemble the Morse
//! chain complex, and connect two Morse functions by a continuation chain
//! map built from a time-dependent interpolating flow.
//!
//! Degenerate data (a non-Morse function, a saddle-to-saddle connection,
//! an unresolvable homotopy) are reported as hard errors rather than
//! silently perturbed.

pub mod complex;
pub mod continuation;
pub mod critical;
pub mod flow;
pub mod moduli;
pub mod problem;
pub mod surface;

pub use complex::{build_morse_complex, MorseRun};
pub use continuation::{continuation_map, Schedule};
pub use critical::{find_critical_points, morse_index, CriticalPoint};
pub use flow::{basin_classify, flow, FlowLimit, Trajectory};
pub use moduli::{count_flow_lines, ModuliCount};
pub use problem::Problem;
pub use surface::LevelSurface;

use nalgebra::Vector3;

/// Numerical controls shared by the whole pipeline.  All fields are
/// overridable; the defaults are tuned for the bundled unit-scale fixtures.
#[derive(Debug, Clone, Copy)]
pub struct Tolerances {
    /// Convergence threshold for the projected gradient at critical points
    /// and for capture classification of trajectories.
    pub tol_crit: f64,
    /// Any intrinsic-Hessian eigenvalue this close to zero makes the
    /// function non-Morse.
    pub tol_degenerate: f64,
    /// Guaranteed bound on |F| along every trajectory sample.
    pub tol_surface: f64,
    /// Capture radius around critical points.
    pub r_cap: f64,
    /// Bisection / refinement resolution for shooting parameters (radians
    /// on unstable circles, flow time along unstable branches).
    pub angle_tol: f64,
    /// Maximum accepted integrator steps per trajectory.
    pub step_budget: usize,
    /// A trajectory passing this close to a saddle it was not aimed at is
    /// treated as a broken (non-generic) configuration.
    pub saddle_guard: f64,
    /// Shooting offset from a critical point along unstable directions.
    pub shoot_eps: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            tol_crit: 1e-10,
            tol_degenerate: 1e-6,
            tol_surface: 1e-9,
            r_cap: 1e-3,
            angle_tol: 1e-10,
            step_budget: 1_000_000,
            saddle_guard: 1e-4,
            shoot_eps: 1e-4,
        }
    }
}

impl Tolerances {
    /// The same controls with every threshold halved (and the step budget
    /// doubled so tighter targets stay reachable); used by stability tests.
    pub fn halved(self) -> Tolerances {
        Tolerances {
            tol_crit: self.tol_crit / 2.0,
            tol_degenerate: self.tol_degenerate / 2.0,
            tol_surface: self.tol_surface / 2.0,
            r_cap: self.r_cap / 2.0,
            angle_tol: self.angle_tol / 2.0,
            step_budget: self.step_budget * 2,
            saddle_guard: self.saddle_guard / 2.0,
            shoot_eps: self.shoot_eps / 2.0,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum MorseError {
    #[error("expression error: {0}")]
    Expression(#[from] fieldexpr::ParseError),
    #[error("domain error while evaluating a field: {0}")]
    Domain(#[from] fieldexpr::DomainError),
    #[error("surface is irregular near ({x:.6}, {y:.6}, {z:.6}): |grad F| = {norm:.3e} < {rho_min:.3e}")]
    IrregularSurface {
        x: f64,
        y: f64,
        z: f64,
        norm: f64,
        rho_min: f64,
    },
    #[error("projection onto the surface failed to converge from ({x:.6}, {y:.6}, {z:.6})")]
    ProjectionFailed { x: f64, y: f64, z: f64 },
    #[error("not Morse: degenerate critical point at ({x:.6}, {y:.6}, {z:.6}) with eigenvalue {eigenvalue:.3e}")]
    NotMorse {
        x: f64,
        y: f64,
        z: f64,
        eigenvalue: f64,
    },
    #[error("no critical points found on any seed")]
    NoCriticalPoints,
    #[error("non-generic pair ({from},{to})")]
    NonGenericPair { from: String, to: String },
    #[error("flow-line count between {from} and {to} is unresolved: {reason}")]
    Unresolved {
        from: String,
        to: String,
        reason: String,
    },
    #[error("count_flow_lines requires index difference 1, got {from} (index {from_index}) over {to} (index {to_index})")]
    NotRigid {
        from: String,
        from_index: usize,
        to: String,
        to_index: usize,
    },
    #[error("non-generic homotopy: {0}")]
    NonGenericHomotopy(String),
    #[error("problem file: {0}")]
    Problem(String),
    #[error("chain algebra error: {0}")]
    Chain(#[from] chain_core::ComplexError),
}

/// Position/vector type used throughout the crate.
pub type V3 = Vector3<f64>;
