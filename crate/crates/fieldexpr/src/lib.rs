//! Scalar fields on R³ from a small expression language, with exact first
//! and second derivatives.
//!
//! Expressions use the variables `x`, `y`, `z`, the operators
//! `+ - * / ^` (exponent restricted to constants, which sidesteps branch
//! cuts), and the functions `sin cos exp log sqrt tanh cosh sinh abs`.
//! Derivatives come from second-order forward-mode jets, so gradients and
//! Hessians are exact to machine precision.  `ScalarField` values are
//! immutable and can be evaluated from any number of threads.

pub mod ast;
pub mod jet;
pub mod parse;

pub use ast::{DomainError, Expr};
pub use parse::ParseError;

use jet::Jet2;

/// A parsed scalar field f(x, y, z).
#[derive(Clone, Debug)]
pub struct ScalarField {
    source: String,
    ast: Expr,
}

impl ScalarField {
    /// Parse `source`; diagnostics carry 1-based line/column and an
    /// expected-token set.
    pub fn parse(source: &str) -> Result<ScalarField, ParseError> {
        Ok(ScalarField {
            source: source.to_string(),
            ast: parse::parse_expr(source)?,
        })
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn ast(&self) -> &Expr {
        &self.ast
    }

    /// Canonical (fully parenthesized) print of the tree; parsing it back
    /// reproduces the same ast.
    pub fn print(&self) -> String {
        self.ast.to_string()
    }

    pub fn eval(&self, point: [f64; 3]) -> Result<f64, DomainError> {
        Ok(self.ast.eval_jet(point)?.val)
    }

    pub fn gradient(&self, point: [f64; 3]) -> Result<[f64; 3], DomainError> {
        Ok(self.ast.eval_jet(point)?.grad)
    }

    pub fn hessian(&self, point: [f64; 3]) -> Result<[[f64; 3]; 3], DomainError> {
        Ok(self.ast.eval_jet(point)?.hessian_matrix())
    }

    /// Value, gradient, and Hessian in one pass.
    pub fn jet(&self, point: [f64; 3]) -> Result<Jet2, DomainError> {
        self.ast.eval_jet(point)
    }
}
