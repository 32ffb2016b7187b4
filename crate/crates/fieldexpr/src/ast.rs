//! Expression tree over the variables x, y, z, plus jet evaluation.

use crate::jet::Jet2;
use std::fmt;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Exp,
    Log,
    Sqrt,
    Tanh,
    Cosh,
    Sinh,
    Abs,
}

impl Func {
    pub fn from_name(name: &str) -> Option<Func> {
        Some(match name {
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "exp" => Func::Exp,
            "log" => Func::Log,
            "sqrt" => Func::Sqrt,
            "tanh" => Func::Tanh,
            "cosh" => Func::Cosh,
            "sinh" => Func::Sinh,
            "abs" => Func::Abs,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sqrt => "sqrt",
            Func::Tanh => "tanh",
            Func::Cosh => "cosh",
            Func::Sinh => "sinh",
            Func::Abs => "abs",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(f64),
    /// 0 = x, 1 = y, 2 = z
    Var(usize),
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

#[derive(Error, Debug, Clone, PartialEq)]
#[error("{message} in `{subexpr}`")]
pub struct DomainError {
    pub message: String,
    /// Printed form of the offending subexpression.
    pub subexpr: String,
}

fn domain_err(message: impl Into<String>, e: &Expr) -> DomainError {
    DomainError {
        message: message.into(),
        subexpr: e.to_string(),
    }
}

impl Expr {
    pub fn contains_variable(&self) -> bool {
        match self {
            Expr::Num(_) => false,
            Expr::Var(_) => true,
            Expr::Neg(a) => a.contains_variable(),
            Expr::Bin(_, a, b) => a.contains_variable() || b.contains_variable(),
            Expr::Call(_, a) => a.contains_variable(),
        }
    }

    /// Evaluate the jet of the expression at `point`.  Domain violations
    /// (log/sqrt outside their domain, division by zero, non-finite
    /// intermediate values) are reported with the offending subexpression.
    pub fn eval_jet(&self, point: [f64; 3]) -> Result<Jet2, DomainError> {
        let jet = match self {
            Expr::Num(v) => Jet2::constant(*v),
            Expr::Var(axis) => Jet2::variable(*axis, point[*axis]),
            Expr::Neg(a) => a.eval_jet(point)?.neg(),
            Expr::Bin(op, a, b) => {
                let ja = a.eval_jet(point)?;
                let jb = b.eval_jet(point)?;
                match op {
                    BinOp::Add => ja.add(&jb),
                    BinOp::Sub => ja.sub(&jb),
                    BinOp::Mul => ja.mul(&jb),
                    BinOp::Div => {
                        if jb.val == 0.0 {
                            return Err(domain_err("division by zero", self));
                        }
                        ja.div(&jb)
                    }
                    BinOp::Pow => {
                        // The parser guarantees a constant exponent.
                        let c = jb.val;
                        if ja.val < 0.0 && c.fract() != 0.0 {
                            return Err(domain_err(
                                "negative base with non-integer exponent",
                                self,
                            ));
                        }
                        if ja.val < 0.0 {
                            // Integer exponent on a negative base: powf would
                            // produce NaN derivatives through powf(c−1) on some
                            // platforms only for fractional c, so this is safe;
                            // route through powi semantics explicitly.
                            let n = c as i64;
                            let sign = if n.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
                            let m = ja.neg().powf(c);
                            if sign < 0.0 {
                                m.neg()
                            } else {
                                m
                            }
                        } else {
                            ja.powf(c)
                        }
                    }
                }
            }
            Expr::Call(f, a) => {
                let u = a.eval_jet(point)?;
                let v = u.val;
                match f {
                    Func::Sin => u.chain(v.sin(), v.cos(), -v.sin()),
                    Func::Cos => u.chain(v.cos(), -v.sin(), -v.cos()),
                    Func::Exp => {
                        let e = v.exp();
                        u.chain(e, e, e)
                    }
                    Func::Log => {
                        if v <= 0.0 {
                            return Err(domain_err("log of a non-positive value", self));
                        }
                        u.chain(v.ln(), 1.0 / v, -1.0 / (v * v))
                    }
                    Func::Sqrt => {
                        if v < 0.0 {
                            return Err(domain_err("sqrt of a negative value", self));
                        }
                        let s = v.sqrt();
                        u.chain(s, 0.5 / s, -0.25 / (s * v))
                    }
                    Func::Tanh => {
                        let t = v.tanh();
                        let sech2 = 1.0 - t * t;
                        u.chain(t, sech2, -2.0 * t * sech2)
                    }
                    Func::Cosh => u.chain(v.cosh(), v.sinh(), v.cosh()),
                    Func::Sinh => u.chain(v.sinh(), v.cosh(), v.sinh()),
                    // Piecewise-smooth; derivative convention sign(0) = 0.
                    Func::Abs => {
                        let sign = if v == 0.0 { 0.0 } else { v.signum() };
                        u.chain(v.abs(), sign, 0.0)
                    }
                }
            }
        };
        if !jet.is_finite() {
            return Err(domain_err("non-finite value or derivative", self));
        }
        Ok(jet)
    }
}

impl fmt::Display for Expr {
    /// Canonical fully parenthesized print; `parse(print(e)) == e`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(v) => write!(f, "{v}"),
            Expr::Var(0) => write!(f, "x"),
            Expr::Var(1) => write!(f, "y"),
            Expr::Var(_) => write!(f, "z"),
            Expr::Neg(a) => write!(f, "(-{a})"),
            Expr::Bin(op, a, b) => {
                let sym = match op {
                    BinOp::Add => "+",
                    BinOp::Sub => "-",
                    BinOp::Mul => "*",
                    BinOp::Div => "/",
                    BinOp::Pow => "^",
                };
                write!(f, "({a} {sym} {b})")
            }
            Expr::Call(func, a) => write!(f, "{}({a})", func.name()),
        }
    }
}
