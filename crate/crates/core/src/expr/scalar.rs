use std::ops::{Add, Div, Mul, Neg, Sub};

use super::{BinOp, DomainError, Expr, Func, Node};

/// Number types an [`Expr`] can be evaluated over.
///
/// Domain checks are made by the evaluator on [`Scalar::value`], so
/// implementations may assume in-domain arguments.
pub trait Scalar:
    Clone
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// Whether the type propagates derivatives (and therefore cannot be
    /// evaluated where a function is not differentiable, e.g. `sqrt(0)`).
    const CARRIES_DERIVATIVES: bool;

    /// A constant of the same shape as `self`.
    fn lift(&self, c: f64) -> Self;
    fn value(&self) -> f64;

    fn powi(&self, k: i32) -> Self {
        let n = k.unsigned_abs();
        let mut acc = self.lift(1.0);
        let mut base = self.clone();
        let mut bits = n;
        while bits > 0 {
            if bits & 1 == 1 {
                acc = acc * base.clone();
            }
            bits >>= 1;
            if bits > 0 {
                base = base.clone() * base;
            }
        }
        if k < 0 {
            self.lift(1.0) / acc
        } else {
            acc
        }
    }

    /// `self^exponent` for a positive base.
    fn powf(&self, exponent: &Self) -> Self {
        (exponent.clone() * self.ln()).exp()
    }

    fn sin(&self) -> Self;
    fn cos(&self) -> Self;
    fn tan(&self) -> Self {
        self.sin() / self.cos()
    }
    fn exp(&self) -> Self;
    fn ln(&self) -> Self;
    fn sqrt(&self) -> Self;
    fn sinh(&self) -> Self;
    fn cosh(&self) -> Self;
    fn tanh(&self) -> Self {
        self.sinh() / self.cosh()
    }
    fn abs(&self) -> Self {
        if self.value() < 0.0 {
            -self.clone()
        } else {
            self.clone()
        }
    }
}

impl Scalar for f64 {
    const CARRIES_DERIVATIVES: bool = false;

    fn lift(&self, c: f64) -> Self {
        c
    }
    fn value(&self) -> f64 {
        *self
    }
    fn powi(&self, k: i32) -> Self {
        // repeated multiplication keeps f64 and jet evaluation bit-compatible
        let n = k.unsigned_abs();
        let mut acc = 1.0;
        let mut base = *self;
        let mut bits = n;
        while bits > 0 {
            if bits & 1 == 1 {
                acc *= base;
            }
            bits >>= 1;
            if bits > 0 {
                base *= base;
            }
        }
        if k < 0 {
            1.0 / acc
        } else {
            acc
        }
    }
    fn powf(&self, exponent: &Self) -> Self {
        f64::powf(*self, *exponent)
    }
    fn sin(&self) -> Self {
        f64::sin(*self)
    }
    fn cos(&self) -> Self {
        f64::cos(*self)
    }
    fn tan(&self) -> Self {
        f64::tan(*self)
    }
    fn exp(&self) -> Self {
        f64::exp(*self)
    }
    fn ln(&self) -> Self {
        f64::ln(*self)
    }
    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }
    fn sinh(&self) -> Self {
        f64::sinh(*self)
    }
    fn cosh(&self) -> Self {
        f64::cosh(*self)
    }
    fn tanh(&self) -> Self {
        f64::tanh(*self)
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
}

pub(super) fn eval_node<S: Scalar>(expr: &Expr, node: &Node, inputs: &[S]) -> Result<S, DomainError> {
    let fail = |reason: &'static str, at: &Node, argument: f64| DomainError {
        reason,
        subexpr: expr.render(at),
        argument,
        point: inputs.iter().map(Scalar::value).collect(),
    };
    let out = match node {
        Node::Num(v) => inputs[0].lift(*v),
        Node::Coord(i) => inputs[*i].clone(),
        Node::Const(i) => inputs[0].lift(expr.constants[*i].1),
        Node::Neg(a) => -eval_node(expr, a, inputs)?,
        Node::Binary(op, a, b) => {
            let x = eval_node(expr, a, inputs)?;
            let y = eval_node(expr, b, inputs)?;
            match op {
                BinOp::Add => x + y,
                BinOp::Sub => x - y,
                BinOp::Mul => x * y,
                BinOp::Div => {
                    if y.value() == 0.0 {
                        return Err(fail("division by zero", node, 0.0));
                    }
                    x / y
                }
                BinOp::Pow => {
                    if x.value() <= 0.0 {
                        return Err(fail("non-integer power of non-positive base", node, x.value()));
                    }
                    x.powf(&y)
                }
            }
        }
        Node::PowI(a, k) => {
            let x = eval_node(expr, a, inputs)?;
            if *k < 0 && x.value() == 0.0 {
                return Err(fail("negative power of zero", node, 0.0));
            }
            x.powi(*k)
        }
        Node::Call(func, a) => {
            let x = eval_node(expr, a, inputs)?;
            let v = x.value();
            match func {
                Func::Sin => x.sin(),
                Func::Cos => x.cos(),
                Func::Tan => {
                    if v.cos() == 0.0 {
                        return Err(fail("tangent pole", node, v));
                    }
                    x.tan()
                }
                Func::Exp => x.exp(),
                Func::Ln => {
                    if v <= 0.0 {
                        return Err(fail("logarithm of non-positive value", node, v));
                    }
                    x.ln()
                }
                Func::Sqrt => {
                    if v < 0.0 || (S::CARRIES_DERIVATIVES && v == 0.0) {
                        return Err(fail("square root outside its differentiable domain", node, v));
                    }
                    x.sqrt()
                }
                Func::Sinh => x.sinh(),
                Func::Cosh => x.cosh(),
                Func::Tanh => x.tanh(),
                Func::Abs => {
                    if S::CARRIES_DERIVATIVES && v == 0.0 {
                        return Err(fail("absolute value at its kink", node, v));
                    }
                    x.abs()
                }
            }
        }
    };
    if !out.value().is_finite() {
        return Err(fail("non-finite result", node, out.value()));
    }
    Ok(out)
}
