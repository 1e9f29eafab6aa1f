use super::ast::{node_to_string, BinOp, Expression, Func, Node};
use super::error::EvalError;
use crate::jet::Jet2;
use crate::scalar::Scalar;

/// Largest exponent magnitude evaluated by repeated multiplication.
const MAX_INT_POWER: f64 = 64.0;

fn domain<T: Scalar>(n: &Node, names: &[String], x: &[T], reason: &str) -> EvalError {
    EvalError {
        node: node_to_string(n, names),
        point: x.iter().map(|v| v.as_f64()).collect(),
        reason: reason.to_string(),
    }
}

fn integer_exponent(p: f64) -> Option<i64> {
    (p.fract() == 0.0 && p.abs() <= MAX_INT_POWER).then_some(p as i64)
}

pub(crate) fn eval_node<T: Scalar>(n: &Node, x: &[T], names: &[String]) -> Result<T, EvalError> {
    let v = match n {
        Node::Num(v) => T::lit(*v),
        Node::Const(c) => T::lit(c.value()),
        Node::Var(i) => x[*i],
        Node::Minus(a) => -eval_node(a, x, names)?,
        Node::Binary(op, a, b) => {
            let (a, b) = (eval_node(a, x, names)?, eval_node(b, x, names)?);
            match op {
                BinOp::Add => a + b,
                BinOp::Sub => a - b,
                BinOp::Mul => a * b,
                BinOp::Div => {
                    if b == T::zero() {
                        return Err(domain(n, names, x, "division by zero"));
                    }
                    a / b
                }
            }
        }
        Node::Pow(a, e) => {
            let base = eval_node(a, x, names)?;
            let p = eval_node::<f64>(e, &[], &[])?;
            match integer_exponent(p) {
                Some(k) => {
                    if k < 0 && base == T::zero() {
                        return Err(domain(n, names, x, "negative power of zero"));
                    }
                    base.powi(k as i32)
                }
                None => {
                    if base <= T::zero() {
                        return Err(domain(n, names, x, "non-integer power of a non-positive base"));
                    }
                    base.powf(T::lit(p))
                }
            }
        }
        Node::Call(f, a) => {
            let a = eval_node(a, x, names)?;
            match f {
                Func::Sin => a.sin(),
                Func::Cos => a.cos(),
                Func::Tan => a.tan(),
                Func::Sinh => a.sinh(),
                Func::Cosh => a.cosh(),
                Func::Tanh => a.tanh(),
                Func::Exp => a.exp(),
                Func::Log => {
                    if a <= T::zero() {
                        return Err(domain(n, names, x, "logarithm of a non-positive value"));
                    }
                    a.ln()
                }
                Func::Sqrt => {
                    if a < T::zero() {
                        return Err(domain(n, names, x, "square root of a negative value"));
                    }
                    a.sqrt()
                }
                Func::Atan => a.atan(),
                Func::Neg => -a,
            }
        }
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(domain(n, names, x, "non-finite value"))
    }
}

fn jet_node<T: Scalar>(n: &Node, x: &[T], names: &[String]) -> Result<Jet2<T>, EvalError> {
    let m = x.len();
    let j = match n {
        Node::Num(v) => Jet2::constant(T::lit(*v), m),
        Node::Const(c) => Jet2::constant(T::lit(c.value()), m),
        Node::Var(i) => Jet2::variable(x[*i], *i, m),
        Node::Minus(a) => -&jet_node(a, x, names)?,
        Node::Binary(op, a, b) => {
            let (a, b) = (jet_node(a, x, names)?, jet_node(b, x, names)?);
            match op {
                BinOp::Add => &a + &b,
                BinOp::Sub => &a - &b,
                BinOp::Mul => &a * &b,
                BinOp::Div => a
                    .checked_div(&b)
                    .ok_or_else(|| domain(n, names, x, "division by zero"))?,
            }
        }
        Node::Pow(a, e) => {
            let base = jet_node(a, x, names)?;
            let p = eval_node::<f64>(e, &[], &[])?;
            match integer_exponent(p) {
                Some(k) => base
                    .powi(k)
                    .ok_or_else(|| domain(n, names, x, "negative power of zero"))?,
                None => {
                    let b = base.value();
                    if b <= T::zero() {
                        return Err(domain(n, names, x, "non-integer power of a non-positive base"));
                    }
                    let p = T::lit(p);
                    let f0 = b.powf(p);
                    let f1 = p * b.powf(p - T::one());
                    let f2 = p * (p - T::one()) * b.powf(p - T::lit(2.0));
                    base.compose(f0, f1, f2)
                }
            }
        }
        Node::Call(f, a) => {
            let a = jet_node(a, x, names)?;
            let v = a.value();
            let one = T::one();
            let two = T::lit(2.0);
            let (f0, f1, f2) = match f {
                Func::Sin => (v.sin(), v.cos(), -v.sin()),
                Func::Cos => (v.cos(), -v.sin(), -v.cos()),
                Func::Tan => {
                    let t = v.tan();
                    let s = one + t * t;
                    (t, s, two * t * s)
                }
                Func::Sinh => (v.sinh(), v.cosh(), v.sinh()),
                Func::Cosh => (v.cosh(), v.sinh(), v.cosh()),
                Func::Tanh => {
                    let t = v.tanh();
                    let s = one - t * t;
                    (t, s, -two * t * s)
                }
                Func::Exp => (v.exp(), v.exp(), v.exp()),
                Func::Log => {
                    if v <= T::zero() {
                        return Err(domain(n, names, x, "logarithm of a non-positive value"));
                    }
                    (v.ln(), one / v, -one / (v * v))
                }
                Func::Sqrt => {
                    if v <= T::zero() {
                        return Err(domain(n, names, x, "square root needs a positive argument for derivatives"));
                    }
                    let s = v.sqrt();
                    (s, one / (two * s), -one / (T::lit(4.0) * s * v))
                }
                Func::Atan => {
                    let d = one + v * v;
                    (v.atan(), one / d, -two * v / (d * d))
                }
                Func::Neg => (-v, -one, T::zero()),
            };
            a.compose(f0, f1, f2)
        }
    };
    if j.value().is_finite() && j.gradient().iter().all(|g| g.is_finite()) {
        Ok(j)
    } else {
        Err(domain(n, names, x, "non-finite jet"))
    }
}

impl Expression {
    /// Value at `x` (one entry per chart coordinate).
    pub fn eval<T: Scalar>(&self, x: &[T]) -> Result<T, EvalError> {
        assert_eq!(x.len(), self.dim(), "point dimension");
        eval_node(self.root(), x, self.coords())
    }

    /// Value, gradient and Hessian at `x`.
    pub fn eval_jet2<T: Scalar>(&self, x: &[T]) -> Result<Jet2<T>, EvalError> {
        assert_eq!(x.len(), self.dim(), "point dimension");
        jet_node(self.root(), x, self.coords())
    }
}
