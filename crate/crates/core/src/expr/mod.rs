//! Closed-form expression language for geometric data.
//!
//! Grammar:
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := atom ('^' atom)?
//! atom   := number | ident | ident '(' expr ')' | '(' expr ')' | '-' atom
//! ```
//!
//! Note that `-x^2` parses as `(-x)^2`; write `-(x^2)` for the negated square.
//! Exponents must be free of coordinates. Integer exponents are evaluated by
//! repeated multiplication, other exponents need a positive base.

mod ast;
mod error;
pub(crate) mod eval;
mod parser;

pub use ast::{node_to_string, BinOp, Constant, Expression, Func, Node};
pub use error::{EvalError, ParseError, ParseErrorKind};
pub use parser::{parse, parse_shared};

/// Combines two jets with a binary operator; `None` on division by a zero
/// value.
pub fn jet_arith<T: crate::Scalar>(
    op: BinOp,
    a: &crate::Jet2<T>,
    b: &crate::Jet2<T>,
) -> Option<crate::Jet2<T>> {
    match op {
        BinOp::Add => Some(a + b),
        BinOp::Sub => Some(a - b),
        BinOp::Mul => Some(a * b),
        BinOp::Div => a.checked_div(b),
    }
}

#[cfg(test)]
mod tests;
