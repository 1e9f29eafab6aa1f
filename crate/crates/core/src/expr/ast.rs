use std::fmt;
use std::sync::Arc;

/// Reserved unary functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Func {
    Sin,
    Cos,
    Tan,
    Sinh,
    Cosh,
    Tanh,
    Exp,
    Log,
    Sqrt,
    Atan,
    Neg,
}

impl Func {
    pub const ALL: [Func; 11] = [
        Func::Sin,
        Func::Cos,
        Func::Tan,
        Func::Sinh,
        Func::Cosh,
        Func::Tanh,
        Func::Exp,
        Func::Log,
        Func::Sqrt,
        Func::Atan,
        Func::Neg,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Sinh => "sinh",
            Func::Cosh => "cosh",
            Func::Tanh => "tanh",
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sqrt => "sqrt",
            Func::Atan => "atan",
            Func::Neg => "neg",
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        Func::ALL.iter().copied().find(|f| f.name() == name)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Constant {
    Pi,
    E,
}

impl Constant {
    pub fn value(self) -> f64 {
        match self {
            Constant::Pi => std::f64::consts::PI,
            Constant::E => std::f64::consts::E,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Constant::Pi => "pi",
            Constant::E => "e",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl BinOp {
    fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
        }
    }
}

/// Expression tree node. Variables refer to coordinates by index.
#[derive(Clone, Debug, PartialEq)]
pub enum Node {
    Num(f64),
    Const(Constant),
    Var(usize),
    /// Prefix minus written as `-atom`.
    Minus(Box<Node>),
    Call(Func, Box<Node>),
    Binary(BinOp, Box<Node>, Box<Node>),
    /// Power with a variable-free exponent.
    Pow(Box<Node>, Box<Node>),
}

impl Node {
    pub fn num(v: f64) -> Node {
        Node::Num(v)
    }

    pub fn binary(op: BinOp, a: Node, b: Node) -> Node {
        Node::Binary(op, Box::new(a), Box::new(b))
    }

    /// Number of direct children.
    pub fn arity(&self) -> usize {
        match self {
            Node::Num(_) | Node::Const(_) | Node::Var(_) => 0,
            Node::Minus(_) | Node::Call(..) => 1,
            Node::Binary(..) | Node::Pow(..) => 2,
        }
    }

    pub fn has_vars(&self) -> bool {
        match self {
            Node::Num(_) | Node::Const(_) => false,
            Node::Var(_) => true,
            Node::Minus(a) | Node::Call(_, a) => a.has_vars(),
            Node::Binary(_, a, b) | Node::Pow(a, b) => a.has_vars() || b.has_vars(),
        }
    }

    /// Value of a variable-free subtree.
    pub fn constant_value(&self) -> Option<f64> {
        if self.has_vars() {
            return None;
        }
        crate::expr::eval::eval_node::<f64>(self, &[], &[]).ok()
    }

    fn is_atom(&self) -> bool {
        match self {
            Node::Num(_) | Node::Const(_) | Node::Var(_) | Node::Call(..) => true,
            Node::Minus(a) => a.is_atom(),
            _ => false,
        }
    }

    pub(crate) fn write(&self, f: &mut fmt::Formatter<'_>, names: &[String]) -> fmt::Result {
        match self {
            Node::Num(v) => write!(f, "{v}"),
            Node::Const(c) => f.write_str(c.name()),
            Node::Var(i) => f.write_str(&names[*i]),
            Node::Minus(a) => {
                f.write_str("-")?;
                write_wrapped(f, a, names, !a.is_atom())
            }
            Node::Call(func, a) => {
                write!(f, "{}(", func.name())?;
                a.write(f, names)?;
                f.write_str(")")
            }
            Node::Binary(op, a, b) => {
                let (left_paren, right_paren) = match op {
                    BinOp::Add | BinOp::Sub => (false, matches!(**b, Node::Binary(BinOp::Add | BinOp::Sub, ..))),
                    BinOp::Mul | BinOp::Div => (
                        matches!(**a, Node::Binary(BinOp::Add | BinOp::Sub, ..)),
                        matches!(**b, Node::Binary(..)),
                    ),
                };
                write_wrapped(f, a, names, left_paren)?;
                write!(f, " {} ", op.symbol())?;
                write_wrapped(f, b, names, right_paren)
            }
            Node::Pow(a, b) => {
                write_wrapped(f, a, names, !a.is_atom())?;
                f.write_str("^")?;
                write_wrapped(f, b, names, !b.is_atom())
            }
        }
    }
}

fn write_wrapped(f: &mut fmt::Formatter<'_>, n: &Node, names: &[String], paren: bool) -> fmt::Result {
    if paren {
        f.write_str("(")?;
        n.write(f, names)?;
        f.write_str(")")
    } else {
        n.write(f, names)
    }
}

/// A parsed scalar expression over the coordinates of one chart.
#[derive(Clone, Debug, PartialEq)]
pub struct Expression {
    root: Node,
    coords: Arc<[String]>,
}

impl Expression {
    pub fn from_node(root: Node, coords: Arc<[String]>) -> Self {
        Expression { root, coords }
    }

    pub fn constant(v: f64, coords: Arc<[String]>) -> Self {
        Expression { root: Node::Num(v), coords }
    }

    pub fn root(&self) -> &Node {
        &self.root
    }

    pub fn coords(&self) -> &Arc<[String]> {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// True when the expression is the literal zero.
    pub fn is_zero_literal(&self) -> bool {
        matches!(self.root, Node::Num(v) if v == 0.0)
    }

    /// Replaces each coordinate variable by the corresponding expression.
    /// The result lives on the coordinates of the replacements.
    pub fn substitute(&self, replacements: &[Expression]) -> Expression {
        assert_eq!(replacements.len(), self.dim(), "one replacement per coordinate");
        let coords = replacements
            .first()
            .map(|r| r.coords.clone())
            .unwrap_or_else(|| self.coords.clone());
        fn go(n: &Node, r: &[Expression]) -> Node {
            match n {
                Node::Var(i) => r[*i].root.clone(),
                Node::Num(_) | Node::Const(_) => n.clone(),
                Node::Minus(a) => Node::Minus(Box::new(go(a, r))),
                Node::Call(f, a) => Node::Call(*f, Box::new(go(a, r))),
                Node::Binary(op, a, b) => Node::binary(*op, go(a, r), go(b, r)),
                Node::Pow(a, b) => Node::Pow(Box::new(go(a, r)), b.clone()),
            }
        }
        Expression { root: go(&self.root, replacements), coords }
    }

    /// Symbolic partial derivative with respect to coordinate `var`.
    /// Only literal zeros and ones are folded.
    pub fn derivative(&self, var: usize) -> Expression {
        Expression {
            root: diff(&self.root, var),
            coords: self.coords.clone(),
        }
    }

    /// Combines two expressions on the same chart.
    pub fn combine(op: BinOp, a: &Expression, b: &Expression) -> Expression {
        Expression {
            root: Node::binary(op, a.root.clone(), b.root.clone()),
            coords: a.coords.clone(),
        }
    }
}

fn is_num(n: &Node, v: f64) -> bool {
    matches!(n, Node::Num(x) if *x == v)
}

fn add(a: Node, b: Node) -> Node {
    if is_num(&a, 0.0) {
        b
    } else if is_num(&b, 0.0) {
        a
    } else {
        Node::binary(BinOp::Add, a, b)
    }
}

fn sub(a: Node, b: Node) -> Node {
    if is_num(&b, 0.0) {
        a
    } else if is_num(&a, 0.0) {
        Node::Call(Func::Neg, Box::new(b))
    } else {
        Node::binary(BinOp::Sub, a, b)
    }
}

fn mul(a: Node, b: Node) -> Node {
    if is_num(&a, 0.0) || is_num(&b, 0.0) {
        Node::Num(0.0)
    } else if is_num(&a, 1.0) {
        b
    } else if is_num(&b, 1.0) {
        a
    } else {
        Node::binary(BinOp::Mul, a, b)
    }
}

fn div(a: Node, b: Node) -> Node {
    if is_num(&a, 0.0) {
        Node::Num(0.0)
    } else {
        Node::binary(BinOp::Div, a, b)
    }
}

fn call(f: Func, a: &Node) -> Node {
    Node::Call(f, Box::new(a.clone()))
}

fn diff(n: &Node, v: usize) -> Node {
    match n {
        Node::Num(_) | Node::Const(_) => Node::Num(0.0),
        Node::Var(i) => Node::Num(if *i == v { 1.0 } else { 0.0 }),
        Node::Minus(a) => {
            let d = diff(a, v);
            if is_num(&d, 0.0) {
                d
            } else {
                call(Func::Neg, &d)
            }
        }
        Node::Binary(op, a, b) => {
            let (da, db) = (diff(a, v), diff(b, v));
            match op {
                BinOp::Add => add(da, db),
                BinOp::Sub => sub(da, db),
                BinOp::Mul => add(mul(da, (**b).clone()), mul((**a).clone(), db)),
                BinOp::Div => {
                    let num = sub(mul(da, (**b).clone()), mul((**a).clone(), db));
                    div(num, Node::Pow(b.clone(), Box::new(Node::Num(2.0))))
                }
            }
        }
        Node::Pow(a, e) => {
            let da = diff(a, v);
            if is_num(&da, 0.0) {
                return da;
            }
            let lowered = Node::binary(BinOp::Sub, (**e).clone(), Node::Num(1.0));
            let outer = mul((**e).clone(), Node::Pow(a.clone(), Box::new(lowered)));
            mul(outer, da)
        }
        Node::Call(f, a) => {
            let da = diff(a, v);
            if is_num(&da, 0.0) {
                return da;
            }
            let outer = match f {
                Func::Sin => call(Func::Cos, a),
                Func::Cos => call(Func::Neg, &call(Func::Sin, a)),
                Func::Tan => div(Node::Num(1.0), Node::Pow(Box::new(call(Func::Cos, a)), Box::new(Node::Num(2.0)))),
                Func::Sinh => call(Func::Cosh, a),
                Func::Cosh => call(Func::Sinh, a),
                Func::Tanh => div(Node::Num(1.0), Node::Pow(Box::new(call(Func::Cosh, a)), Box::new(Node::Num(2.0)))),
                Func::Exp => call(Func::Exp, a),
                Func::Log => div(Node::Num(1.0), (**a).clone()),
                Func::Sqrt => div(Node::Num(0.5), call(Func::Sqrt, a)),
                Func::Atan => div(
                    Node::Num(1.0),
                    Node::binary(BinOp::Add, Node::Num(1.0), Node::Pow(a.clone(), Box::new(Node::Num(2.0)))),
                ),
                Func::Neg => Node::Minus(Box::new(Node::Num(1.0))),
            };
            mul(outer, da)
        }
    }
}

impl fmt::Display for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.root.write(f, &self.coords)
    }
}

/// Prints a bare node using the given coordinate names.
pub fn node_to_string(n: &Node, names: &[String]) -> String {
    struct W<'a>(&'a Node, &'a [String]);
    impl fmt::Display for W<'_> {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            self.0.write(f, self.1)
        }
    }
    W(n, names).to_string()
}
