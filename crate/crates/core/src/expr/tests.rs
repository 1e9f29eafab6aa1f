use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::Jet2;

fn coords(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

#[test]
fn sum_has_two_children() {
    let e = parse("x1^2 + sin(x2)", &coords(2)).unwrap();
    match e.root() {
        Node::Binary(BinOp::Add, a, b) => {
            assert!(matches!(**a, Node::Pow(..)));
            assert!(matches!(**b, Node::Call(Func::Sin, _)));
        }
        other => panic!("unexpected root {other:?}"),
    }
    assert_eq!(e.root().arity(), 2);
}

#[test]
fn unknown_identifier() {
    let err = parse("x5", &coords(4)).unwrap_err();
    assert_eq!(err.kind, ParseErrorKind::UnknownIdentifier("x5".into()));
    assert_eq!(err.offset, 0);
}

#[test]
fn unterminated_group_reports_offset() {
    let err = parse("2*(x1+", &coords(1)).unwrap_err();
    assert!(matches!(err.kind, ParseErrorKind::Syntax(_)));
    assert_eq!(err.offset, 6);
}

#[test]
fn arity_errors() {
    let err = parse("sin(x1, x2)", &coords(2)).unwrap_err();
    assert_eq!(
        err.kind,
        ParseErrorKind::WrongArity { name: "sin".into(), expected: 1, found: 2 }
    );
    assert!(matches!(parse("cos", &coords(1)).unwrap_err().kind, ParseErrorKind::WrongArity { .. }));
    assert!(matches!(parse("x1^x1", &coords(1)).unwrap_err().kind, ParseErrorKind::NonConstantExponent));
    assert!(parse("", &coords(1)).is_err());
    assert!(parse("1 2", &coords(1)).is_err());
}

#[test]
fn prefix_minus_binds_to_atom() {
    let e = parse("-x1^2", &coords(1)).unwrap();
    assert_eq!(e.eval(&[3.0]).unwrap(), 9.0);
    let e = parse("-(x1^2)", &coords(1)).unwrap();
    assert_eq!(e.eval(&[3.0]).unwrap(), -9.0);
}

#[test]
fn square_jet() {
    let j = parse("x1^2", &coords(1)).unwrap().eval_jet2(&[3.0]).unwrap();
    assert_eq!((j.value(), j.grad(0), j.hess(0, 0)), (9.0, 6.0, 2.0));
}

#[test]
fn sine_jet_at_origin() {
    let j = parse("sin(x1)", &coords(1)).unwrap().eval_jet2(&[0.0]).unwrap();
    assert_eq!((j.value(), j.grad(0), j.hess(0, 0)), (0.0, 1.0, 0.0));
}

#[test]
fn exp_product_jet_matches_closed_form() {
    let j = parse("exp(x1*x2)", &coords(2)).unwrap().eval_jet2(&[1.0, 1.0]).unwrap();
    let e = std::f64::consts::E;
    let close = |a: f64, b: f64| (a - b).abs() < 1e-14 * b.abs().max(1.0);
    assert!(close(j.value(), e));
    assert!(close(j.grad(0), e) && close(j.grad(1), e));
    assert!(close(j.hess(0, 0), e) && close(j.hess(0, 1), 2.0 * e) && close(j.hess(1, 1), e));
}

#[test]
fn parsed_product_equals_jet_product() {
    let a = Jet2::variable(2.0, 0, 2);
    let b = Jet2::variable(3.0, 1, 2);
    let direct = jet_arith(BinOp::Mul, &a, &b).unwrap();
    let parsed = parse("x1*x2", &coords(2)).unwrap().eval_jet2(&[2.0, 3.0]).unwrap();
    assert_eq!(direct, parsed);
}

#[test]
fn domain_errors_name_the_node() {
    let e = parse("1 + log(x1 - 1)", &coords(1)).unwrap();
    let err = e.eval_jet2(&[1.0]).unwrap_err();
    assert_eq!(err.node, "log(x1 - 1)");
    assert_eq!(err.point, vec![1.0]);
    assert!(parse("x1^0.5", &coords(1)).unwrap().eval_jet2(&[-1.0]).is_err());
    assert!(parse("1/x1", &coords(1)).unwrap().eval(&[0.0]).is_err());
    assert!(parse("x1^(-2)", &coords(1)).unwrap().eval_jet2(&[0.0]).is_err());
}

#[test]
fn constants() {
    let e = parse("pi + e", &coords(1)).unwrap();
    assert_eq!(e.eval(&[0.0]).unwrap(), std::f64::consts::PI + std::f64::consts::E);
}

#[test]
fn single_precision_evaluation() {
    let e = parse("x1*x2 + sqrt(x1)", &coords(2)).unwrap();
    let j = e.eval_jet2(&[4.0_f32, 2.0]).unwrap();
    assert!((j.value() - 10.0).abs() < 1e-5);
    assert!((j.grad(0) - 2.25).abs() < 1e-5);
}

#[test]
fn substitution_composes() {
    let f = parse("y1*y2 + y1^2", &["y1".to_string(), "y2".to_string()]).unwrap();
    let c: Arc<[String]> = Arc::from(coords(2));
    let g1 = parse_shared("x1 + x2", c.clone()).unwrap();
    let g2 = parse_shared("x1*x2", c).unwrap();
    let h = f.substitute(&[g1, g2]);
    let x = [1.5_f64, -0.5];
    let (s, p) = (x[0] + x[1], x[0] * x[1]);
    assert!((h.eval(&x).unwrap() - (s * p + s * s)).abs() < 1e-14);
}

#[test]
fn symbolic_derivative_matches_jet() {
    let e = parse("sin(x1*x2)/(1 + x1^2) + sqrt(x2) * tanh(x1) - atan(x2)^3", &coords(2)).unwrap();
    let x = [0.7_f64, 1.3];
    let j = e.eval_jet2(&x).unwrap();
    for k in 0..2 {
        let d = e.derivative(k);
        assert!((d.eval(&x).unwrap() - j.grad(k)).abs() < 1e-13, "{d}");
    }
}

fn central_fd(e: &Expression, x: &[f64], h: f64) -> (Vec<f64>, Vec<Vec<f64>>) {
    let m = x.len();
    let grad = (0..m)
        .map(|i| {
            let mut p = x.to_vec();
            let mut q = x.to_vec();
            p[i] += h;
            q[i] -= h;
            (e.eval(&p).unwrap() - e.eval(&q).unwrap()) / (2.0 * h)
        })
        .collect();
    let hess = (0..m)
        .map(|i| {
            let mut p = x.to_vec();
            let mut q = x.to_vec();
            p[i] += h;
            q[i] -= h;
            let (gp, gq) = (e.eval_jet2(&p).unwrap(), e.eval_jet2(&q).unwrap());
            (0..m).map(|j| (gp.grad(j) - gq.grad(j)) / (2.0 * h)).collect()
        })
        .collect();
    (grad, hess)
}

fn arb_node(depth: u32) -> BoxedStrategy<Node> {
    let leaf = prop_oneof![
        (0u32..1000).prop_map(|v| Node::Num(v as f64 / 8.0)),
        (0usize..3).prop_map(Node::Var),
        Just(Node::Const(Constant::Pi)),
    ];
    leaf.prop_recursive(depth, 32, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone(), 0usize..4).prop_map(|(a, b, k)| {
                let op = [BinOp::Add, BinOp::Sub, BinOp::Mul, BinOp::Div][k];
                Node::binary(op, a, b)
            }),
            (inner.clone(), 0usize..11).prop_map(|(a, k)| Node::Call(Func::ALL[k], Box::new(a))),
            inner.clone().prop_map(|a| Node::Minus(Box::new(a))),
            (inner, -3i32..5).prop_map(|(a, p)| Node::Pow(Box::new(a), Box::new(Node::Num(p.abs() as f64)))),
        ]
    })
    .boxed()
}

fn smooth_node(depth: u32) -> BoxedStrategy<Node> {
    let leaf = prop_oneof![
        (1u32..20).prop_map(|v| Node::Num(v as f64 / 4.0)),
        (0usize..3).prop_map(Node::Var),
    ];
    leaf.prop_recursive(depth, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone(), 0usize..3).prop_map(|(a, b, k)| {
                Node::binary([BinOp::Add, BinOp::Sub, BinOp::Mul][k], a, b)
            }),
            (inner.clone(), prop_oneof![Just(Func::Sin), Just(Func::Cos), Just(Func::Atan), Just(Func::Tanh)])
                .prop_map(|(a, f)| Node::Call(f, Box::new(a))),
            inner.clone().prop_map(|a| {
                let denom = Node::binary(BinOp::Add, Node::Num(2.0), Node::Pow(Box::new(a), Box::new(Node::Num(2.0))));
                Node::binary(BinOp::Div, Node::Num(1.0), denom)
            }),
            inner.prop_map(|a| Node::Call(Func::Exp, Box::new(Node::Call(Func::Sin, Box::new(a))))),
        ]
    })
    .boxed()
}

proptest! {
    #[test]
    fn print_parse_round_trip(n in arb_node(4)) {
        let names: Arc<[String]> = Arc::from(coords(3));
        let e = Expression::from_node(n, names.clone());
        let text = e.to_string();
        let back = parse_shared(&text, names).unwrap();
        prop_assert_eq!(back.root(), e.root(), "text: {}", text);
    }

    #[test]
    fn jets_agree_with_finite_differences(
        n in smooth_node(3),
        x in proptest::array::uniform3(-1.0f64..1.0),
    ) {
        let e = Expression::from_node(n, Arc::from(coords(3)));
        let j = e.eval_jet2(&x).unwrap();
        let (g, h) = central_fd(&e, &x, 1e-5);
        for i in 0..3 {
            prop_assert!((j.grad(i) - g[i]).abs() <= 1e-6 * g[i].abs().max(1.0));
            for k in 0..3 {
                prop_assert!((j.hess(i, k) - h[i][k]).abs() <= 1e-6 * h[i][k].abs().max(1.0));
            }
        }
    }

    #[test]
    fn composite_jet_equals_jet_arith(
        a in smooth_node(2),
        b in smooth_node(2),
        k in 0usize..3,
        x in proptest::array::uniform3(-1.0f64..1.0),
    ) {
        let names: Arc<[String]> = Arc::from(coords(3));
        let op = [BinOp::Add, BinOp::Sub, BinOp::Mul][k];
        let ea = Expression::from_node(a.clone(), names.clone());
        let eb = Expression::from_node(b.clone(), names.clone());
        let whole = Expression::from_node(Node::binary(op, a, b), names);
        let direct = whole.eval_jet2(&x).unwrap();
        let combined = jet_arith(op, &ea.eval_jet2(&x).unwrap(), &eb.eval_jet2(&x).unwrap()).unwrap();
        prop_assert!((direct.value() - combined.value()).abs() <= 1e-12 * (1.0 + direct.value().abs()));
        for i in 0..3 {
            prop_assert!((direct.grad(i) - combined.grad(i)).abs() <= 1e-12 * (1.0 + direct.grad(i).abs()));
            for j in 0..3 {
                prop_assert!((direct.hess(i, j) - combined.hess(i, j)).abs() <= 1e-12 * (1.0 + direct.hess(i, j).abs()));
            }
        }
    }
}
