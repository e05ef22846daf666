use std::collections::BTreeMap;

use eulerop::identities::apply_poly;
use eulerop::number::{frac, int, Rational};
use eulerop::{DiffOp, LaurentPoly};
use eulerop_cli::expr::{operator, parse_operator, Expr, ExprError};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const CORPUS: [&str; 50] = [
    "x",
    "d",
    "D",
    "1",
    "3/4",
    "a",
    "x*d",
    "d*x",
    "x*d - d*x",
    "D^3",
    "d^0",
    "x^2*d^2",
    "4*x^2*d^2 + 2*x*d + x",
    "x*d^2 + d + x*1",
    "x*d^2 + (g - x)*d - a",
    "x*(1 - x)*d^2 + (g - (a + b + 1)*x)*d - a*b",
    "-x",
    "--d",
    "-(x + d)",
    "x*-d",
    "(x)",
    "((d))",
    "(x + d)^3",
    "(x*d + 1/2)^2",
    "D*(D - 1) + x^2",
    "D*(D + g - 1) - x*(D + a)",
    "d^2 - 2*x*d + 2*n",
    "(1 - x^2)*d^2 - 3*x*d + n*(n + 2)",
    "x*d^2 + (a + 1 - x)*d + n",
    "x^2*d^2 + x^2",
    "d^2 + 1 - x^2/1*1/2",
    "x - d - D",
    "x + d + D + 1",
    "2*x*d*x*d",
    "(d*x)^2 - (x*d)^2",
    "7/3*D^2 - 1/3",
    "x^10",
    "d^5*x^5",
    "(D + 1)*(D + 2)*(D + 3)",
    "D*(D + b1 - 1)*(D + b2 - 1) - x*(D + a1)*(D + a2)*(D + a3)",
    "x^3*d^3 - 3*x^2*d^2",
    "-1/2*d + x",
    "(x - 1/2*d)^2",
    "x*(x*(x*d))",
    "(D - 1/2)*(D + 1/2)",
    "0",
    "0*x + d",
    "a - a",
    "d*d - d^2",
    "(x + 1)^2*d - (x^2 + 2*x + 1)*d",
];

fn bindings() -> BTreeMap<String, Rational> {
    [
        ("a", frac(-3, 2)),
        ("b", int(2)),
        ("g", frac(5, 3)),
        ("n", int(4)),
        ("a1", int(-2)),
        ("a2", frac(1, 2)),
        ("a3", int(3)),
        ("b1", frac(7, 4)),
        ("b2", int(5)),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), v))
    .collect()
}

/// Acts with the AST on a polynomial by following its structure.
fn eval(e: &Expr, p: &LaurentPoly, b: &BTreeMap<String, Rational>) -> LaurentPoly {
    match e {
        Expr::Num(r) => p.scale(r),
        Expr::Param(s) => p.scale(&b[s]),
        Expr::X => p.shift(1),
        Expr::Dx => p.derivative(),
        Expr::Euler => p.derivative().shift(1),
        Expr::Add(l, r) => &eval(l, p, b) + &eval(r, p, b),
        Expr::Sub(l, r) => &eval(l, p, b) - &eval(r, p, b),
        Expr::Mul(l, r) => eval(l, &eval(r, p, b), b),
        Expr::Pow(a, n) => (0..*n).fold(p.clone(), |acc, _| eval(a, &acc, b)),
        Expr::Neg(a) => -&eval(a, p, b),
        Expr::Group(a) => eval(a, p, b),
    }
}

#[test]
fn corpus_round_trips() {
    for text in CORPUS {
        let ast = parse_operator(text).unwrap_or_else(|e| panic!("{text:?}: {e}"));
        let printed = ast.to_string();
        assert_eq!(parse_operator(&printed).unwrap(), ast, "{text:?} printed as {printed:?}");
    }
}

#[test]
fn lowering_matches_structure() {
    let b = bindings();
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for text in CORPUS {
        let ast = parse_operator(text).unwrap();
        let op = ast.lower(&b).unwrap();
        for _ in 0..20 {
            let k = rng.gen_range(0..12);
            let c = frac(rng.gen_range(-9..=9), rng.gen_range(1..=5));
            let m = LaurentPoly::monomial(c, k);
            assert_eq!(apply_poly(&op, &m), eval(&ast, &m, &b), "{text:?} on x^{k}");
        }
    }
}

#[test]
fn hand_built_operators() {
    let b = bindings();
    let none = BTreeMap::new();
    assert_eq!(operator("x*d - d*x", &none).unwrap(), DiffOp::scalar(int(-1)));
    assert_eq!(operator("D", &none).unwrap(), DiffOp::term(int(1), 1, 1));
    assert_eq!(
        operator("D^2", &none).unwrap(),
        &DiffOp::term(int(1), 2, 2) + &DiffOp::term(int(1), 1, 1)
    );
    let mut ch = DiffOp::term(int(1), 1, 2);
    ch.add_term(0, 1, frac(5, 3));
    ch.add_term(1, 1, int(-1));
    ch.add_term(0, 0, frac(3, 2));
    assert_eq!(operator("x*d^2 + (g - x)*d - a", &b).unwrap(), ch);
    assert_eq!(operator("0", &none).unwrap(), DiffOp::zero());
    assert_eq!(operator("d*d - d^2", &none).unwrap(), DiffOp::zero());
    assert_eq!(operator("(x - 1/2*d)^2", &none).unwrap(), {
        let a = &DiffOp::x() - &DiffOp::term(frac(1, 2), 0, 1);
        a.compose(&a)
    });
}

#[test]
fn rejects_with_position() {
    for (text, offset) in [("x*", 2), ("x)", 1), ("2^-1", 2), ("x & d", 2), ("d^3/2", 2)] {
        match parse_operator(text) {
            Err(ExprError::Syntax { offset: o, .. }) => assert_eq!(o, offset, "{text:?}"),
            other => panic!("{text:?}: {other:?}"),
        }
    }
    assert!(matches!(operator("q*x", &BTreeMap::new()), Err(ExprError::Unbound(s)) if s == "q"));
}

fn ast() -> impl proptest::strategy::Strategy<Value = Expr> {
    use proptest::prelude::*;
    let leaf = prop_oneof![
        (0i64..30, 1i64..5).prop_map(|(p, q)| Expr::Num(frac(p, q))),
        prop::sample::select(vec!["a", "b", "g", "n"]).prop_map(|s| Expr::Param(s.to_string())),
        Just(Expr::X),
        Just(Expr::Dx),
        Just(Expr::Euler),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        let group = inner.clone().prop_map(|e| Expr::Group(Box::new(e)));
        prop_oneof![
            (inner.clone(), term_operand(inner.clone())).prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
            (inner.clone(), term_operand(inner.clone())).prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
            (term_operand(inner.clone()), factor_operand(inner.clone()))
                .prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
            (atom_operand(inner.clone()), 0u32..4).prop_map(|(a, n)| Expr::Pow(Box::new(a), n)),
            factor_operand(inner.clone()).prop_map(|a| Expr::Neg(Box::new(a))),
            group,
        ]
    })
}

/// Wraps anything that would not reparse in the given position.
fn wrap_unless(e: Expr, ok: fn(&Expr) -> bool) -> Expr {
    if ok(&e) {
        e
    } else {
        Expr::Group(Box::new(e))
    }
}

fn is_atom(e: &Expr) -> bool {
    matches!(e, Expr::Num(_) | Expr::Param(_) | Expr::X | Expr::Dx | Expr::Euler | Expr::Group(_))
}

fn is_factor(e: &Expr) -> bool {
    is_atom(e) || matches!(e, Expr::Pow(b, _) if is_atom(b) && !matches!(**b, Expr::Num(_))) || matches!(e, Expr::Neg(_))
}

fn is_term(e: &Expr) -> bool {
    is_factor(e) || matches!(e, Expr::Mul(..))
}

fn atom_operand(s: impl proptest::strategy::Strategy<Value = Expr>) -> impl proptest::strategy::Strategy<Value = Expr> {
    // A literal base would print as `p/q^n`; keep literals out of the base.
    s.prop_map(|e| match e {
        Expr::Num(_) => Expr::Group(Box::new(e)),
        e => wrap_unless(e, is_atom),
    })
}

fn factor_operand(s: impl proptest::strategy::Strategy<Value = Expr>) -> impl proptest::strategy::Strategy<Value = Expr> {
    s.prop_map(|e| wrap_unless(e, is_factor))
}

fn term_operand(s: impl proptest::strategy::Strategy<Value = Expr>) -> impl proptest::strategy::Strategy<Value = Expr> {
    s.prop_map(|e| wrap_unless(e, is_term))
}

proptest::proptest! {
    #[test]
    fn generated_asts_round_trip(e in ast()) {
        let printed = e.to_string();
        let back = parse_operator(&printed).unwrap();
        proptest::prop_assert_eq!(&back, &e, "printed {}", printed);
        let b = bindings();
        let m = LaurentPoly::monomial(int(1), 5);
        proptest::prop_assert_eq!(apply_poly(&back.lower(&b).unwrap(), &m), eval(&e, &m, &b));
    }
}
