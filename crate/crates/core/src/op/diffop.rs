//! Differential operators `sum c x^a (d/dx)^b` in normal-ordered form.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::number::{self, falling_factorial, Rational};
use crate::op::euler::EulerPoly;
use crate::xseries::{Direction, Truncation, XSeries};

/// One normal-ordered term `coeff * x^x_power * (d/dx)^d_order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpTerm {
    pub coeff: Rational,
    pub x_power: u32,
    pub d_order: u32,
}

impl OpTerm {
    /// Exponent shift `a - b`.
    pub fn degree(&self) -> i64 {
        self.x_power as i64 - self.d_order as i64
    }

    /// Image of `x^mu` as `(coefficient, exponent)`.
    pub fn act(&self, mu: &Rational) -> (Rational, Rational) {
        (
            &self.coeff * falling_factorial(mu, self.d_order),
            mu + Rational::from_integer(self.degree().into()),
        )
    }
}

/// Canonical sum of [`OpTerm`]s keyed by `(x_power, d_order)`; zero terms are dropped.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct DiffOp {
    terms: BTreeMap<(u32, u32), Rational>,
}

fn binomial(n: u32, k: u32) -> Rational {
    falling_factorial(&number::int(n as i64), k) / number::factorial(k)
}

impl DiffOp {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity() -> Self {
        Self::scalar(Rational::one())
    }

    pub fn scalar(c: Rational) -> Self {
        Self::term(c, 0, 0)
    }

    pub fn term(c: Rational, x_power: u32, d_order: u32) -> Self {
        let mut op = Self::zero();
        op.add_term(x_power, d_order, c);
        op
    }

    /// Multiplication by `x`.
    pub fn x() -> Self {
        Self::term(Rational::one(), 1, 0)
    }

    /// `d/dx`
    pub fn d() -> Self {
        Self::term(Rational::one(), 0, 1)
    }

    /// Euler operator `x d/dx`.
    pub fn euler() -> Self {
        Self::term(Rational::one(), 1, 1)
    }

    /// `F(D)` written in normal order: `D^k = sum S(k,j) x^j d^j`.
    pub fn from_euler(f: &EulerPoly) -> Self {
        let mut out = Self::zero();
        let mut dk = Self::identity();
        for c in f.coeffs() {
            out = &out + &dk.scale(c);
            dk = &dk * &Self::euler();
        }
        out
    }

    pub fn add_term(&mut self, x_power: u32, d_order: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let key = (x_power, d_order);
        let slot = self.terms.entry(key).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = OpTerm> + '_ {
        self.terms.iter().map(|(&(a, b), c)| OpTerm { coeff: c.clone(), x_power: a, d_order: b })
    }

    pub fn coeff(&self, x_power: u32, d_order: u32) -> Rational {
        self.terms.get(&(x_power, d_order)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(&k, v)| (k, v * c)).collect() }
    }

    /// Distinct term degrees `a - b`, ascending.
    pub fn degrees(&self) -> BTreeSet<i64> {
        self.terms().map(|t| t.degree()).collect()
    }

    /// The single degree when every term shares it; the zero operator has none.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        let ds = self.degrees();
        (ds.len() == 1).then(|| *ds.iter().next().unwrap())
    }

    /// The terms of one degree.
    pub fn degree_part(&self, degree: i64) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(&(a, b), _)| a as i64 - b as i64 == degree)
                .map(|(&k, c)| (k, c.clone()))
                .collect(),
        }
    }

    /// Left multiplication by `x^k`.
    pub fn mul_x_power(&self, k: u32) -> Self {
        Self { terms: self.terms.iter().map(|(&(a, b), c)| ((a + k, b), c.clone())).collect() }
    }

    /// Repeated composition.
    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::identity(), |acc, _| &acc * self)
    }

    /// `self o other` in normal order (Leibniz rule).
    pub fn compose(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&(a, b), c1) in &self.terms {
            for (&(c, e), c2) in &other.terms {
                // d^b x^c = sum_k C(b,k) c!/(c-k)! x^(c-k) d^(b-k)
                for k in 0..=b.min(c) {
                    let w = binomial(b, k) * falling_factorial(&number::int(c as i64), k);
                    out.add_term(a + c - k, b + e - k, c1 * c2 * w);
                }
            }
        }
        out
    }

    /// `[self, other] = self o other - other o self`
    pub fn commutator(&self, other: &Self) -> Self {
        &self.compose(other) - &other.compose(self)
    }

    /// Image of `x^mu` as `(exponent, coefficient)` pairs with nonzero coefficients.
    pub fn act_monomial(&self, mu: &Rational) -> Vec<(Rational, Rational)> {
        let mut out: BTreeMap<Rational, Rational> = BTreeMap::new();
        for t in self.terms() {
            let (c, e) = t.act(mu);
            *out.entry(e).or_insert_with(Rational::zero) += c;
        }
        out.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    /// Exact action on a series, capped at `order` offsets.
    ///
    /// The result's base moves by the lowest (ascending) or highest (descending)
    /// term degree, which keeps the input's window size.
    pub fn apply(&self, s: &XSeries, order: u32) -> XSeries {
        let base_shift = match s.direction() {
            Direction::Ascending => self.degrees().first().copied(),
            Direction::Descending => self.degrees().last().copied(),
        }
        .unwrap_or(0);
        let base = s.base_exponent() + Rational::from_integer(base_shift.into());
        let sign = s.direction().sign();
        let mut coeffs: Vec<(u32, Rational)> = Vec::new();
        for (k, c) in s.offsets() {
            let mu = s.exponent_at(k);
            for t in self.terms() {
                let (w, _) = t.act(&mu);
                if w.is_zero() {
                    continue;
                }
                let off = k as i64 + sign * (t.degree() - base_shift);
                coeffs.push((off as u32, w * c));
            }
        }
        XSeries::new(base, s.direction(), s.truncation(), coeffs).with_order(match s.truncation() {
            Truncation::Order(n) => n.min(order),
            Truncation::Terminated => order,
        })
    }

    /// `[{"coeff": "p/q", "x_power": a, "d_order": b}, ...]`
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms()
                .map(|t| json!({"coeff": number::to_string(&t.coeff), "x_power": t.x_power, "d_order": t.d_order}))
                .collect(),
        )
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let bad = |m: &str| Error::InvalidArgument(format!("malformed operator JSON: {m}"));
        let mut op = Self::zero();
        for t in value.as_array().ok_or_else(|| bad("expected an array of terms"))? {
            let c = number::parse(t.get("coeff").and_then(Value::as_str).ok_or_else(|| bad("coeff"))?)?;
            let field = |k: &str| {
                t.get(k)
                    .and_then(Value::as_u64)
                    .and_then(|v| u32::try_from(v).ok())
                    .ok_or_else(|| bad(k))
            };
            op.add_term(field("x_power")?, field("d_order")?, c);
        }
        Ok(op)
    }
}

impl fmt::Display for DiffOp {
    /// Ordered by descending d-order then x-power, e.g. `x*d^2 + 3*d - 2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut keys: Vec<_> = self.terms.iter().collect();
        keys.sort_by(|((a1, b1), _), ((a2, b2), _)| b2.cmp(b1).then(a2.cmp(a1)));
        for (i, (&(a, b), c)) in keys.into_iter().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            let mut parts: Vec<String> = Vec::new();
            if !mag.is_one() || (a == 0 && b == 0) {
                parts.push(mag.to_string());
            }
            match a {
                0 => {}
                1 => parts.push("x".into()),
                _ => parts.push(format!("x^{a}")),
            }
            match b {
                0 => {}
                1 => parts.push("d".into()),
                _ => parts.push(format!("d^{b}")),
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

impl Add for &DiffOp {
    type Output = DiffOp;
    fn add(self, rhs: &DiffOp) -> DiffOp {
        let mut out = self.clone();
        for (&(a, b), c) in &rhs.terms {
            out.add_term(a, b, c.clone());
        }
        out
    }
}

impl Sub for &DiffOp {
    type Output = DiffOp;
    fn sub(self, rhs: &DiffOp) -> DiffOp {
        self + &(-rhs)
    }
}

impl Mul for &DiffOp {
    type Output = DiffOp;
    fn mul(self, rhs: &DiffOp) -> DiffOp {
        self.compose(rhs)
    }
}

impl Neg for &DiffOp {
    type Output = DiffOp;
    fn neg(self) -> DiffOp {
        self.scale(&-Rational::one())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for DiffOp {
            type Output = DiffOp;
            fn $m(self, rhs: DiffOp) -> DiffOp {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for DiffOp {
    type Output = DiffOp;
    fn neg(self) -> DiffOp {
        -&self
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::number::{frac, int};
    use proptest::prelude::*;

    fn c(v: i64) -> DiffOp {
        DiffOp::scalar(int(v))
    }

    #[test]
    fn apply_examples() {
        let xd2 = DiffOp::term(int(1), 1, 2);
        let x3 = XSeries::monomial(int(3), Direction::Ascending);
        let out = xd2.apply(&x3, 10);
        assert_eq!(out.terms().collect::<Vec<_>>(), vec![(int(2), &int(6))]);
        assert!(out.is_terminated());

        let half = XSeries::monomial(frac(5, 2), Direction::Ascending);
        let out = DiffOp::euler().apply(&half, 10);
        assert_eq!(out.terms().collect::<Vec<_>>(), vec![(frac(5, 2), &frac(5, 2))]);

        // x d^2 + d on x^2 gives 2x + 2x.
        let op = &xd2 + &DiffOp::d();
        let out = op.apply(&XSeries::monomial(int(2), Direction::Ascending), 10);
        assert_eq!(out.terms().collect::<Vec<_>>(), vec![(int(1), &int(4))]);
    }

    #[test]
    fn commutator_examples() {
        assert_eq!(DiffOp::euler().commutator(&DiffOp::x()), DiffOp::x());
        assert_eq!(DiffOp::d().commutator(&DiffOp::x()), DiffOp::identity());
        // [x, x d^2 + 2 d] = -2 x d - 2
        let jm = &DiffOp::term(int(1), 1, 2) + &DiffOp::term(int(2), 0, 1);
        let lhs = DiffOp::x().commutator(&jm);
        assert_eq!(lhs, &DiffOp::term(int(-2), 1, 1) + &c(-2));
        assert!(jm.commutator(&jm).is_zero());
    }

    #[test]
    fn euler_powers_normal_order() {
        // D^2 = x^2 d^2 + x d
        let d2 = DiffOp::from_euler(&EulerPoly::new(vec![int(0), int(0), int(1)]));
        assert_eq!(d2, &DiffOp::term(int(1), 2, 2) + &DiffOp::euler());
    }

    #[test]
    fn display_and_json() {
        let op = &(&DiffOp::term(int(1), 1, 2) + &DiffOp::term(int(3), 0, 1)) - &c(2);
        assert_eq!(op.to_string(), "x*d^2 + 3*d - 2");
        let j = op.to_json();
        assert_eq!(DiffOp::from_json(&j).unwrap(), op);
        assert_eq!(j[0], json!({"coeff": "-2", "x_power": 0, "d_order": 0}));
    }

    #[test]
    fn truncated_window_is_preserved() {
        let s = XSeries::new(int(0), Direction::Ascending, Truncation::Order(4), (0..=4).map(|k| (k, int(1))));
        // x d^2 + d has degree -1: base moves to -1, window size stays 4.
        let op = &DiffOp::term(int(1), 1, 2) + &DiffOp::d();
        let out = op.apply(&s, 100);
        assert_eq!(out.base_exponent(), &int(-1));
        assert_eq!(out.truncation(), Truncation::Order(4));
        assert_eq!(out.coefficient(&int(3)), Some(int(16)));
        assert_eq!(out.coefficient(&int(4)), None);
    }

    pub(crate) fn arb_op() -> impl Strategy<Value = DiffOp> {
        prop::collection::vec((0u32..3, 0u32..3, -3i64..4, 1i64..3), 0..4).prop_map(|ts| {
            let mut op = DiffOp::zero();
            for (a, b, p, q) in ts {
                op.add_term(a, b, frac(p, q));
            }
            op
        })
    }

    fn exponents() -> impl Strategy<Value = Rational> {
        prop_oneof![(-3i64..7).prop_map(int), Just(frac(1, 2)), Just(frac(-1, 3))]
    }

    proptest! {
        #[test]
        fn composition_matches_sequential_action(a in arb_op(), b in arb_op(), mu in exponents()) {
            let m = XSeries::monomial(mu, Direction::Ascending);
            let seq = a.apply(&b.apply(&m, 50), 50);
            let comp = a.compose(&b).apply(&m, 50);
            prop_assert!(seq.agrees_with(&comp));
        }

        #[test]
        fn jacobi_and_antisymmetry(a in arb_op(), b in arb_op(), c in arb_op()) {
            let j = &(&a.commutator(&b.commutator(&c)) + &b.commutator(&c.commutator(&a)))
                + &c.commutator(&a.commutator(&b));
            prop_assert!(j.is_zero());
            prop_assert_eq!(a.commutator(&b), -b.commutator(&a));
        }

        #[test]
        fn degree_bookkeeping(a in 0u32..4, b in 0u32..4, p in -4i64..5) {
            // Homogeneous operator of degree a - b: [D, O] = (a - b) O.
            let op = &DiffOp::term(int(p), a, b) + &DiffOp::term(int(1), a + 1, b + 1);
            let deg = a as i64 - b as i64;
            prop_assert_eq!(DiffOp::euler().commutator(&op), op.scale(&int(deg)));
            prop_assert_eq!(op.compose(&DiffOp::x()).homogeneous_degree(), Some(deg + 1));
        }
    }
}
