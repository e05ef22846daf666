//! Graded operators `sum_d x^d R_d(D)`.
//!
//! Each term is an Euler-rational `R` paired with an exponent shift `d`, acting as
//! `x^mu -> R(mu) x^(mu+d)`: `R` is evaluated at the *source* exponent. A factor
//! written on the left, `R(D) o x^d`, is stored as `R(D + d)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::number::{self, Rational};
use crate::op::diffop::DiffOp;
use crate::op::euler::{EulerPoly, EulerRational};
use crate::xseries::{Direction, Truncation, XSeries};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedTerm {
    pub r: EulerRational,
    pub shift: i64,
}

/// Canonical graded operator: one Euler-rational per shift, zero terms dropped.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradedOp {
    terms: BTreeMap<i64, EulerRational>,
}

fn rat(k: i64) -> Rational {
    Rational::from_integer(k.into())
}

impl GradedOp {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity() -> Self {
        Self::diagonal(EulerRational::one())
    }

    pub fn diagonal(r: EulerRational) -> Self {
        Self::source(r, 0)
    }

    /// `x^shift o R(D)`: evaluates `R` at the source exponent.
    pub fn source(r: EulerRational, shift: i64) -> Self {
        let mut op = Self::zero();
        op.add_term(r, shift);
        op
    }

    /// `R(D) o x^shift`: evaluates `R` at the target exponent.
    pub fn target(r: EulerRational, shift: i64) -> Self {
        Self::source(r.shift_arg(&rat(shift)), shift)
    }

    pub fn from_terms<I: IntoIterator<Item = GradedTerm>>(terms: I) -> Self {
        let mut op = Self::zero();
        for t in terms {
            op.add_term(t.r, t.shift);
        }
        op
    }

    pub fn add_term(&mut self, r: EulerRational, shift: i64) {
        if r.is_zero() {
            return;
        }
        let sum = match self.terms.get(&shift) {
            Some(prev) => prev + &r,
            None => r,
        };
        if sum.is_zero() {
            self.terms.remove(&shift);
        } else {
            self.terms.insert(shift, sum);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = GradedTerm> + '_ {
        self.terms.iter().map(|(&shift, r)| GradedTerm { r: r.clone(), shift })
    }

    pub fn term(&self, shift: i64) -> Option<&EulerRational> {
        self.terms.get(&shift)
    }

    pub fn shifts(&self) -> impl Iterator<Item = i64> + '_ {
        self.terms.keys().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Every shift is strictly negative (and there is at least one term).
    pub fn is_lowering(&self) -> bool {
        !self.is_zero() && self.terms.keys().all(|&d| d < 0)
    }

    pub fn is_raising(&self) -> bool {
        !self.is_zero() && self.terms.keys().all(|&d| d > 0)
    }

    /// The shift-0 part.
    pub fn diagonal_part(&self) -> EulerRational {
        self.terms.get(&0).cloned().unwrap_or_else(EulerRational::zero)
    }

    pub fn without_diagonal(&self) -> Self {
        Self {
            terms: self.terms.iter().filter(|(&d, _)| d != 0).map(|(&d, r)| (d, r.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_terms(self.terms().map(|t| GradedTerm { r: t.r.scale(c), shift: t.shift }))
    }

    /// `self o other`
    pub fn compose(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&d1, r1) in &self.terms {
            for (&d2, r2) in &other.terms {
                out.add_term(&r1.shift_arg(&rat(d2)) * r2, d1 + d2);
            }
        }
        out
    }

    pub fn commutator(&self, other: &Self) -> Self {
        &self.compose(other) - &other.compose(self)
    }

    /// `R(D) o self`
    pub fn left_mul(&self, r: &EulerRational) -> Self {
        Self::diagonal(r.clone()).compose(self)
    }

    /// `self o R(D)`
    pub fn right_mul(&self, r: &EulerRational) -> Self {
        self.compose(&Self::diagonal(r.clone()))
    }

    /// Image of `x^mu` as `(exponent, coefficient)` pairs.
    pub fn act_monomial(&self, mu: &Rational) -> Result<Vec<(Rational, Rational)>> {
        let mut out = Vec::new();
        for (&d, r) in &self.terms {
            let c = r.eval(mu).ok_or_else(|| Error::Resonance { exponent: mu.clone() })?;
            if !c.is_zero() {
                out.push((mu + rat(d), c));
            }
        }
        Ok(out)
    }

    /// Exact action on a series, capped at `order` offsets.
    ///
    /// Errors with the source exponent when a denominator vanishes on a nonzero coefficient.
    pub fn apply(&self, s: &XSeries, order: u32) -> Result<XSeries> {
        let base_shift = match s.direction() {
            Direction::Ascending => self.terms.keys().next().copied(),
            Direction::Descending => self.terms.keys().next_back().copied(),
        }
        .unwrap_or(0);
        let sign = s.direction().sign();
        let mut coeffs: Vec<(u32, Rational)> = Vec::new();
        for (k, c) in s.offsets() {
            let mu = s.exponent_at(k);
            for (&d, r) in &self.terms {
                let w = r.eval(&mu).ok_or_else(|| Error::Resonance { exponent: mu.clone() })?;
                if w.is_zero() {
                    continue;
                }
                let off = k as i64 + sign * (d - base_shift);
                coeffs.push((off as u32, w * c));
            }
        }
        let base = s.base_exponent() + rat(base_shift);
        let cap = match s.truncation() {
            Truncation::Order(n) => n.min(order),
            Truncation::Terminated => order,
        };
        Ok(XSeries::new(base, s.direction(), s.truncation(), coeffs).with_order(cap))
    }

    /// `[{"num": [...], "den": [...], "shift": d}, ...]`, coefficients ascending in `D`.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(&d, r)| json!({"num": r.num().to_json(), "den": r.den().to_json(), "shift": d}))
                .collect(),
        )
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let bad = |m: &str| Error::InvalidArgument(format!("malformed graded operator JSON: {m}"));
        let mut op = Self::zero();
        for t in value.as_array().ok_or_else(|| bad("expected an array"))? {
            let num = EulerPoly::from_json(t.get("num").ok_or_else(|| bad("num"))?)?;
            let den = EulerPoly::from_json(t.get("den").ok_or_else(|| bad("den"))?)?;
            let shift = t.get("shift").and_then(Value::as_i64).ok_or_else(|| bad("shift"))?;
            op.add_term(EulerRational::new(num, den)?, shift);
        }
        Ok(op)
    }
}

impl fmt::Display for GradedOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (&d, r)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match d {
                0 => write!(f, "[{r}]")?,
                1 => write!(f, "x*[{r}]")?,
                _ => write!(f, "x^{d}*[{r}]")?,
            }
        }
        Ok(())
    }
}

impl From<&DiffOp> for GradedOp {
    /// `x^a d^b` becomes shift `a - b` with `R(D) = D(D-1)...(D-b+1)`.
    fn from(op: &DiffOp) -> Self {
        let mut out = Self::zero();
        for t in op.terms() {
            let r = EulerPoly::falling(t.d_order).scale(&t.coeff);
            out.add_term(EulerRational::from_poly(r), t.degree());
        }
        out
    }
}

impl From<&EulerPoly> for GradedOp {
    fn from(f: &EulerPoly) -> Self {
        Self::diagonal(EulerRational::from_poly(f.clone()))
    }
}

impl Add for &GradedOp {
    type Output = GradedOp;
    fn add(self, rhs: &GradedOp) -> GradedOp {
        let mut out = self.clone();
        for (&d, r) in &rhs.terms {
            out.add_term(r.clone(), d);
        }
        out
    }
}

impl Sub for &GradedOp {
    type Output = GradedOp;
    fn sub(self, rhs: &GradedOp) -> GradedOp {
        self + &(-rhs)
    }
}

impl Mul for &GradedOp {
    type Output = GradedOp;
    fn mul(self, rhs: &GradedOp) -> GradedOp {
        self.compose(rhs)
    }
}

impl Neg for &GradedOp {
    type Output = GradedOp;
    fn neg(self) -> GradedOp {
        self.scale(&-Rational::one())
    }
}

/// `e^{-A} B e^{A}` as the adjoint series `sum_j (-1)^j ad_A^j(B) / j!`.
///
/// Returns `None` if the series has not terminated after `max_terms` brackets.
pub fn conjugate_by_exp(a: &GradedOp, b: &GradedOp, max_terms: u32) -> Option<GradedOp> {
    let mut out = GradedOp::zero();
    let mut ad = b.clone();
    for j in 0..=max_terms {
        if ad.is_zero() {
            return Some(out);
        }
        let w = number::pow(&-Rational::one(), j) / number::factorial(j);
        out = &out + &ad.scale(&w);
        ad = a.commutator(&ad);
    }
    ad.is_zero().then_some(out)
}

/// [`conjugate_by_exp`] for plain differential operators.
pub fn conjugate_diffop_by_exp(a: &DiffOp, b: &DiffOp, max_terms: u32) -> Option<DiffOp> {
    let mut out = DiffOp::zero();
    let mut ad = b.clone();
    for j in 0..=max_terms {
        if ad.is_zero() {
            return Some(out);
        }
        let w = number::pow(&-Rational::one(), j) / number::factorial(j);
        out = &out + &ad.scale(&w);
        ad = a.commutator(&ad);
    }
    ad.is_zero().then_some(out)
}
