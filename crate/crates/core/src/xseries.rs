//! Generalized power series `sum_k c_k x^(base +/- k)` with explicit truncation.
//!
//! A series is either *terminated* (an exact finite sum) or known exactly for
//! offsets `k <= N`; coefficients past the window are unknown, not zero.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::number::{self, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    /// Exponents `base, base+1, ...`
    Ascending,
    /// Exponents `base, base-1, ...`
    Descending,
}

impl Direction {
    pub fn sign(self) -> i64 {
        match self {
            Direction::Ascending => 1,
            Direction::Descending => -1,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Direction::Ascending => "ascending",
            Direction::Descending => "descending",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Truncation {
    /// Offsets `0..=N` are exact.
    Order(u32),
    Terminated,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XSeries {
    base: Rational,
    direction: Direction,
    truncation: Truncation,
    coeffs: BTreeMap<u32, Rational>,
}

impl XSeries {
    /// Builds a series, dropping zero coefficients and anything past the window.
    pub fn new<I>(base: Rational, direction: Direction, truncation: Truncation, coeffs: I) -> Self
    where
        I: IntoIterator<Item = (u32, Rational)>,
    {
        let mut map: BTreeMap<u32, Rational> = BTreeMap::new();
        for (k, c) in coeffs {
            if let Truncation::Order(n) = truncation {
                if k > n {
                    continue;
                }
            }
            *map.entry(k).or_insert_with(Rational::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        Self { base, direction, truncation, coeffs: map }
    }

    /// The exact monomial `x^base`.
    pub fn monomial(base: Rational, direction: Direction) -> Self {
        Self::new(base, direction, Truncation::Terminated, [(0, Rational::one())])
    }

    pub fn zero(base: Rational, direction: Direction) -> Self {
        Self::new(base, direction, Truncation::Terminated, [])
    }

    /// Exact ascending series for a polynomial; the base is its lowest exponent.
    pub fn from_laurent(p: &LaurentPoly) -> Self {
        let low = p.low_degree().unwrap_or(0);
        Self::new(
            Rational::from_integer(low.into()),
            Direction::Ascending,
            Truncation::Terminated,
            p.terms().map(|(k, c)| ((k - low) as u32, c.clone())),
        )
    }

    pub fn base_exponent(&self) -> &Rational {
        &self.base
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn truncation(&self) -> Truncation {
        self.truncation
    }

    pub fn is_terminated(&self) -> bool {
        self.truncation == Truncation::Terminated
    }

    /// No nonzero coefficient is stored (inside the window, if truncated).
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn exponent_at(&self, offset: u32) -> Rational {
        &self.base + Rational::from_integer((self.direction.sign() * offset as i64).into())
    }

    pub fn coeff_at_offset(&self, offset: u32) -> Rational {
        self.coeffs.get(&offset).cloned().unwrap_or_else(Rational::zero)
    }

    /// `(offset, coefficient)` pairs with nonzero coefficients.
    pub fn offsets(&self) -> impl Iterator<Item = (u32, &Rational)> + '_ {
        self.coeffs.iter().map(|(&k, c)| (k, c))
    }

    /// `(exponent, coefficient)` pairs with nonzero coefficients.
    pub fn terms(&self) -> impl Iterator<Item = (Rational, &Rational)> + '_ {
        self.coeffs.iter().map(|(&k, c)| (self.exponent_at(k), c))
    }

    /// Whether the coefficient of `x^exponent` is exactly determined.
    pub fn knows(&self, exponent: &Rational) -> bool {
        match self.truncation {
            Truncation::Terminated => true,
            Truncation::Order(n) => {
                let edge = self.exponent_at(n);
                match self.direction {
                    Direction::Ascending => exponent <= &edge,
                    Direction::Descending => exponent >= &edge,
                }
            }
        }
    }

    /// Coefficient of `x^exponent`, or `None` when it lies outside the known window.
    pub fn coefficient(&self, exponent: &Rational) -> Option<Rational> {
        if !self.knows(exponent) {
            return None;
        }
        let off = (exponent - &self.base) * Rational::from_integer(self.direction.sign().into());
        if !off.is_integer() || off.is_negative() {
            return Some(Rational::zero());
        }
        let k = u32::try_from(off.to_integer()).ok()?;
        Some(self.coeff_at_offset(k))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(
            self.base.clone(),
            self.direction,
            self.truncation,
            self.coeffs.iter().map(|(&k, v)| (k, v * c)),
        )
    }

    /// Caps the window at `order`; a terminated series stays terminated only if it fits.
    pub fn with_order(&self, order: u32) -> Self {
        let truncation = match self.truncation {
            Truncation::Terminated if self.coeffs.keys().all(|&k| k <= order) => Truncation::Terminated,
            Truncation::Terminated => Truncation::Order(order),
            Truncation::Order(n) => Truncation::Order(n.min(order)),
        };
        Self::new(self.base.clone(), self.direction, truncation, self.coeffs.clone())
    }

    /// Reinterprets the stored window as an exact finite sum.
    pub fn as_terminated(&self) -> Self {
        Self { truncation: Truncation::Terminated, ..self.clone() }
    }

    /// Sum of two series on the same exponent lattice and direction.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.direction != other.direction {
            return Err(Error::InvalidArgument("cannot add series of opposite direction".into()));
        }
        let sign = Rational::from_integer(self.direction.sign().into());
        let delta = (&other.base - &self.base) * &sign;
        if !delta.is_integer() {
            return Err(Error::InvalidArgument("series exponents lie on different lattices".into()));
        }
        let delta = i64::try_from(delta.to_integer())
            .map_err(|_| Error::InvalidArgument("exponent offset too large".into()))?;
        // Base moves to whichever series starts first in the flow direction.
        let (base, shift_self, shift_other) = if delta >= 0 {
            (self.base.clone(), 0, delta as u32)
        } else {
            (other.base.clone(), (-delta) as u32, 0)
        };
        let truncation = match (self.truncation, other.truncation) {
            (Truncation::Terminated, Truncation::Terminated) => Truncation::Terminated,
            (Truncation::Order(a), Truncation::Terminated) => Truncation::Order(a + shift_self),
            (Truncation::Terminated, Truncation::Order(b)) => Truncation::Order(b + shift_other),
            (Truncation::Order(a), Truncation::Order(b)) => {
                Truncation::Order((a + shift_self).min(b + shift_other))
            }
        };
        let terms = self
            .coeffs
            .iter()
            .map(|(&k, c)| (k + shift_self, c.clone()))
            .chain(other.coeffs.iter().map(|(&k, c)| (k + shift_other, c.clone())));
        Ok(Self::new(base, self.direction, truncation, terms))
    }

    /// Lossless conversion for terminated series with integer exponents.
    pub fn to_laurent(&self) -> Option<LaurentPoly> {
        if !self.is_terminated() {
            return None;
        }
        self.window_laurent()
    }

    /// The known window as a polynomial, if every exponent is an integer.
    pub fn window_laurent(&self) -> Option<LaurentPoly> {
        let mut p = LaurentPoly::zero();
        for (e, c) in self.terms() {
            p.add_term(number::as_integer(&e)?, c.clone());
        }
        Some(p)
    }

    fn union_exponents(&self, other: &Self) -> Vec<Rational> {
        let mut es: Vec<Rational> = self.terms().map(|(e, _)| e).chain(other.terms().map(|(e, _)| e)).collect();
        es.sort();
        es.dedup();
        es
    }

    /// Exact equality on every exponent both series determine.
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.first_disagreement(other).is_none()
    }

    /// Lowest exponent, known to both, where the coefficients differ.
    pub fn first_disagreement(&self, other: &Self) -> Option<Rational> {
        self.union_exponents(other).into_iter().find(|e| {
            match (self.coefficient(e), other.coefficient(e)) {
                (Some(a), Some(b)) => a != b,
                _ => false,
            }
        })
    }

    /// The scalar `c` with `self == c * other` on the common window.
    ///
    /// `None` if no such scalar exists; `Some(0)` when `self` vanishes there.
    pub fn ratio_to(&self, other: &Self) -> Option<Rational> {
        let common: Vec<Rational> = self
            .union_exponents(other)
            .into_iter()
            .filter(|e| self.knows(e) && other.knows(e))
            .collect();
        let pivot = common
            .iter()
            .find(|e| !other.coefficient(e).unwrap_or_else(Rational::zero).is_zero());
        let ratio = match pivot {
            Some(e) => self.coefficient(e)? / other.coefficient(e)?,
            None => Rational::zero(),
        };
        common
            .iter()
            .all(|e| self.coefficient(e) == other.coefficient(e).map(|c| c * &ratio))
            .then_some(ratio)
    }

    pub fn to_json(&self) -> Value {
        let coeffs: Map<String, Value> = self
            .coeffs
            .iter()
            .map(|(k, c)| (k.to_string(), Value::String(number::to_string(c))))
            .collect();
        let truncation = match self.truncation {
            Truncation::Order(n) => json!(n),
            Truncation::Terminated => json!("terminated"),
        };
        json!({
            "base_exponent": number::to_string(&self.base),
            "direction": self.direction.as_str(),
            "truncation": truncation,
            "coefficients": coeffs,
        })
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let bad = |m: &str| Error::InvalidArgument(format!("malformed series JSON: {m}"));
        let base = number::parse(
            value
                .get("base_exponent")
                .and_then(Value::as_str)
                .ok_or_else(|| bad("missing base_exponent"))?,
        )?;
        let direction = match value.get("direction").and_then(Value::as_str) {
            Some("ascending") => Direction::Ascending,
            Some("descending") => Direction::Descending,
            _ => return Err(bad("direction must be ascending or descending")),
        };
        let truncation = match value.get("truncation") {
            Some(Value::String(s)) if s == "terminated" => Truncation::Terminated,
            Some(Value::Number(n)) => Truncation::Order(
                n.as_u64()
                    .and_then(|n| u32::try_from(n).ok())
                    .ok_or_else(|| bad("truncation must be a non-negative integer"))?,
            ),
            _ => return Err(bad("truncation must be an integer or \"terminated\"")),
        };
        let mut coeffs = Vec::new();
        for (k, v) in value
            .get("coefficients")
            .and_then(Value::as_object)
            .ok_or_else(|| bad("missing coefficients"))?
        {
            let k: u32 = k.parse().map_err(|_| bad("offset keys must be non-negative integers"))?;
            let c = number::parse(v.as_str().ok_or_else(|| bad("coefficient is not a string"))?)?;
            coeffs.push((k, c));
        }
        Ok(Self::new(base, direction, truncation, coeffs))
    }
}

fn fmt_power(f: &mut fmt::Formatter<'_>, e: &Rational) -> fmt::Result {
    if e.is_zero() {
        Ok(())
    } else if e.is_one() {
        write!(f, "x")
    } else if e.is_integer() {
        write!(f, "x^{e}")
    } else {
        write!(f, "x^({e})")
    }
}

impl fmt::Display for XSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            if e.is_zero() {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                fmt_power(f, &e)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        if let Truncation::Order(n) = self.truncation {
            let next = self.exponent_at(n + 1);
            write!(f, " + O(")?;
            if next.is_zero() {
                write!(f, "1")?;
            } else {
                fmt_power(f, &next)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number::{frac, int};
    use proptest::prelude::*;

    #[test]
    fn window_semantics() {
        let s = XSeries::new(int(0), Direction::Ascending, Truncation::Order(2), [(0, int(1)), (1, int(-2)), (3, int(9))]);
        assert_eq!(s.coeff_at_offset(3), int(0), "coefficient past the window is dropped");
        assert_eq!(s.coefficient(&int(2)), Some(int(0)));
        assert_eq!(s.coefficient(&int(3)), None);
        assert_eq!(s.coefficient(&frac(1, 2)), Some(int(0)));
        assert_eq!(s.to_string(), "1 - 2*x + O(x^3)");
    }

    #[test]
    fn descending_exponents() {
        let s = XSeries::new(frac(5, 2), Direction::Descending, Truncation::Order(1), [(0, int(1)), (1, int(3))]);
        assert_eq!(s.exponent_at(1), frac(3, 2));
        assert!(s.knows(&frac(3, 2)));
        assert!(!s.knows(&frac(1, 2)));
        assert_eq!(s.to_string(), "x^(5/2) + 3*x^(3/2) + O(x^(1/2))");
    }

    #[test]
    fn addition_realigns_bases() {
        let a = XSeries::new(int(1), Direction::Ascending, Truncation::Order(3), [(0, int(1))]);
        let b = XSeries::new(int(0), Direction::Ascending, Truncation::Terminated, [(0, int(2)), (1, int(1))]);
        let s = a.add(&b).unwrap();
        assert_eq!(s.base_exponent(), &int(0));
        assert_eq!(s.truncation(), Truncation::Order(4));
        assert_eq!(s.coefficient(&int(1)), Some(int(2)));
        let c = XSeries::monomial(frac(1, 2), Direction::Ascending);
        assert!(a.add(&c).is_err());
    }

    #[test]
    fn ratio_on_common_window() {
        let p = XSeries::from_laurent(&LaurentPoly::from_dense(&[int(1), int(-2), int(1)]));
        let q = p.scale(&frac(-3, 2));
        assert_eq!(q.ratio_to(&p), Some(frac(-3, 2)));
        let r = XSeries::from_laurent(&LaurentPoly::from_dense(&[int(1), int(-2), int(2)]));
        assert_eq!(r.ratio_to(&p), None);
        assert_eq!(r.with_order(1).ratio_to(&p), Some(int(1)));
        assert_eq!(XSeries::zero(int(0), Direction::Ascending).ratio_to(&p), Some(int(0)));
    }

    #[test]
    fn json_schema() {
        let s = XSeries::new(frac(1, 2), Direction::Descending, Truncation::Order(4), [(0, int(1)), (2, frac(-1, 3))]);
        let j = s.to_json();
        assert_eq!(
            j,
            json!({"base_exponent": "1/2", "direction": "descending", "truncation": 4,
                   "coefficients": {"0": "1", "2": "-1/3"}})
        );
        assert_eq!(XSeries::from_json(&j).unwrap(), s);
        let t = XSeries::monomial(int(2), Direction::Ascending);
        assert_eq!(t.to_json()["truncation"], json!("terminated"));
    }

    proptest! {
        #[test]
        fn laurent_round_trip(v in prop::collection::vec((-4i64..6, -7i64..8, 1i64..5), 0..6)) {
            let p = LaurentPoly::from_terms(v.into_iter().map(|(k, a, b)| (k, frac(a, b))));
            let s = XSeries::from_laurent(&p);
            prop_assert!(s.is_terminated());
            prop_assert_eq!(s.to_laurent(), Some(p));
        }
    }
}
