//! Laurent polynomials in `x` with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::number::{self, Rational};

/// Finite sum `sum_k c_k x^k` over integer `k`. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    /// `x`
    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn monomial(c: Rational, exponent: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(exponent, c);
        p
    }

    /// Builds from `(exponent, coefficient)` pairs, summing repeats.
    pub fn from_terms<I: IntoIterator<Item = (i64, Rational)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (k, c) in terms {
            p.add_term(k, c);
        }
        p
    }

    /// Dense ascending coefficients starting at `x^0`.
    pub fn from_dense(coeffs: &[Rational]) -> Self {
        Self::from_terms(coeffs.iter().cloned().enumerate().map(|(k, c)| (k as i64, c)))
    }

    pub fn add_term(&mut self, exponent: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(exponent).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&exponent);
        }
    }

    pub fn coeff(&self, exponent: i64) -> Rational {
        self.coeffs.get(&exponent).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> + '_ {
        self.coeffs.iter().map(|(&k, c)| (k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Highest exponent present, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn low_degree(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn leading_coeff(&self) -> Rational {
        self.coeffs.values().next_back().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|(&k, v)| (k, v * c)).collect(),
        }
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(&e, v)| (e + k, v.clone())).collect(),
        }
    }

    pub fn derivative(&self) -> Self {
        Self::from_terms(
            self.coeffs
                .iter()
                .map(|(&k, c)| (k - 1, c * Rational::from_integer(k.into()))),
        )
    }

    /// Evaluates at a rational point. Fails at `x = 0` when negative powers are present.
    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        if x.is_zero() && self.low_degree().is_some_and(|k| k < 0) {
            return Err(Error::InvalidArgument("negative power evaluated at zero".into()));
        }
        let mut acc = Rational::zero();
        for (&k, c) in &self.coeffs {
            let p = number::pow(x, k.unsigned_abs() as u32);
            acc += if k < 0 { c / p } else { c * p };
        }
        Ok(acc)
    }

    /// Keeps only exponents `<= max_exponent`.
    pub fn truncate_above(&self, max_exponent: i64) -> Self {
        Self {
            coeffs: self.coeffs.range(..=max_exponent).map(|(&k, c)| (k, c.clone())).collect(),
        }
    }

    /// `{"coefficients": {"k": "p/q", ...}}`
    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        map.insert("coefficients".into(), Value::Object(self.coefficient_map()));
        Value::Object(map)
    }

    pub(crate) fn coefficient_map(&self) -> Map<String, Value> {
        self.coeffs
            .iter()
            .map(|(k, c)| (k.to_string(), Value::String(number::to_string(c))))
            .collect()
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let bad = |m: &str| Error::InvalidArgument(format!("malformed polynomial JSON: {m}"));
        let coeffs = value
            .get("coefficients")
            .and_then(Value::as_object)
            .ok_or_else(|| bad("missing \"coefficients\" object"))?;
        let mut p = Self::zero();
        for (k, v) in coeffs {
            let e: i64 = k.parse().map_err(|_| bad("non-integer exponent key"))?;
            let c = number::parse(v.as_str().ok_or_else(|| bad("coefficient is not a string"))?)?;
            p.add_term(e, c);
        }
        Ok(p)
    }
}

impl fmt::Display for LaurentPoly {
    /// Descending order, e.g. `1/2*x^2 - 2*x + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (&k, c)) in self.coeffs.iter().rev().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if k == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&k, c) in &rhs.coeffs {
            out.add_term(k, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&k, c) in &rhs.coeffs {
            out.add_term(k, -c.clone());
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&i, a) in &self.coeffs {
            for (&j, b) in &rhs.coeffs {
                out.add_term(i + j, a * b);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&-Rational::one())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number::{frac, int};
    use proptest::prelude::*;

    fn poly(terms: &[(i64, i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().map(|&(k, p, q)| (k, frac(p, q))))
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let p = poly(&[(1, 1, 1), (1, -1, 1), (2, 3, 1)]);
        assert_eq!(p.len(), 1);
        assert_eq!(p.degree(), Some(2));
        assert!((&p - &p).is_zero());
    }

    #[test]
    fn display_descending() {
        let p = poly(&[(0, 1, 1), (1, -2, 1), (2, 1, 2)]);
        assert_eq!(p.to_string(), "1/2*x^2 - 2*x + 1");
        assert_eq!(poly(&[(-1, -3, 1)]).to_string(), "-3*x^-1");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
    }

    #[test]
    fn json_shape() {
        let p = poly(&[(0, 1, 1), (1, -2, 1), (2, 1, 2)]);
        let j = p.to_json();
        assert_eq!(j, serde_json::json!({"coefficients": {"0": "1", "1": "-2", "2": "1/2"}}));
        assert_eq!(LaurentPoly::from_json(&j).unwrap(), p);
    }

    #[test]
    fn derivative_and_eval() {
        let p = poly(&[(-1, 1, 1), (3, 2, 1)]);
        assert_eq!(p.derivative(), poly(&[(-2, -1, 1), (2, 6, 1)]));
        assert_eq!(p.eval(&int(2)).unwrap(), frac(33, 2));
        assert!(p.eval(&int(0)).is_err());
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((-3i64..4, -5i64..6, 1i64..4), 0..5).prop_map(|v| {
            LaurentPoly::from_terms(v.into_iter().map(|(k, p, q)| (k, frac(p, q))))
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert!((&a + &(-&a)).is_zero());
            if let (Some(da), Some(db)) = (a.degree(), b.degree()) {
                prop_assert_eq!((&a * &b).degree(), Some(da + db));
            }
        }
    }
}
