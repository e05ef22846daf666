//! Truncated power series in an auxiliary variable `t` with polynomial-in-`x`
//! coefficients, used for generating functions.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde_json::Value;

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::number::{int, Rational};

/// `sum_{k <= order} c_k(x) t^k`; coefficients past `order` are unknown.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TSeries {
    coeffs: Vec<LaurentPoly>,
}

impl TSeries {
    pub fn zero(order: usize) -> Self {
        Self { coeffs: vec![LaurentPoly::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = LaurentPoly::one();
        s
    }

    /// Pads or truncates `coeffs` to `order + 1` entries.
    pub fn from_coeffs(order: usize, mut coeffs: Vec<LaurentPoly>) -> Self {
        coeffs.resize(order + 1, LaurentPoly::zero());
        Self { coeffs }
    }

    /// Builds `sum_k f(k) t^k` for `k = 0..=order`.
    pub fn from_fn<F: FnMut(usize) -> LaurentPoly>(order: usize, f: F) -> Self {
        Self { coeffs: (0..=order).map(f).collect() }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &LaurentPoly {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[LaurentPoly] {
        &self.coeffs
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self { coeffs: self.coeffs.iter().map(|p| p.scale(c)).collect() }
    }

    /// Multiplies every coefficient by the polynomial `p`.
    pub fn mul_poly(&self, p: &LaurentPoly) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| c * p).collect() }
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::from_coeffs(order, self.coeffs.iter().take(order + 1).cloned().collect())
    }

    /// Multiplicative inverse through the common order.
    ///
    /// The `t^0` coefficient must be a nonzero constant.
    pub fn inv(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.len() != 1 || c0.degree() != Some(0) {
            return Err(Error::NotInvertible);
        }
        let inv0 = c0.coeff(0).recip();
        let n = self.order();
        let mut out: Vec<LaurentPoly> = Vec::with_capacity(n + 1);
        out.push(LaurentPoly::constant(inv0.clone()));
        for k in 1..=n {
            let mut acc = LaurentPoly::zero();
            for j in 1..=k {
                acc = &acc + &(&self.coeffs[j] * &out[k - j]);
            }
            out.push(acc.scale(&-inv0.clone()));
        }
        Ok(Self { coeffs: out })
    }

    /// `exp(s)` via `k E_k = sum_{j=1..k} j s_j E_{k-j}`.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonZeroConstant);
        }
        let n = self.order();
        let mut out: Vec<LaurentPoly> = Vec::with_capacity(n + 1);
        out.push(LaurentPoly::one());
        for k in 1..=n {
            let mut acc = LaurentPoly::zero();
            for j in 1..=k {
                acc = &acc + &(&self.coeffs[j] * &out[k - j]).scale(&int(j as i64));
            }
            out.push(acc.scale(&Rational::new(1.into(), (k as i64).into())));
        }
        Ok(Self { coeffs: out })
    }

    /// Lowest `t`-power where the two series differ, up to the smaller order.
    pub fn first_mismatch(&self, other: &Self) -> Option<usize> {
        let n = self.order().min(other.order());
        (0..=n).find(|&k| self.coeffs[k] != other.coeffs[k])
    }

    /// Array of polynomial objects indexed by `t`-power.
    pub fn to_json(&self) -> Value {
        Value::Array(self.coeffs.iter().map(LaurentPoly::to_json).collect())
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let arr = value
            .as_array()
            .filter(|a| !a.is_empty())
            .ok_or_else(|| Error::InvalidArgument("t-series JSON must be a non-empty array".into()))?;
        let coeffs = arr.iter().map(LaurentPoly::from_json).collect::<Result<Vec<_>>>()?;
        Ok(Self { coeffs })
    }
}

impl fmt::Display for TSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*t")?,
                _ => write!(f, "({c})*t^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(t^{})", self.order() + 1)
    }
}

fn common(a: &TSeries, b: &TSeries) -> usize {
    a.order().min(b.order())
}

impl Add for &TSeries {
    type Output = TSeries;
    fn add(self, rhs: &TSeries) -> TSeries {
        TSeries::from_fn(common(self, rhs), |k| &self.coeffs[k] + &rhs.coeffs[k])
    }
}

impl Sub for &TSeries {
    type Output = TSeries;
    fn sub(self, rhs: &TSeries) -> TSeries {
        TSeries::from_fn(common(self, rhs), |k| &self.coeffs[k] - &rhs.coeffs[k])
    }
}

impl Mul for &TSeries {
    type Output = TSeries;
    fn mul(self, rhs: &TSeries) -> TSeries {
        TSeries::from_fn(common(self, rhs), |k| {
            let mut acc = LaurentPoly::zero();
            for j in 0..=k {
                acc = &acc + &(&self.coeffs[j] * &rhs.coeffs[k - j]);
            }
            acc
        })
    }
}

impl Neg for &TSeries {
    type Output = TSeries;
    fn neg(self) -> TSeries {
        self.scale(&-int(1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number::{factorial, frac};
    use proptest::prelude::*;

    fn poly(c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_dense(&c.iter().map(|&v| int(v)).collect::<Vec<_>>())
    }

    #[test]
    fn geometric_series() {
        let s = TSeries::from_coeffs(6, vec![poly(&[1]), poly(&[-1])]);
        let inv = s.inv().unwrap();
        assert!(inv.coeffs().iter().all(|c| *c == LaurentPoly::one()));
        assert_eq!(TSeries::one(4).inv().unwrap(), TSeries::one(4));
    }

    #[test]
    fn chebyshev_denominator_inverse() {
        // 1 - 2xt + t^2
        let s = TSeries::from_coeffs(2, vec![poly(&[1]), poly(&[0, -2]), poly(&[1])]);
        let inv = s.inv().unwrap();
        assert_eq!(inv.coeff(0), &poly(&[1]));
        assert_eq!(inv.coeff(1), &poly(&[0, 2]));
        assert_eq!(inv.coeff(2), &poly(&[-1, 0, 4]));
    }

    #[test]
    fn invertibility_errors() {
        let s = TSeries::from_coeffs(3, vec![poly(&[0, 1])]);
        assert_eq!(s.inv(), Err(Error::NotInvertible));
        assert_eq!(TSeries::zero(2).inv(), Err(Error::NotInvertible));
        assert_eq!(TSeries::one(2).exp(), Err(Error::NonZeroConstant));
    }

    #[test]
    fn exponential_examples() {
        assert_eq!(TSeries::zero(5).exp().unwrap(), TSeries::one(5));
        let s = TSeries::from_coeffs(6, vec![LaurentPoly::zero(), poly(&[0, -1])]);
        let e = s.exp().unwrap();
        for n in 0..=6u32 {
            let expect = LaurentPoly::monomial(crate::number::pow(&int(-1), n) / factorial(n), n as i64);
            assert_eq!(e.coeff(n as usize), &expect);
        }
        // exp(-xt/(1-t)) / (1-t) at t^2 is x^2/2 - 2x + 1.
        let geo = TSeries::from_coeffs(6, vec![poly(&[1]), poly(&[-1])]).inv().unwrap();
        let arg = &s * &geo;
        let g = &arg.exp().unwrap() * &geo;
        assert_eq!(g.coeff(2), &LaurentPoly::from_dense(&[int(1), int(-2), frac(1, 2)]));
    }

    fn arb_series(zero_constant: bool) -> impl Strategy<Value = TSeries> {
        prop::collection::vec(prop::collection::vec(-3i64..4, 0..3), 1..=12).prop_map(move |cs| {
            let order = cs.len() - 1;
            let mut coeffs: Vec<LaurentPoly> = cs.iter().map(|c| poly(c)).collect();
            coeffs[0] = if zero_constant { LaurentPoly::zero() } else { poly(&[2]) };
            TSeries::from_coeffs(order, coeffs)
        })
    }

    /// Naive Cauchy-product power used as an independent check.
    fn naive_pow(s: &TSeries, m: usize) -> TSeries {
        let mut acc = TSeries::one(s.order());
        for _ in 0..m {
            let mut next = TSeries::zero(s.order());
            for i in 0..=s.order() {
                for j in 0..=s.order() - i {
                    next.coeffs[i + j] = &next.coeffs[i + j] + &(&acc.coeffs[i] * &s.coeffs[j]);
                }
            }
            acc = next;
        }
        acc
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn inverse_reconstructs_one(s in arb_series(false)) {
            let inv = s.inv().unwrap();
            prop_assert_eq!(&s * &inv, TSeries::one(s.order()));
        }

        #[test]
        fn exp_matches_power_sum(s in arb_series(true)) {
            let mut direct = TSeries::zero(s.order());
            for m in 0..=s.order() {
                direct = &direct + &naive_pow(&s, m).scale(&factorial(m as u32).recip());
            }
            prop_assert_eq!(s.exp().unwrap(), direct);
        }
    }
}
