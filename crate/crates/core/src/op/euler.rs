//! Polynomials and rational functions of the Euler operator `D = x d/dx`.
//!
//! Both act diagonally on monomials: `F(D) x^mu = F(mu) x^mu`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::number::{self, Rational};

/// `sum_k c_k D^k`, stored ascending without trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct EulerPoly {
    coeffs: Vec<Rational>,
}

impl EulerPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The Euler operator itself.
    pub fn d() -> Self {
        Self::new(vec![Rational::zero(), Rational::one()])
    }

    /// `D + c`
    pub fn linear(c: Rational) -> Self {
        Self::new(vec![c, Rational::one()])
    }

    /// `prod (D - r)`
    pub fn from_roots<'a, I: IntoIterator<Item = &'a Rational>>(roots: I) -> Self {
        roots
            .into_iter()
            .fold(Self::one(), |acc, r| &acc * &Self::linear(-r.clone()))
    }

    /// `D(D-1)...(D-b+1)`, the diagonal part of `x^b (d/dx)^b`.
    pub fn falling(b: u32) -> Self {
        (0..b).fold(Self::one(), |acc, j| &acc * &Self::linear(-number::int(j as i64)))
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, mu: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * mu + c)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|v| v * c).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&self.leading().recip())
    }

    /// `F(D + s)`
    pub fn shift_arg(&self, s: &Rational) -> Self {
        let lin = Self::linear(s.clone());
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| &(&acc * &lin) + &Self::constant(c.clone()))
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let dd = divisor.degree().unwrap();
        let lead = divisor.leading();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] / &lead;
            if !c.is_zero() {
                for (j, dc) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] -= &c * dc;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn to_json(&self) -> Value {
        json!(self.coeffs.iter().map(number::to_string).collect::<Vec<_>>())
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let arr = value
            .as_array()
            .ok_or_else(|| Error::InvalidArgument("Euler polynomial must be an array".into()))?;
        let coeffs = arr
            .iter()
            .map(|v| {
                v.as_str()
                    .ok_or_else(|| Error::InvalidArgument("coefficient is not a string".into()))
                    .and_then(number::parse)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(coeffs))
    }
}

impl fmt::Display for EulerPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if k == 1 {
                        write!(f, "D")?
                    } else {
                        write!(f, "D^{k}")?
                    }
                }
            }
        }
        Ok(())
    }
}

impl Add for &EulerPoly {
    type Output = EulerPoly;
    fn add(self, rhs: &EulerPoly) -> EulerPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        EulerPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &EulerPoly {
    type Output = EulerPoly;
    fn sub(self, rhs: &EulerPoly) -> EulerPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        EulerPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &EulerPoly {
    type Output = EulerPoly;
    fn mul(self, rhs: &EulerPoly) -> EulerPoly {
        if self.is_zero() || rhs.is_zero() {
            return EulerPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        EulerPoly::new(out)
    }
}

impl Neg for &EulerPoly {
    type Output = EulerPoly;
    fn neg(self) -> EulerPoly {
        self.scale(&-Rational::one())
    }
}

/// `N(D) / Q(D)` in lowest terms with monic `Q`; acts as `x^mu -> N(mu)/Q(mu) x^mu`.
///
/// Reduction is canonical, so structural equality is equality of rational functions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EulerRational {
    num: EulerPoly,
    den: EulerPoly,
}

impl EulerRational {
    pub fn new(num: EulerPoly, den: EulerPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::InvalidArgument("zero denominator in Euler rational".into()));
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = num.gcd(&den);
        let (num, den) = (num.div_rem(&g).0, den.div_rem(&g).0);
        let lead = den.leading();
        Ok(Self { num: num.scale(&lead.recip()), den: den.monic() })
    }

    pub fn zero() -> Self {
        Self { num: EulerPoly::zero(), den: EulerPoly::one() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(EulerPoly::constant(c))
    }

    pub fn from_poly(p: EulerPoly) -> Self {
        Self { num: p, den: EulerPoly::one() }
    }

    /// `1 / Q(D)`
    pub fn inverse_of(q: EulerPoly) -> Result<Self> {
        Self::new(EulerPoly::one(), q)
    }

    pub fn num(&self) -> &EulerPoly {
        &self.num
    }

    pub fn den(&self) -> &EulerPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    /// `N(mu)/Q(mu)`, or `None` where `Q(mu) = 0`.
    pub fn eval(&self, mu: &Rational) -> Option<Rational> {
        let q = self.den.eval(mu);
        if q.is_zero() {
            None
        } else {
            Some(self.num.eval(mu) / q)
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { num: self.num.scale(c), den: self.den.clone() }
    }

    /// `R(D + s)`
    pub fn shift_arg(&self, s: &Rational) -> Self {
        Self::new(self.num.shift_arg(s), self.den.shift_arg(s)).expect("shift keeps the denominator nonzero")
    }

    pub fn recip(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn to_json(&self) -> Value {
        json!({"num": self.num.to_json(), "den": self.den.to_json()})
    }
}

impl fmt::Display for EulerRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl Add for &EulerRational {
    type Output = EulerRational;
    fn add(self, rhs: &EulerRational) -> EulerRational {
        EulerRational::new(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
            .expect("product of nonzero denominators")
    }
}

impl Sub for &EulerRational {
    type Output = EulerRational;
    fn sub(self, rhs: &EulerRational) -> EulerRational {
        self + &(-rhs)
    }
}

impl Mul for &EulerRational {
    type Output = EulerRational;
    fn mul(self, rhs: &EulerRational) -> EulerRational {
        EulerRational::new(&self.num * &rhs.num, &self.den * &rhs.den).expect("product of nonzero denominators")
    }
}

impl Neg for &EulerRational {
    type Output = EulerRational;
    fn neg(self) -> EulerRational {
        self.scale(&-Rational::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number::{frac, int};
    use proptest::prelude::*;

    fn ep(c: &[i64]) -> EulerPoly {
        EulerPoly::new(c.iter().map(|&v| int(v)).collect())
    }

    #[test]
    fn diagonal_evaluation() {
        // (D + 3/2)(D - 1)
        let f = EulerPoly::from_roots(&[frac(-3, 2), int(1)]);
        assert_eq!(f.eval(&frac(-3, 2)), int(0));
        assert_eq!(f.eval(&int(1)), int(0));
        assert_eq!(f.eval(&int(0)), frac(-3, 2));
        assert_eq!(EulerPoly::falling(3).eval(&int(5)), int(60));
    }

    #[test]
    fn division_and_gcd() {
        let a = &ep(&[-1, 0, 1]) * &ep(&[2, 1]); // (D^2-1)(D+2)
        let b = &ep(&[1, 1]) * &ep(&[5, 1]); // (D+1)(D+5)
        assert_eq!(a.gcd(&b), ep(&[1, 1]));
        let (q, r) = a.div_rem(&ep(&[1, 1]));
        assert!(r.is_zero());
        assert_eq!(&q * &ep(&[1, 1]), a);
    }

    #[test]
    fn shift_argument() {
        let f = ep(&[0, 0, 1]); // D^2
        assert_eq!(f.shift_arg(&int(1)), ep(&[1, 2, 1]));
        assert_eq!(f.shift_arg(&int(1)).eval(&int(2)), f.eval(&int(3)));
    }

    #[test]
    fn rational_is_reduced() {
        let r = EulerRational::new(&ep(&[1, 1]) * &ep(&[0, 2]), &ep(&[2, 2]) * &ep(&[3, 1])).unwrap();
        assert_eq!(r.num(), &ep(&[0, 1]));
        assert_eq!(r.den(), &ep(&[3, 1]));
        assert_eq!(r.eval(&int(-3)), None);
        assert_eq!(r.eval(&int(1)), Some(frac(1, 4)));
        assert!(EulerRational::new(ep(&[1]), EulerPoly::zero()).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(ep(&[-1, 0, 2]).to_string(), "2*D^2 - 1");
        let r = EulerRational::inverse_of(ep(&[1, 1])).unwrap();
        assert_eq!(r.to_string(), "(1)/(D + 1)");
    }

    proptest! {
        #[test]
        fn shift_then_eval(c in prop::collection::vec(-4i64..5, 0..5), s in -3i64..4, mu in -5i64..6) {
            let f = ep(&c);
            prop_assert_eq!(f.shift_arg(&int(s)).eval(&int(mu)), f.eval(&int(mu + s)));
        }

        #[test]
        fn rational_field_ops(a in prop::collection::vec(-3i64..4, 1..4), b in prop::collection::vec(-3i64..4, 1..4), mu in 7i64..12) {
            // Denominators D + k with k >= 1 never vanish at mu >= 7.
            let ra = EulerRational::new(ep(&a), ep(&[3, 1])).unwrap();
            let rb = EulerRational::new(ep(&b), ep(&[1, 2])).unwrap();
            let m = int(mu);
            let ea = ra.eval(&m).unwrap();
            let eb = rb.eval(&m).unwrap();
            prop_assert_eq!((&ra + &rb).eval(&m).unwrap(), &ea + &eb);
            prop_assert_eq!((&ra * &rb).eval(&m).unwrap(), &ea * &eb);
        }
    }
}
