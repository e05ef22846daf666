//! Exact rational scalars and the small combinatorial kernels built on them.
//!
//! Every scalar in the crate is a [`Rational`]: an arbitrary-precision,
//! always-reduced fraction with a positive denominator. External formats
//! render rationals as `"p/q"`, or `"p"` when the denominator is one.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar.
pub type Rational = BigRational;

/// Builds `n/1`.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Builds `p/q`. Panics when `q == 0`.
pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Rising factorial `a(a+1)...(a+n-1)`; `1` for `n = 0`.
pub fn pochhammer(a: &Rational, n: u32) -> Rational {
    let mut acc = Rational::one();
    let mut term = a.clone();
    for _ in 0..n {
        acc *= &term;
        if acc.is_zero() {
            break;
        }
        term += Rational::one();
    }
    acc
}

/// Falling factorial `mu(mu-1)...(mu-b+1)`; `1` for `b = 0`.
///
/// This is the coefficient picked up by `(d/dx)^b` acting on `x^mu`.
pub fn falling_factorial(mu: &Rational, b: u32) -> Rational {
    let mut acc = Rational::one();
    let mut term = mu.clone();
    for _ in 0..b {
        acc *= &term;
        if acc.is_zero() {
            break;
        }
        term -= Rational::one();
    }
    acc
}

pub fn factorial(n: u32) -> Rational {
    pochhammer(&Rational::one(), n)
}

/// `base^n` for a non-negative integer power.
pub fn pow(base: &Rational, n: u32) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..n {
        acc *= base;
    }
    acc
}

/// Renders as `"p/q"` or `"p"`.
pub fn to_string(r: &Rational) -> String {
    r.to_string()
}

/// Parses `"p/q"` or `"p"`, with an optional leading sign. Decimals are rejected.
pub fn parse(text: &str) -> Result<Rational> {
    let t = text.trim();
    let bad = || Error::InvalidArgument(format!("not an exact rational: {text:?}"));
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let valid = |s: &str, signed: bool| {
        let digits = if signed {
            s.strip_prefix(['-', '+']).unwrap_or(s)
        } else {
            s
        };
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid(num, true) || !valid(den, false) {
        return Err(bad());
    }
    let n: BigInt = num.trim_start_matches('+').parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::InvalidArgument(format!("zero denominator in {text:?}")));
    }
    Ok(Rational::new(n, d))
}

/// Returns the value as an `i64` when it is an integer that fits.
pub fn as_integer(r: &Rational) -> Option<i64> {
    if !r.is_integer() {
        return None;
    }
    i64::try_from(r.to_integer()).ok()
}

/// True when `r` is an integer `<= 0`.
pub fn is_nonpositive_integer(r: &Rational) -> bool {
    r.is_integer() && !r.is_positive()
}
