//! Independent reference values: three-term recurrences, Pochhammer coefficient
//! formulas and direct power-series substitution.

use num_traits::{One, Zero};

use crate::laurent::LaurentPoly;
use crate::number::{factorial, frac, int, pochhammer, Rational};

/// `L^alpha_n` from `(n+1) L_{n+1} = (2n+1+alpha-x) L_n - (n+alpha) L_{n-1}`.
pub fn laguerre_recurrence(n: u32, alpha: &Rational) -> LaurentPoly {
    let mut prev = LaurentPoly::one();
    if n == 0 {
        return prev;
    }
    let mut cur = LaurentPoly::from_dense(&[alpha + int(1), int(-1)]);
    for k in 1..n {
        let k_r = int(k as i64);
        let factor = LaurentPoly::from_dense(&[int(2) * &k_r + int(1) + alpha, int(-1)]);
        let next = (&(&factor * &cur) - &prev.scale(&(&k_r + alpha))).scale(&(k_r + int(1)).recip());
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// Physicists' `H_n` from `H_{n+1} = 2x H_n - 2n H_{n-1}`.
pub fn hermite_recurrence(n: u32) -> LaurentPoly {
    let two_x = LaurentPoly::monomial(int(2), 1);
    let mut prev = LaurentPoly::one();
    if n == 0 {
        return prev;
    }
    let mut cur = two_x.clone();
    for k in 1..n {
        let next = &(&two_x * &cur) - &prev.scale(&int(2 * k as i64));
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// `U_n` from `U_{n+1} = 2x U_n - U_{n-1}`.
pub fn chebyshev_u_recurrence(n: u32) -> LaurentPoly {
    let two_x = LaurentPoly::monomial(int(2), 1);
    let mut prev = LaurentPoly::one();
    if n == 0 {
        return prev;
    }
    let mut cur = two_x.clone();
    for _ in 1..n {
        let next = &(&two_x * &cur) - &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// `prod (a_i)_k / (prod (b_j)_k k!)`.
pub fn pochhammer_coefficient(num: &[Rational], den: &[Rational], k: u32) -> Rational {
    let top = num.iter().fold(Rational::one(), |acc, a| acc * pochhammer(a, k));
    let bottom = den.iter().fold(factorial(k), |acc, b| acc * pochhammer(b, k));
    top / bottom
}

/// Coefficients `0..=order` of the generalized hypergeometric series.
pub fn pochhammer_series(num: &[Rational], den: &[Rational], order: u32) -> Vec<Rational> {
    (0..=order).map(|k| pochhammer_coefficient(num, den, k)).collect()
}

/// `cos(x)` through `x^max_exponent`.
pub fn cos_poly(max_exponent: u32) -> LaurentPoly {
    LaurentPoly::from_terms((0..=max_exponent / 2).map(|k| {
        let sign = if k % 2 == 0 { int(1) } else { int(-1) };
        (2 * k as i64, sign / factorial(2 * k))
    }))
}

/// Solves `y'' + a cos(x) y = 0` by substituting a power series.
///
/// `lambda = 0` gives `y(0) = 1, y'(0) = 0`; `lambda = 1` gives `y(0) = 0, y'(0) = 1`.
/// Returns coefficients of `x^0 ..= x^max_exponent`.
pub fn cos_substitution(a: &Rational, lambda: u32, max_exponent: u32) -> Vec<Rational> {
    let n = max_exponent as usize;
    let cos = cos_poly(max_exponent);
    let mut c = vec![Rational::zero(); n + 1];
    if lambda as usize <= n {
        c[lambda as usize] = Rational::one();
    }
    for k in 0..n.saturating_sub(1) {
        let conv = (0..=k).fold(Rational::zero(), |acc, j| acc + cos.coeff(j as i64) * &c[k - j]);
        c[k + 2] = -(a * conv) * frac(1, ((k + 2) * (k + 1)) as i64);
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_cases() {
        assert_eq!(laguerre_recurrence(1, &int(0)), LaurentPoly::from_dense(&[int(1), int(-1)]));
        assert_eq!(hermite_recurrence(1), LaurentPoly::monomial(int(2), 1));
        assert_eq!(chebyshev_u_recurrence(1), LaurentPoly::monomial(int(2), 1));
    }

    #[test]
    fn recurrence_values() {
        assert_eq!(
            laguerre_recurrence(3, &int(0)),
            LaurentPoly::from_dense(&[int(1), int(-3), frac(3, 2), frac(-1, 6)])
        );
        assert_eq!(laguerre_recurrence(1, &int(1)), LaurentPoly::from_dense(&[int(2), int(-1)]));
        assert_eq!(hermite_recurrence(3), LaurentPoly::from_dense(&[int(0), int(-12), int(0), int(8)]));
        assert_eq!(chebyshev_u_recurrence(3), LaurentPoly::from_dense(&[int(0), int(-4), int(0), int(8)]));
    }

    #[test]
    fn substitution_values() {
        let c = cos_substitution(&int(1), 0, 4);
        assert_eq!(c, vec![int(1), int(0), frac(-1, 2), int(0), frac(1, 12)]);
        let c = cos_substitution(&int(1), 1, 5);
        assert_eq!(c[1], int(1));
        assert_eq!(c[3], frac(-1, 6));
    }

    #[test]
    fn pochhammer_values() {
        let s = pochhammer_series(&[frac(1, 2), frac(1, 2)], &[frac(3, 2)], 3);
        assert_eq!(s, vec![int(1), frac(1, 6), frac(3, 40), frac(5, 112)]);
        assert_eq!(pochhammer_coefficient(&[int(1), int(1), int(1)], &[int(2), int(2)], 3), frac(1, 16));
    }
}
