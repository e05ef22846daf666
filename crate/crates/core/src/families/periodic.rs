//! `y'' + a cos(x) y = 0`, multiplied through by `x^2`: `[D(D-1) + a x^2 cos x] y = 0`.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::number::{factorial, int, pow, Rational};
use crate::op::{DiffOp, EulerPoly, EulerRational, GradedOp, Separation};
use crate::solver::solve_series;
use crate::xseries::{Direction, Truncation, XSeries};

use super::oracle::cos_poly;

fn check_lambda(lambda: u32) -> Result<()> {
    if lambda > 1 {
        return Err(Error::InvalidArgument("periodic branch lambda must be 0 or 1".into()));
    }
    Ok(())
}

/// `F = D(D-1)`, `P = a x^2 cos x` with cos truncated so every shift stays within `order`.
pub fn periodic_separation(a: &Rational, order: u32) -> Separation {
    let f = &EulerPoly::d() * &EulerPoly::linear(int(-1));
    let mut p = GradedOp::zero();
    let mut k = 0;
    while 2 * k + 2 <= order {
        let sign = if k % 2 == 0 { int(1) } else { int(-1) };
        p.add_term(EulerRational::constant(a * sign / factorial(2 * k)), 2 * k as i64 + 2);
        k += 1;
    }
    Separation { f, p }
}

/// `x^2 d^2 + a x^2 cos x`, exact on windows of `order` offsets.
pub fn periodic_operator_multiplied(a: &Rational, order: u32) -> DiffOp {
    let mut op = DiffOp::term(int(1), 2, 2);
    for (e, c) in cos_poly(order).terms() {
        op.add_term(e as u32 + 2, 0, a * c);
    }
    op
}

/// `d^2 + a cos x`, with cos kept through `x^max_exponent`.
pub fn periodic_operator(a: &Rational, max_exponent: u32) -> DiffOp {
    let mut op = DiffOp::term(int(1), 0, 2);
    for (e, c) in cos_poly(max_exponent).terms() {
        op.add_term(e as u32, 0, a * c);
    }
    op
}

/// Inverse-operator series from `x^lambda`, `lambda` in `{0, 1}`.
pub fn periodic_cos(a: &Rational, lambda: u32, order: u32) -> Result<XSeries> {
    check_lambda(lambda)?;
    let sep = periodic_separation(a, order);
    Ok(solve_series(&sep.f, &sep.p, &int(lambda as i64), order)?.solution)
}

/// How the closed multi-index coefficient sum is read.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IndexConvention {
    /// Ordered tuples `(n_1, ..., n_m)`, each `n_i >= 0`, prefactor `(-a)^m`.
    OrderedTuples,
    /// The same ordered sum with the additional `1/m!` prefactor as printed.
    AsDisplayed,
}

/// Evaluates the closed nested-sum coefficient formula directly, keeping every
/// term with exponent `<= lambda + order`.
pub fn periodic_cos_direct(a: &Rational, lambda: u32, order: u32, convention: IndexConvention) -> Result<XSeries> {
    check_lambda(lambda)?;
    let lam = lambda as i64;
    let mut coeffs: BTreeMap<u32, Rational> = BTreeMap::new();
    let budget = order as i64;
    let mut m = 0i64;
    // Exponent of a tuple is lambda + 2(m + sum n_i); m alone costs 2m.
    while 2 * m <= budget {
        let mut tuple = vec![0i64; m as usize];
        loop {
            let total: i64 = tuple.iter().sum();
            let offset = 2 * (m + total);
            if offset <= budget {
                let mut w = pow(&-a.clone(), m as u32);
                if convention == IndexConvention::AsDisplayed {
                    w /= factorial(m as u32);
                }
                for &n in &tuple {
                    let sign = if n % 2 == 0 { int(1) } else { int(-1) };
                    w *= sign / factorial(2 * n as u32);
                }
                for r in 1..=m {
                    // (2[m + lambda/2 - r + s])! / (2[m + lambda/2 + 1 - r + s])!, s = n_1 + .. + n_{m+1-r}
                    let s: i64 = tuple[..(m + 1 - r) as usize].iter().sum();
                    let top = 2 * (m - r + s) + lam;
                    let bottom = 2 * (m + 1 - r + s) + lam;
                    w *= factorial(top as u32) / factorial(bottom as u32);
                }
                *coeffs.entry(offset as u32).or_insert_with(Rational::zero) += w;
            }
            if !next_tuple(&mut tuple, budget / 2 - m) {
                break;
            }
        }
        m += 1;
    }
    Ok(XSeries::new(int(lam), Direction::Ascending, Truncation::Order(order), coeffs))
}

/// Advances to the next tuple with component sum `<= cap`, lexicographically.
fn next_tuple(tuple: &mut [i64], cap: i64) -> bool {
    for i in (0..tuple.len()).rev() {
        tuple[i] += 1;
        if tuple.iter().sum::<i64>() <= cap {
            return true;
        }
        tuple[i] = 0;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::oracle::cos_substitution;
    use crate::number::frac;
    use crate::solver::check_residual;

    fn oracle_series(a: &Rational, lambda: u32, order: u32) -> XSeries {
        let c = cos_substitution(a, lambda, lambda + order);
        XSeries::new(
            int(lambda as i64),
            Direction::Ascending,
            Truncation::Order(order),
            c.into_iter().enumerate().skip(lambda as usize).map(|(e, v)| ((e as u32) - lambda, v)),
        )
    }

    #[test]
    fn cos_examples() {
        let y = periodic_cos(&int(1), 0, 4).unwrap();
        assert_eq!(y.coeff_at_offset(2), frac(-1, 2));
        assert_eq!(y.coeff_at_offset(4), frac(1, 12));
        let y = periodic_cos(&int(0), 0, 6).unwrap();
        assert!(y.is_terminated());
        assert_eq!(y.offsets().count(), 1);
        for lambda in [0, 1] {
            let y = periodic_cos(&int(1), lambda, 9).unwrap();
            assert!(y.agrees_with(&oracle_series(&int(1), lambda, 9)));
            let op = periodic_operator_multiplied(&int(1), 9);
            assert!(check_residual(&op, &y, 9).is_zero());
        }
    }

    #[test]
    fn direct_formula_conventions() {
        let a = frac(3, 2);
        for lambda in [0, 1] {
            let y = periodic_cos(&a, lambda, 8).unwrap();
            let tuples = periodic_cos_direct(&a, lambda, 8, IndexConvention::OrderedTuples).unwrap();
            assert!(tuples.agrees_with(&y), "lambda {lambda}");
        }
        let y = periodic_cos(&int(1), 0, 8).unwrap();
        let shown = periodic_cos_direct(&int(1), 0, 8, IndexConvention::AsDisplayed).unwrap();
        assert_eq!(shown.first_disagreement(&y), Some(int(4)));
        assert_eq!(shown.coeff_at_offset(4), frac(1, 16));
        // m = 0 only
        let m0 = periodic_cos_direct(&int(1), 1, 1, IndexConvention::OrderedTuples).unwrap();
        assert_eq!(m0.offsets().count(), 1);
        assert_eq!(m0.coeff_at_offset(0), int(1));
    }
}
