//! Indicial roots, inverse-operator series and exponential-form solutions.
//!
//! For `[F(D) + P] y = 0` and a root `lambda` of `F`, [`solve_series`] sums
//! `v_0 = x^lambda`, `v_{m+1} = -F(D)^{-1} P v_m`. Because every term of `P`
//! moves exponents the same way, each coefficient inside the window is fixed
//! after finitely many steps and the residual vanishes there exactly.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::number::{self, Rational};
use crate::op::{separate, DiffOp, EulerPoly, GradedOp, Separation};
use crate::xseries::{Direction, Truncation, XSeries};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndicialResult {
    /// Distinct rational roots, ascending, with multiplicities.
    pub roots: Vec<(Rational, u32)>,
    /// Degree of the factor left after removing every rational root.
    pub unresolved_degree: usize,
}

impl IndicialResult {
    pub fn is_degenerate(&self) -> bool {
        self.roots.iter().any(|(_, m)| *m > 1)
    }

    /// Roots repeated according to multiplicity.
    pub fn with_multiplicity(&self) -> Vec<Rational> {
        self.roots
            .iter()
            .flat_map(|(r, m)| std::iter::repeat_n(r.clone(), *m as usize))
            .collect()
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = BigInt::one();
    while &i * &i <= n {
        if (&n % &i).is_zero() {
            let j = &n / &i;
            if j != i {
                large.push(j);
            }
            small.push(i.clone());
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// All rational roots of `F` with multiplicities, by the rational-root theorem
/// on the integer-scaled polynomial followed by exact deflation.
pub fn indicial_roots(f: &EulerPoly) -> Result<IndicialResult> {
    if f.is_zero() {
        return Err(Error::ZeroIndicial);
    }
    let mut rest = f.monic();
    let mut roots: Vec<(Rational, u32)> = Vec::new();

    let mut zero_mult = 0;
    while rest.coeff(0).is_zero() && rest.degree() > Some(0) {
        rest = rest.div_rem(&EulerPoly::d()).0;
        zero_mult += 1;
    }
    if zero_mult > 0 {
        roots.push((Rational::zero(), zero_mult));
    }

    if rest.degree() > Some(0) {
        let lcm = rest.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let scaled: Vec<BigInt> = rest.coeffs().iter().map(|c| (c * &lcm).to_integer()).collect();
        let ps = divisors(&scaled[0]);
        let qs = divisors(scaled.last().unwrap());
        let mut candidates: Vec<Rational> = Vec::new();
        for p in &ps {
            for q in &qs {
                let r = Rational::new(p.clone(), q.clone());
                candidates.push(-r.clone());
                candidates.push(r);
            }
        }
        candidates.sort();
        candidates.dedup();
        for c in candidates {
            let mut mult = 0;
            while rest.degree() > Some(0) && rest.eval(&c).is_zero() {
                rest = rest.div_rem(&EulerPoly::linear(-c.clone())).0;
                mult += 1;
            }
            if mult > 0 {
                roots.push((c, mult));
            }
        }
    }
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(IndicialResult { roots, unresolved_degree: rest.degree().unwrap_or(0) })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveReport {
    pub solution: XSeries,
    pub mode: Direction,
    pub terminated: bool,
    /// Largest `m` with `v_m != 0`.
    pub iterations: u32,
    /// Exponents inside the walked window where `F` vanishes but no coefficient
    /// had to be divided by zero.
    pub resonances: Vec<Rational>,
}

impl SolveReport {
    pub fn to_json(&self) -> Value {
        json!({
            "solution": self.solution.to_json(),
            "mode": self.mode.as_str(),
            "terminated": self.terminated,
            "resonances": self.resonances.iter().map(number::to_string).collect::<Vec<_>>(),
        })
    }
}

/// Flow direction of a graded operator; `None` for the zero operator.
pub fn shift_direction(p: &GradedOp) -> Result<Option<Direction>> {
    if p.is_zero() {
        Ok(None)
    } else if p.is_raising() {
        Ok(Some(Direction::Ascending))
    } else if p.is_lowering() {
        Ok(Some(Direction::Descending))
    } else {
        Err(Error::MixedDegree)
    }
}

fn offset_exponent(lambda: &Rational, dir: Direction, k: u32) -> Rational {
    lambda + Rational::from_integer((dir.sign() * k as i64).into())
}

/// One application of a monotone graded operator to a sparse offset map.
///
/// Returns the image (offsets `<= order`) and whether anything nonzero fell past it.
fn step(
    op: &GradedOp,
    lambda: &Rational,
    dir: Direction,
    current: &BTreeMap<u32, Rational>,
    order: u32,
) -> Result<(BTreeMap<u32, Rational>, bool)> {
    let mut next: BTreeMap<u32, Rational> = BTreeMap::new();
    let mut dropped = false;
    for (&k, c) in current {
        let mu = offset_exponent(lambda, dir, k);
        for t in op.terms() {
            let w = t.r.eval(&mu).ok_or_else(|| Error::Resonance { exponent: mu.clone() })?;
            if w.is_zero() {
                continue;
            }
            let target = k as i64 + t.shift * dir.sign();
            if target < 0 {
                return Err(Error::InvalidArgument("operator moves exponents against the series direction".into()));
            }
            if target > order as i64 {
                dropped = true;
                continue;
            }
            *next.entry(target as u32).or_insert_with(Rational::zero) += w * c;
        }
    }
    next.retain(|_, c| !c.is_zero());
    Ok((next, dropped))
}

/// Applies `factors[0] * factors[1] * ...`, rightmost first.
///
/// Keeping the factors apart matters when a later factor has a pole that an
/// earlier one cancels: `(1/D) x d^2` on `x^0` is zero, while the reduced
/// product `d` is not.
fn step_chain(
    factors: &[GradedOp],
    lambda: &Rational,
    dir: Direction,
    current: &BTreeMap<u32, Rational>,
    order: u32,
) -> Result<(BTreeMap<u32, Rational>, bool)> {
    let mut acc = current.clone();
    let mut dropped = false;
    for f in factors.iter().rev() {
        let (next, d) = step(f, lambda, dir, &acc, order)?;
        dropped |= d;
        acc = next;
    }
    Ok((acc, dropped))
}

/// The inverse-operator series seeded at `x^lambda` with coefficient 1.
pub fn solve_series(f: &EulerPoly, p: &GradedOp, lambda: &Rational, order: u32) -> Result<SolveReport> {
    if !f.eval(lambda).is_zero() {
        return Err(Error::NotARoot { exponent: lambda.clone() });
    }
    let mode = shift_direction(p)?.unwrap_or(Direction::Ascending);
    let mut total: BTreeMap<u32, Rational> = BTreeMap::from([(0, Rational::one())]);
    let mut current = total.clone();
    let mut truncated = false;
    let mut iterations = 0;
    while !current.is_empty() {
        let (mut next, dropped) = step(p, lambda, mode, &current, order)?;
        truncated |= dropped;
        for (&k, v) in next.iter_mut() {
            let nu = offset_exponent(lambda, mode, k);
            let fv = f.eval(&nu);
            if fv.is_zero() {
                return Err(Error::Resonance { exponent: nu });
            }
            *v = -(&*v / fv);
        }
        if !next.is_empty() {
            iterations += 1;
        }
        for (&k, v) in &next {
            *total.entry(k).or_insert_with(Rational::zero) += v;
        }
        current = next;
    }
    total.retain(|_, c| !c.is_zero());

    let horizon = if truncated { order } else { total.keys().next_back().copied().unwrap_or(0) };
    let resonances = (1..=horizon)
        .map(|k| offset_exponent(lambda, mode, k))
        .filter(|nu| f.eval(nu).is_zero())
        .collect();
    let truncation = if truncated { Truncation::Order(order) } else { Truncation::Terminated };
    Ok(SolveReport {
        solution: XSeries::new(lambda.clone(), mode, truncation, total),
        mode,
        terminated: !truncated,
        iterations,
        resonances,
    })
}

/// `exp(sign * A) x^lambda` for a lowering operator `A`.
///
/// Terminates when the lowering chain reaches an annihilated exponent; otherwise
/// the result is exact through `order` offsets.
pub fn exp_apply(a: &GradedOp, lambda: &Rational, order: u32, sign: i32) -> Result<XSeries> {
    exp_apply_factored(std::slice::from_ref(a), lambda, order, sign)
}

/// [`exp_apply`] with `A = factors[0] * factors[1] * ...`, each factor applied in turn.
pub fn exp_apply_factored(factors: &[GradedOp], lambda: &Rational, order: u32, sign: i32) -> Result<XSeries> {
    let a = factors.iter().fold(GradedOp::identity(), |acc, f| acc.compose(f));
    if !(a.is_zero() || a.is_lowering()) || factors.iter().any(|f| f.shifts().any(|d| d > 0)) {
        return Err(Error::InvalidArgument("exponential form needs a lowering operator".into()));
    }
    if sign != 1 && sign != -1 {
        return Err(Error::InvalidArgument("sign must be +1 or -1".into()));
    }
    let dir = Direction::Descending;
    let mut total: BTreeMap<u32, Rational> = BTreeMap::from([(0, Rational::one())]);
    let mut current = total.clone();
    let mut truncated = false;
    let mut m: i64 = 0;
    while !current.is_empty() {
        m += 1;
        let (mut next, dropped) = step_chain(factors, lambda, dir, &current, order)?;
        truncated |= dropped;
        let w = Rational::new(BigInt::from(sign), BigInt::from(m));
        for v in next.values_mut() {
            *v *= &w;
        }
        for (&k, v) in &next {
            *total.entry(k).or_insert_with(Rational::zero) += v;
        }
        current = next;
    }
    let truncation = if truncated { Truncation::Order(order) } else { Truncation::Terminated };
    Ok(XSeries::new(lambda.clone(), dir, truncation, total))
}

/// Applies `factors[0] * factors[1] * ...` to a series, rightmost first.
pub fn apply_factored(factors: &[GradedOp], s: &XSeries, order: u32) -> Result<XSeries> {
    factors.iter().rev().try_fold(s.clone(), |acc, f| f.apply(&acc, order))
}

/// `exp(sign * A) s` for a lowering `A` on a descending series.
///
/// Stops when the terms vanish; otherwise after `order + 1` steps, which is where
/// every further contribution falls below the window of `s`.
pub fn exp_apply_series(factors: &[GradedOp], s: &XSeries, order: u32, sign: i32) -> Result<XSeries> {
    if s.direction() != Direction::Descending {
        return Err(Error::InvalidArgument("exponential of a lowering operator needs a descending series".into()));
    }
    let mut total = s.clone();
    let mut term = s.clone();
    for m in 1..=order as i64 + 1 {
        term = apply_factored(factors, &term, order)?.scale(&Rational::new(BigInt::from(sign), BigInt::from(m)));
        if term.is_zero() {
            return Ok(total);
        }
        total = total.add(&term)?;
    }
    Ok(total.with_order(order))
}

/// `L y`, truncated at `order` offsets. Zero inside the window for a valid solution.
pub fn check_residual(l: &DiffOp, y: &XSeries, order: u32) -> XSeries {
    l.apply(y, order)
}

/// [`check_residual`] for a separated pair `F(D) + P`.
pub fn check_residual_separated(sep: &Separation, y: &XSeries, order: u32) -> Result<XSeries> {
    sep.combined().apply(y, order)
}

/// Which end of the degree range becomes the Euler part `F(D)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeparationMode {
    /// Lowest degree becomes `F`; `P` raises exponents (series about `x = 0`).
    Ascending,
    /// Highest degree becomes `F`; `P` lowers exponents (polynomial/descending solutions).
    Descending,
}

/// Multiplies `op` by the power of `x` that moves the chosen end of its degree range to 0.
pub fn normalize(op: &DiffOp, mode: SeparationMode) -> Result<DiffOp> {
    let degrees = op.degrees();
    let anchor = match mode {
        SeparationMode::Ascending => degrees.first(),
        SeparationMode::Descending => degrees.last(),
    };
    let Some(&anchor) = anchor else {
        return Err(Error::ZeroIndicial);
    };
    if anchor <= 0 {
        return Ok(op.mul_x_power((-anchor) as u32));
    }
    let k = anchor as u32;
    let mut out = DiffOp::zero();
    for t in op.terms() {
        if t.x_power < k {
            return Err(Error::InvalidArgument(format!(
                "operator is not divisible by x^{k}; no polynomial separation with this mode"
            )));
        }
        out.add_term(t.x_power - k, t.d_order, t.coeff);
    }
    Ok(out)
}

/// Normalizes, separates and solves from every rational indicial root.
///
/// Repeated roots are reported as [`Error::DegenerateIndicial`] instead of
/// producing a single series, since the missing partner solution is logarithmic.
pub fn solve_operator(op: &DiffOp, mode: SeparationMode, order: u32) -> Result<Vec<SolveReport>> {
    let sep = separate(&normalize(op, mode)?);
    let roots = indicial_roots(&sep.f)?;
    if let Some((root, multiplicity)) = roots.roots.iter().find(|(_, m)| *m > 1) {
        return Err(Error::DegenerateIndicial { root: root.clone(), multiplicity: *multiplicity });
    }
    roots
        .roots
        .iter()
        .map(|(r, _)| solve_series(&sep.f, &sep.p, r, order))
        .collect()
}

/// Smallest exponent `> window` (ascending) with a nonzero residual, treating `y` as exact.
pub fn first_residual_exponent(l: &DiffOp, y: &XSeries) -> Option<Rational> {
    let exact = y.as_terminated();
    let r = l.apply(&exact, u32::MAX);
    let mut es: Vec<Rational> = r.terms().map(|(e, _)| e).collect();
    es.sort();
    match y.direction() {
        Direction::Ascending => es.first().cloned(),
        Direction::Descending => es.last().cloned(),
    }
}

/// Integer value of a rational that must be a small non-negative integer.
pub(crate) fn small_nonneg(r: &Rational) -> Option<u32> {
    if r.is_integer() && !r.is_negative() {
        r.to_integer().to_u32()
    } else {
        None
    }
}
