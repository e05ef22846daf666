//! Equations of hypergeometric type, their separations, and closed solutions.
//!
//! Series routes go through [`solve_series`]; polynomial families use the
//! exponential form `exp(-A) x^n` and are normalized to the usual conventions
//! (constant term 1 for the hypergeometric series, leading `(-1)^n/n!` for
//! Laguerre, leading `2^n` for Hermite and Chebyshev U).

pub mod oracle;
pub mod periodic;

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::number::{self, factorial, int, pochhammer, pow, Rational};
use crate::op::{separate, DiffOp, EulerPoly, EulerRational, GradedOp, Separation};
use crate::solver::{exp_apply, exp_apply_factored, normalize, solve_series, SeparationMode};
use crate::xseries::XSeries;

pub use periodic::{periodic_cos, periodic_cos_direct, IndexConvention};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Hg2F1,
    Chg,
    Pfq,
    Laguerre,
    Hermite,
    ChebyshevU,
    PeriodicCos,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Hg2F1 => "hg",
            Family::Chg => "chg",
            Family::Pfq => "pfq",
            Family::Laguerre => "laguerre",
            Family::Hermite => "hermite",
            Family::ChebyshevU => "chebyshev_u",
            Family::PeriodicCos => "periodic_cos",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Some(match name {
            "hg" | "2f1" | "hypergeometric" => Family::Hg2F1,
            "chg" | "1f1" | "confluent" => Family::Chg,
            "pfq" => Family::Pfq,
            "laguerre" => Family::Laguerre,
            "hermite" => Family::Hermite,
            "chebyshev_u" | "chebyshev" => Family::ChebyshevU,
            "periodic_cos" | "periodic" => Family::PeriodicCos,
            _ => return None,
        })
    }
}

/// Which end of the equation seeds the solution.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    /// `F(D)` from the lowest-degree part; ascending series about `x = 0`.
    EulerSeeded,
    /// `F(D)` from the highest-degree part; `P` carries the derivatives and lowers.
    DerivativeSeeded,
}

impl Variant {
    fn mode(self) -> SeparationMode {
        match self {
            Variant::EulerSeeded => SeparationMode::Ascending,
            Variant::DerivativeSeeded => SeparationMode::Descending,
        }
    }
}

/// A family with bound parameters.
///
/// Keys: `alpha beta gamma` (hg), `alpha gamma` (chg), `a1.. b1..` (pfq),
/// `n alpha` (laguerre), `n` (hermite, chebyshev_u), `a` (periodic_cos).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub family: Family,
    pub params: BTreeMap<String, Rational>,
    pub variant: Variant,
}

/// `L`, its separation and the rational seeds `F(lambda) = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyEquation {
    pub operator: DiffOp,
    pub separation: Separation,
    pub roots: Vec<Rational>,
}

impl FamilySpec {
    pub fn new(family: Family, variant: Variant) -> Self {
        Self { family, params: BTreeMap::new(), variant }
    }

    pub fn with(mut self, key: &str, value: Rational) -> Self {
        self.params.insert(key.to_string(), value);
        self
    }

    pub fn param(&self, key: &str) -> Result<&Rational> {
        self.params
            .get(key)
            .ok_or_else(|| Error::InvalidArgument(format!("{} needs parameter {key:?}", self.family.name())))
    }

    /// Integer parameter `n >= 0`.
    pub fn index(&self, key: &str) -> Result<u32> {
        let v = self.param(key)?;
        crate::solver::small_nonneg(v)
            .ok_or_else(|| Error::InvalidArgument(format!("{key} must be a non-negative integer, got {v}")))
    }

    /// Numbered parameters `prefix1, prefix2, ...` in order.
    pub fn list(&self, prefix: &str) -> Vec<Rational> {
        (1..).map_while(|i| self.params.get(&format!("{prefix}{i}")).cloned()).collect()
    }

    /// The defining operator (in the multiplied form for periodic_cos, cos cut at `x^order`).
    pub fn operator(&self, order: u32) -> Result<DiffOp> {
        Ok(match self.family {
            Family::Hg2F1 => hypergeometric_operator(self.param("alpha")?, self.param("beta")?, self.param("gamma")?),
            Family::Chg => confluent_operator(self.param("alpha")?, self.param("gamma")?),
            Family::Pfq => pfq_operator(&self.list("a"), &self.list("b"))?,
            Family::Laguerre => laguerre_operator(self.index("n")?, self.param("alpha")?),
            Family::Hermite => hermite_operator(self.index("n")?),
            Family::ChebyshevU => chebyshev_u_operator(self.index("n")?),
            Family::PeriodicCos => periodic::periodic_operator_multiplied(self.param("a")?, order),
        })
    }

    pub fn equation(&self, order: u32) -> Result<FamilyEquation> {
        let operator = self.operator(order)?;
        let separation = match self.family {
            Family::PeriodicCos => periodic::periodic_separation(self.param("a")?, order),
            _ => separate(&normalize(&operator, self.variant.mode())?),
        };
        let roots = crate::solver::indicial_roots(&separation.f)?.roots.into_iter().map(|(r, _)| r).collect();
        Ok(FamilyEquation { operator, separation, roots })
    }
}

fn lin(c: Rational) -> EulerPoly {
    EulerPoly::linear(c)
}

fn product(params: &[Rational], shift: &Rational) -> EulerPoly {
    params.iter().fold(EulerPoly::one(), |acc, a| &acc * &lin(a + shift))
}

/// `x(1-x) d^2 + [gamma - (alpha+beta+1) x] d - alpha beta`.
pub fn hypergeometric_operator(alpha: &Rational, beta: &Rational, gamma: &Rational) -> DiffOp {
    [
        DiffOp::term(int(1), 1, 2),
        DiffOp::term(int(-1), 2, 2),
        DiffOp::term(gamma.clone(), 0, 1),
        DiffOp::term(-(alpha + beta + int(1)), 1, 1),
        DiffOp::scalar(-(alpha * beta)),
    ]
    .iter()
    .fold(DiffOp::zero(), |acc, t| &acc + t)
}

/// `x d^2 + (gamma - x) d - alpha`.
pub fn confluent_operator(alpha: &Rational, gamma: &Rational) -> DiffOp {
    [
        DiffOp::term(int(1), 1, 2),
        DiffOp::term(gamma.clone(), 0, 1),
        DiffOp::term(int(-1), 1, 1),
        DiffOp::scalar(-alpha.clone()),
    ]
    .iter()
    .fold(DiffOp::zero(), |acc, t| &acc + t)
}

fn check_pfq_shape(num: &[Rational], den: &[Rational]) -> Result<()> {
    if num.len() != den.len() + 1 {
        return Err(Error::Shape { expected: den.len() + 1, found: num.len() });
    }
    Ok(())
}

/// `D prod (D + b_j - 1) - x prod (D + a_i)`.
pub fn pfq_operator(num: &[Rational], den: &[Rational]) -> Result<DiffOp> {
    check_pfq_shape(num, den)?;
    let f = &EulerPoly::d() * &product(den, &int(-1));
    Ok(&DiffOp::from_euler(&f) - &DiffOp::from_euler(&product(num, &int(0))).mul_x_power(1))
}

/// `x d^2 + (alpha + 1 - x) d + n`.
pub fn laguerre_operator(n: u32, alpha: &Rational) -> DiffOp {
    confluent_operator(&int(-(n as i64)), &(alpha + int(1)))
}

/// `d^2 - 2x d + 2n`.
pub fn hermite_operator(n: u32) -> DiffOp {
    &(&DiffOp::term(int(1), 0, 2) + &DiffOp::term(int(-2), 1, 1)) + &DiffOp::scalar(int(2 * n as i64))
}

/// `(1 - x^2) d^2 - 3x d + n(n+2)`.
pub fn chebyshev_u_operator(n: u32) -> DiffOp {
    let n = n as i64;
    [
        DiffOp::term(int(1), 0, 2),
        DiffOp::term(int(-1), 2, 2),
        DiffOp::term(int(-3), 1, 1),
        DiffOp::scalar(int(n * (n + 2))),
    ]
    .iter()
    .fold(DiffOp::zero(), |acc, t| &acc + t)
}

fn pick_root(roots: &[Rational], index: usize) -> Result<Rational> {
    roots.get(index).cloned().ok_or_else(|| {
        Error::InvalidArgument(format!("root index {index} out of range (have {})", roots.len()))
    })
}

/// Separation `F = D(D + gamma - 1)`, `P = -x (D + alpha)(D + beta)`.
pub fn hypergeometric_separation(alpha: &Rational, beta: &Rational, gamma: &Rational) -> Separation {
    let f = &EulerPoly::d() * &lin(gamma - int(1));
    let q = &lin(alpha.clone()) * &lin(beta.clone());
    Separation { f, p: GradedOp::source(EulerRational::from_poly(-&q), 1) }
}

/// `2F1` about `x = 0`. `root` 0 seeds `x^0`, `root` 1 seeds `x^(1-gamma)`.
pub fn hypergeometric_2f1(alpha: &Rational, beta: &Rational, gamma: &Rational, order: u32, root: usize) -> Result<XSeries> {
    let sep = hypergeometric_separation(alpha, beta, gamma);
    let lambda = pick_root(&[int(0), int(1) - gamma], root)?;
    Ok(solve_series(&sep.f, &sep.p, &lambda, order)?.solution)
}

/// `J_- = x d^2 + gamma d` as a graded operator.
pub fn j_minus(gamma: &Rational) -> GradedOp {
    GradedOp::from(&(&DiffOp::term(int(1), 1, 2) + &DiffOp::term(gamma.clone(), 0, 1)))
}

/// `(1/(D+alpha))` and `J_-`, the factors of the lowering operator `J~_-`.
pub fn hg_lowering_factors(alpha: &Rational, gamma: &Rational) -> Result<[GradedOp; 2]> {
    Ok([GradedOp::diagonal(EulerRational::inverse_of(lin(alpha.clone()))?), j_minus(gamma)])
}

/// `(-1)^n (alpha)_n / (gamma)_n * exp(-(1/(D+alpha)) J_-) x^n`, which is `2F1(alpha, -n; gamma; x)`.
pub fn hypergeometric_exp_form(alpha: &Rational, n: u32, gamma: &Rational, order: u32) -> Result<XSeries> {
    let raw = exp_apply_factored(&hg_lowering_factors(alpha, gamma)?, &int(n as i64), order, -1)?;
    let norm = sign(n) * pochhammer(alpha, n) / pochhammer(gamma, n);
    Ok(raw.scale(&norm))
}

fn sign(n: u32) -> Rational {
    if n % 2 == 0 {
        int(1)
    } else {
        int(-1)
    }
}

/// Separation `F = D(D + gamma - 1)`, `P = -x (D + alpha)`.
pub fn confluent_separation(alpha: &Rational, gamma: &Rational) -> Separation {
    let f = &EulerPoly::d() * &lin(gamma - int(1));
    Separation { f, p: GradedOp::source(EulerRational::from_poly(-&lin(alpha.clone())), 1) }
}

pub fn confluent_1f1(alpha: &Rational, gamma: &Rational, order: u32, root: usize) -> Result<XSeries> {
    let sep = confluent_separation(alpha, gamma);
    let lambda = pick_root(&[int(0), int(1) - gamma], root)?;
    Ok(solve_series(&sep.f, &sep.p, &lambda, order)?.solution)
}

/// `(-1)^n / (gamma)_n * exp(-(x d^2 + gamma d)) x^n`, which is `1F1(-n; gamma; x)`.
pub fn confluent_exp_form(n: u32, gamma: &Rational, order: u32) -> Result<XSeries> {
    let raw = exp_apply(&j_minus(gamma), &int(n as i64), order, -1)?;
    Ok(raw.scale(&(sign(n) / pochhammer(gamma, n))))
}

/// Separation `F = D prod (D + b_j - 1)`, `P = -x prod (D + a_i)`.
pub fn pfq_separation(num: &[Rational], den: &[Rational]) -> Result<Separation> {
    check_pfq_shape(num, den)?;
    let f = &EulerPoly::d() * &product(den, &int(-1));
    let p = GradedOp::source(EulerRational::from_poly(-&product(num, &int(0))), 1);
    Ok(Separation { f, p })
}

/// Ascending seeds `0, 1 - b_1, 1 - b_2, ...`.
pub fn pfq_roots(den: &[Rational]) -> Vec<Rational> {
    std::iter::once(int(0)).chain(den.iter().map(|b| int(1) - b)).collect()
}

pub fn pfq(num: &[Rational], den: &[Rational], order: u32, root: usize) -> Result<XSeries> {
    let sep = pfq_separation(num, den)?;
    let lambda = pick_root(&pfq_roots(den), root)?;
    Ok(solve_series(&sep.f, &sep.p, &lambda, order)?.solution)
}

/// The equation divided by `-x`: `F = prod (D + a_i)`, `P = -x^{-1} D prod (D + b_j - 1)`.
pub fn pfq_descending_separation(num: &[Rational], den: &[Rational]) -> Result<Separation> {
    check_pfq_shape(num, den)?;
    let f = product(num, &int(0));
    let g = &EulerPoly::d() * &product(den, &int(-1));
    Ok(Separation { f, p: GradedOp::source(EulerRational::from_poly(-&g), -1) })
}

/// Descending branch seeded at `x^{-a_root}`.
pub fn pfq_descending(num: &[Rational], den: &[Rational], order: u32, root: usize) -> Result<XSeries> {
    let sep = pfq_descending_separation(num, den)?;
    let lambda = -pick_root(num, root)?;
    Ok(solve_series(&sep.f, &sep.p, &lambda, order)?.solution)
}

/// `L^alpha_n = (-1)^n / n! * exp(-(x d^2 + (alpha+1) d)) x^n`.
pub fn laguerre(n: u32, alpha: &Rational) -> Result<LaurentPoly> {
    let raw = exp_apply(&j_minus(&(alpha + int(1))), &int(n as i64), n, -1)?;
    Ok(terminated(&raw)?.scale(&(sign(n) / factorial(n))))
}

/// `H_n = 2^n exp(-d^2/4) x^n`.
pub fn hermite(n: u32) -> LaurentPoly {
    let a = GradedOp::from(&DiffOp::term(number::frac(1, 4), 0, 2));
    let raw = exp_apply(&a, &int(n as i64), n, -1).expect("constant-coefficient lowering operator");
    terminated(&raw).expect("finite").scale(&pow(&int(2), n))
}

/// `A = (1/(2(D+n+2))) d^2` as its two factors; depends on `n`.
pub fn chebyshev_u_generator(n: u32) -> [GradedOp; 2] {
    let r = EulerRational::inverse_of(EulerPoly::new(vec![int(2 * (n as i64 + 2)), int(2)])).expect("nonzero");
    [GradedOp::diagonal(r), GradedOp::from(&DiffOp::term(int(1), 0, 2))]
}

/// `U_n = 2^n exp(-A) x^n`.
pub fn chebyshev_u(n: u32) -> LaurentPoly {
    let raw = exp_apply_factored(&chebyshev_u_generator(n), &int(n as i64), n, -1).expect("D + n + 2 > 0 on the chain");
    terminated(&raw).expect("finite").scale(&pow(&int(2), n))
}

fn terminated(s: &XSeries) -> Result<LaurentPoly> {
    s.to_laurent()
        .ok_or_else(|| Error::InvalidArgument("expected a terminating polynomial".into()))
}

/// Dense coefficients of `x^0, x^1, ...` as a window ending at the last one.
pub fn series_from_coefficients(coeffs: Vec<Rational>) -> XSeries {
    let order = coeffs.len().saturating_sub(1) as u32;
    XSeries::new(
        int(0),
        crate::xseries::Direction::Ascending,
        crate::xseries::Truncation::Order(order),
        coeffs.into_iter().enumerate().map(|(k, c)| (k as u32, c)),
    )
}
