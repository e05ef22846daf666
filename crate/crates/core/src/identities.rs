//! Rodriguez formulas and generating functions, each computed along a route
//! independent of the family builders and compared exactly.

use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::families;
use crate::laurent::LaurentPoly;
use crate::number::{factorial, falling_factorial, frac, int, pow, Rational};
use crate::op::{conjugate_diffop_by_exp, DiffOp};
use crate::tseries::TSeries;

/// Symbolic weight carried next to a polynomial; never expanded.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Weight {
    None,
    ExpNegX,
    ExpNegX2,
}

/// `p(x) * w(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedPoly {
    pub poly: LaurentPoly,
    pub weight: Weight,
}

impl WeightedPoly {
    pub fn new(poly: LaurentPoly, weight: Weight) -> Self {
        Self { poly, weight }
    }

    /// `d(p e^{-x}) = (p' - p) e^{-x}`, `d(p e^{-x^2}) = (p' - 2x p) e^{-x^2}`.
    pub fn derivative(&self) -> Self {
        let dp = self.poly.derivative();
        let poly = match self.weight {
            Weight::None => dp,
            Weight::ExpNegX => &dp - &self.poly,
            Weight::ExpNegX2 => &dp - &(&LaurentPoly::monomial(int(2), 1) * &self.poly),
        };
        Self { poly, weight: self.weight }
    }

    pub fn nth_derivative(&self, n: u32) -> Self {
        (0..n).fold(self.clone(), |acc, _| acc.derivative())
    }
}

/// `(1/n!) e^x d^n (e^{-x} x^n)`.
pub fn rodriguez_laguerre(n: u32) -> LaurentPoly {
    let w = WeightedPoly::new(LaurentPoly::monomial(int(1), n as i64), Weight::ExpNegX).nth_derivative(n);
    w.poly.scale(&factorial(n).recip())
}

/// `(-1)^n e^{x^2} d^n e^{-x^2}`.
pub fn rodriguez_hermite(n: u32) -> LaurentPoly {
    let w = WeightedPoly::new(LaurentPoly::one(), Weight::ExpNegX2).nth_derivative(n);
    w.poly.scale(&pow(&int(-1), n))
}

/// `e^{-W} op e^{W}` for a weight with `W' = w`: every `d` becomes `d + w`.
pub fn weight_conjugate(op: &DiffOp, w: &LaurentPoly) -> DiffOp {
    let mut shifted_d = DiffOp::d();
    for (e, c) in w.terms() {
        shifted_d.add_term(e as u32, 0, c.clone());
    }
    let mut out = DiffOp::zero();
    for t in op.terms() {
        let term = DiffOp::term(t.coeff.clone(), t.x_power, 0).compose(&shifted_d.pow(t.d_order));
        out = &out + &term;
    }
    out
}

/// Hermite, read backwards from the Rodriguez formula:
/// `(-1)^n e^{x^2} d^n e^{-x^2} = (-1)^n (d - 2x)^n 1 = 2^n (x - d/2)^n 1`, and
/// `e^{A} (x - d/2) e^{-A} = x` for `A = d^2/4` turns the last form into `2^n e^{-A} x^n`.
///
/// Returns the polynomial from the operator side after checking both identities.
pub fn expform_from_rodriguez(n: u32) -> Result<LaurentPoly> {
    let two_x = LaurentPoly::monomial(int(2), 1);
    let lowered = weight_conjugate(&DiffOp::d(), &(-&two_x));
    let raised = &DiffOp::x() - &DiffOp::term(frac(1, 2), 0, 1);
    if lowered.scale(&int(-1)) != raised.scale(&int(2)) {
        return Err(Error::InvalidArgument("e^{x^2} d e^{-x^2} is not d - 2x".into()));
    }
    let a = DiffOp::term(frac(1, 4), 0, 2);
    let conj = conjugate_diffop_by_exp(&a.scale(&int(-1)), &raised, 8)
        .ok_or_else(|| Error::InvalidArgument("conjugation series did not terminate".into()))?;
    if conj != DiffOp::x() {
        return Err(Error::InvalidArgument("e^{A} (x - d/2) e^{-A} is not x".into()));
    }
    let op = lowered.scale(&int(-1)).pow(n);
    Ok(apply_poly(&op, &LaurentPoly::one()))
}

/// The chain from `L_n = ((-1)^n/n!) R^n 1`, `R = exp(-B) x exp(B)`, `B = x d^2 + d`:
/// `e^{-x} R e^{x} = d x d` and `(d x d)^n = d^n x^n d^n`.
pub fn laguerre_rodriguez_chain(n: u32) -> bool {
    let b = &DiffOp::term(int(1), 1, 2) + &DiffOp::d();
    let Some(r) = conjugate_diffop_by_exp(&b, &DiffOp::x(), 8) else {
        return false;
    };
    let dxd = DiffOp::d().compose(&DiffOp::x()).compose(&DiffOp::d());
    let step1 = weight_conjugate(&r, &LaurentPoly::one()) == dxd;
    let dn = DiffOp::d().pow(n);
    let step2 = dxd.pow(n) == dn.compose(&DiffOp::term(int(1), n, 0)).compose(&dn);
    let via_r = apply_poly(&r.pow(n), &LaurentPoly::one()).scale(&(pow(&int(-1), n) / factorial(n)));
    step1 && step2 && via_r == rodriguez_laguerre(n)
}

/// Two polynomials that should agree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyCheck {
    pub n: u32,
    pub lhs: LaurentPoly,
    pub rhs: LaurentPoly,
}

impl PolyCheck {
    pub fn equal(&self) -> bool {
        self.lhs == self.rhs
    }

    pub fn to_json(&self) -> Value {
        json!({"n": self.n, "lhs": self.lhs.to_json(), "rhs": self.rhs.to_json(), "equal": self.equal()})
    }
}

/// Rodriguez side against the exponential-form family, `n = 0..=max_n`.
pub fn rodriguez_report(family: families::Family, max_n: u32) -> Result<Vec<PolyCheck>> {
    (0..=max_n)
        .map(|n| {
            let (lhs, rhs) = match family {
                families::Family::Laguerre => (rodriguez_laguerre(n), families::laguerre(n, &int(0))?),
                families::Family::Hermite => (rodriguez_hermite(n), families::hermite(n)),
                _ => {
                    return Err(Error::InvalidArgument(format!(
                        "no Rodriguez formula for {}",
                        family.name()
                    )))
                }
            };
            Ok(PolyCheck { n, lhs, rhs })
        })
        .collect()
}

/// Term-by-term sum against a closed form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GfCheck {
    pub lhs: TSeries,
    pub rhs: TSeries,
}

impl GfCheck {
    pub fn first_mismatch(&self) -> Option<usize> {
        self.lhs.first_mismatch(&self.rhs)
    }

    pub fn equal(&self) -> bool {
        self.first_mismatch().is_none()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "order": self.lhs.order(),
            "lhs": self.lhs.to_json(),
            "rhs": self.rhs.to_json(),
            "equal": self.equal(),
            "first_mismatch": self.first_mismatch(),
        })
    }
}

fn t_series(order: usize, coeffs: Vec<LaurentPoly>) -> TSeries {
    TSeries::from_coeffs(order, coeffs)
}

/// `exp(-x t/(1-t)) / (1-t)` through `t^order`.
pub fn laguerre_gf_closed(order: usize) -> Result<TSeries> {
    let one_minus_t = t_series(order, vec![LaurentPoly::one(), LaurentPoly::constant(int(-1))]);
    let inv = one_minus_t.inv()?;
    let t = t_series(order, vec![LaurentPoly::zero(), LaurentPoly::one()]);
    let exponent = (&t * &inv).mul_poly(&LaurentPoly::monomial(int(-1), 1));
    Ok(&exponent.exp()? * &inv)
}

/// `sum L^0_n t^n` against the closed form.
pub fn gf_laguerre(order: usize) -> Result<GfCheck> {
    let lhs = TSeries::from_fn(order, |n| families::laguerre(n as u32, &int(0)).expect("alpha = 0 has no resonance"));
    Ok(GfCheck { lhs, rhs: laguerre_gf_closed(order)? })
}

/// `e^{-xt}` through `t^order`.
pub fn exp_neg_xt(order: usize) -> TSeries {
    TSeries::from_fn(order, |n| LaurentPoly::monomial(pow(&int(-1), n as u32) / factorial(n as u32), n as i64))
}

/// `B = x d^2 + d`.
pub fn laguerre_b() -> DiffOp {
    &DiffOp::term(int(1), 1, 2) + &DiffOp::d()
}

/// `op p` for a polynomial `p`, exact.
pub fn apply_poly(op: &DiffOp, p: &LaurentPoly) -> LaurentPoly {
    let mut out = LaurentPoly::zero();
    for t in op.terms() {
        for (e, c) in p.terms() {
            let w = falling_factorial(&int(e), t.d_order);
            if !w.is_zero() {
                out.add_term(e - t.d_order as i64 + t.x_power as i64, &t.coeff * c * w);
            }
        }
    }
    out
}

/// `sum_{m <= max_m} (-B)^m/m! e^{-xt}`, `B` acting on `x` only.
pub fn gf_laguerre_partial(order: usize, max_m: u32) -> TSeries {
    let b = laguerre_b();
    let base = exp_neg_xt(order);
    TSeries::from_fn(order, |n| {
        let mut term = base.coeff(n).clone();
        let mut acc = term.clone();
        for m in 1..=max_m {
            term = apply_poly(&b, &term).scale(&(int(-1) / int(m as i64)));
            if term.is_zero() {
                break;
            }
            acc = &acc + &term;
        }
        acc
    })
}

/// `e^{-B} e^{-xt}`, kept through `t^n_t` and `x^n_x`.
pub fn gf_laguerre_operator(n_t: usize, n_x: u32) -> TSeries {
    let full = gf_laguerre_partial(n_t, n_t as u32 + 1);
    TSeries::from_fn(n_t, |n| full.coeff(n).truncate_above(n_x as i64))
}

/// `q_m` with `B^m e^{-xt} = e^{-xt} q_m(x, t)`, through `t^order`.
///
/// `B(q e^{-xt}) = e^{-xt} [x (q'' - 2t q' + t^2 q) + q' - t q]`.
pub fn laguerre_gf_correction(m: u32, order: usize) -> TSeries {
    let mut q = TSeries::one(order);
    for _ in 0..m {
        q = TSeries::from_fn(order, |k| {
            let c = |j: usize| if j <= k { q.coeff(j).clone() } else { LaurentPoly::zero() };
            let x = LaurentPoly::x();
            let mut out = &x * &c(k).derivative().derivative();
            out = &out + &c(k).derivative();
            if k >= 1 {
                let prev = c(k - 1);
                out = &out - &(&x * &prev.derivative()).scale(&int(2));
                out = &out - &prev;
            }
            if k >= 2 {
                out = &out + &(&x * &c(k - 2));
            }
            out
        });
    }
    q
}

/// `sum U_n t^n` against `1/(1 - 2xt + t^2)`.
pub fn gf_chebyshev(order: usize) -> Result<GfCheck> {
    let lhs = TSeries::from_fn(order, |n| families::chebyshev_u(n as u32));
    let denom = t_series(
        order,
        vec![LaurentPoly::one(), LaurentPoly::monomial(int(-2), 1), LaurentPoly::one()],
    );
    Ok(GfCheck { lhs, rhs: denom.inv()? })
}

/// `lhs` and `rhs` agree on every `t^k x^j` with `k <= n_t`, `j <= n_x`.
pub fn agree_in_window(lhs: &TSeries, rhs: &TSeries, n_t: usize, n_x: u32) -> bool {
    (0..=n_t).all(|k| lhs.coeff(k).truncate_above(n_x as i64) == rhs.coeff(k).truncate_above(n_x as i64))
}

/// Coefficients as exact rationals for display purposes.
pub fn coefficient_at(s: &TSeries, t_power: usize, x_power: i64) -> Rational {
    s.coeff(t_power).coeff(x_power)
}
