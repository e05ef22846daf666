//! Ladder operators and the algebras they close.
//!
//! Monomial-level raising and lowering operators are carried to the solution
//! space by conjugating with the exponential form `exp(-A)`. Each relation is
//! checked exactly: `op(n) member_n == c(n) member_{n+shift}`.

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::families::{self, Family, FamilySpec, Variant};
use crate::laurent::LaurentPoly;
use crate::number::{self, int, Rational};
use crate::op::{conjugate_diffop_by_exp, DiffOp, EulerPoly, EulerRational, GradedOp};
use crate::solver::{apply_factored, exp_apply, exp_apply_series};
use crate::xseries::{Direction, XSeries};

/// A sum of factor chains `sum_i c_i[0] * c_i[1] * ...`, each chain applied rightmost first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LadderOp {
    pub chains: Vec<Vec<GradedOp>>,
}

impl LadderOp {
    pub fn single(op: GradedOp) -> Self {
        Self { chains: vec![vec![op]] }
    }

    pub fn chain(factors: Vec<GradedOp>) -> Self {
        Self { chains: vec![factors] }
    }

    pub fn from_diffop(op: &DiffOp) -> Self {
        Self::single(GradedOp::from(op))
    }

    pub fn apply(&self, s: &XSeries, order: u32) -> Result<XSeries> {
        let mut out: Option<XSeries> = None;
        for c in &self.chains {
            let image = apply_factored(c, s, order)?;
            out = Some(match out {
                None => image,
                Some(acc) => acc.add(&image)?,
            });
        }
        Ok(out.unwrap_or_else(|| XSeries::zero(s.base_exponent().clone(), s.direction())))
    }

    /// The chains multiplied out (denominators may cancel).
    pub fn collapsed(&self) -> GradedOp {
        self.chains
            .iter()
            .map(|c| c.iter().fold(GradedOp::identity(), |acc, f| acc.compose(f)))
            .fold(GradedOp::zero(), |acc, g| &acc + &g)
    }
}

type OpFn = Box<dyn Fn(u32) -> LadderOp + Send + Sync>;
type MemberFn = Box<dyn Fn(u32) -> Result<Option<XSeries>> + Send + Sync>;

/// `op(n) member(n) == expected(n) * member(n + index_shift)`.
pub struct LadderRelation {
    pub name: String,
    pub family: FamilySpec,
    pub index_shift: i64,
    /// Parameters that change between source and target, with their increments.
    pub parameter_shift: Vec<(String, Rational)>,
    /// Coefficient as a rational function of `n` (written in the variable `D`).
    pub expected: EulerRational,
    operator: OpFn,
    member: MemberFn,
    /// Target family when parameters shift; otherwise `member(n + index_shift)`.
    shifted: Option<MemberFn>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LadderRow {
    pub n: u32,
    pub expected: Rational,
    /// `None` when the image is not proportional to the target member.
    pub measured: Option<Rational>,
    pub ok: bool,
}

impl LadderRow {
    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "expected": number::to_string(&self.expected),
            "measured": self.measured.as_ref().map(number::to_string),
            "ok": self.ok,
        })
    }
}

pub fn rows_to_json(rows: &[LadderRow]) -> Value {
    Value::Array(rows.iter().map(LadderRow::to_json).collect())
}

impl LadderRelation {
    pub fn operator(&self, n: u32) -> LadderOp {
        (self.operator)(n)
    }

    /// The `n`-th member, or `None` below the bottom of the family.
    pub fn member(&self, n: i64) -> Result<Option<XSeries>> {
        if n < 0 {
            return Ok(None);
        }
        (self.member)(n as u32)
    }

    /// The member on the other side of the relation.
    pub fn target(&self, n: u32) -> Result<Option<XSeries>> {
        let m = n as i64 + self.index_shift;
        match &self.shifted {
            Some(_) if m < 0 => Ok(None),
            Some(f) => f(m as u32),
            None => self.member(m),
        }
    }

    pub fn expected_at(&self, n: u32) -> Option<Rational> {
        self.expected.eval(&int(n as i64))
    }

    pub fn check(&self, n: u32) -> Result<LadderRow> {
        let source = self.member(n as i64)?.ok_or_else(|| Error::InvalidArgument(format!("no member {n}")))?;
        let order = window_for(&source);
        let image = self.operator(n).apply(&source, order)?;
        let (expected, measured) = match self.target(n)? {
            Some(t) => (
                self.expected_at(n).ok_or_else(|| Error::Resonance { exponent: int(n as i64) })?,
                image.ratio_to(&t),
            ),
            None => (Rational::zero(), image.is_zero().then(Rational::zero)),
        };
        let ok = measured.as_ref() == Some(&expected);
        Ok(LadderRow { n, expected, measured, ok })
    }

    pub fn verify<I: IntoIterator<Item = u32>>(&self, range: I) -> Result<Vec<LadderRow>> {
        range.into_iter().map(|n| self.check(n)).collect()
    }
}

/// Room for the image of a polynomial; the source window for series.
fn window_for(s: &XSeries) -> u32 {
    match s.truncation() {
        crate::xseries::Truncation::Order(n) => n,
        crate::xseries::Truncation::Terminated => s.offsets().map(|(k, _)| k).max().unwrap_or(0) + 4,
    }
}

fn poly_member(p: LaurentPoly) -> Option<XSeries> {
    Some(XSeries::from_laurent(&p))
}

fn polynomial(cs: &[Rational]) -> EulerRational {
    EulerRational::from_poly(EulerPoly::new(cs.to_vec()))
}

fn laguerre_spec(alpha: &Rational) -> FamilySpec {
    FamilySpec::new(Family::Laguerre, Variant::DerivativeSeeded).with("alpha", alpha.clone())
}

/// `J_- = x d^2 + gamma d`, `J_+ = x`, `J_0 = D + gamma/2`.
pub fn su11_generators(gamma: &Rational) -> (DiffOp, DiffOp, DiffOp) {
    let jm = &DiffOp::term(int(1), 1, 2) + &DiffOp::term(gamma.clone(), 0, 1);
    let j0 = &DiffOp::euler() + &DiffOp::scalar(gamma / int(2));
    (DiffOp::x(), jm, j0)
}

fn chg_member(gamma: Rational) -> MemberFn {
    Box::new(move |n| {
        let y = families::confluent_1f1(&int(-(n as i64)), &gamma, n + 2, 0)?;
        Ok(Some(y))
    })
}

/// `(x d^2 + gamma d) Phi(-n; gamma; x) = -n Phi(-n+1; gamma; x)`.
pub fn ch_lowering(gamma: &Rational) -> LadderRelation {
    let (_, jm, _) = su11_generators(gamma);
    LadderRelation {
        name: "ch_lowering".into(),
        family: FamilySpec::new(Family::Chg, Variant::EulerSeeded).with("gamma", gamma.clone()),
        index_shift: -1,
        parameter_shift: vec![],
        expected: polynomial(&[int(0), int(-1)]),
        operator: Box::new(move |_| LadderOp::from_diffop(&jm)),
        member: chg_member(gamma.clone()),
        shifted: None,
    }
}

/// `exp(-J_-) x exp(J_-)`, the image of the monomial raising operator `x`.
pub fn ch_raising_operator(gamma: &Rational) -> DiffOp {
    let (jp, jm, _) = su11_generators(gamma);
    conjugate_diffop_by_exp(&jm, &jp, 16).expect("adjoint series of x under x d^2 + gamma d terminates")
}

/// `[x - 2x d - gamma + x d^2 + gamma d] Phi(-n) = -(n + gamma) Phi(-n-1)`.
pub fn ch_raising(gamma: &Rational) -> LadderRelation {
    let op = ch_raising_operator(gamma);
    let g = gamma.clone();
    LadderRelation {
        name: "ch_raising".into(),
        family: FamilySpec::new(Family::Chg, Variant::EulerSeeded).with("gamma", gamma.clone()),
        index_shift: 1,
        parameter_shift: vec![],
        expected: polynomial(&[-g, int(-1)]),
        operator: Box::new(move |_| LadderOp::from_diffop(&op)),
        member: chg_member(gamma.clone()),
        shifted: None,
    }
}

/// Operator-level identity `lhs == rhs`, with both sides kept as evidence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Identity {
    pub name: String,
    pub lhs: DiffOp,
    pub rhs: DiffOp,
}

impl Identity {
    fn new(name: &str, lhs: DiffOp, rhs: DiffOp) -> Self {
        Self { name: name.into(), lhs, rhs }
    }

    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// `[J_+, J_-] = -2 J_0`, `[J_0, J_+] = J_+`, `[J_0, J_-] = -J_-`, `[J_0, J_0] = 0`.
pub fn su11_check(gamma: &Rational) -> Vec<Identity> {
    let (jp, jm, j0) = su11_generators(gamma);
    vec![
        Identity::new("[J+, J-] = -2 J0", jp.commutator(&jm), j0.scale(&int(-2))),
        Identity::new("[J0, J+] = J+", j0.commutator(&jp), jp.clone()),
        Identity::new("[J0, J-] = -J-", j0.commutator(&jm), -&jm),
        Identity::new("[J0, J0] = 0", j0.commutator(&j0), DiffOp::zero()),
    ]
}

/// `J+bar = x + x^2 d`.
pub fn j_plus_bar() -> DiffOp {
    &DiffOp::x() + &DiffOp::term(int(1), 2, 1)
}

/// `[J+bar, J_-] = -2(gamma + 1/2) D - 3 D^2 - gamma` and `[D, J+-] = +-J+-`.
pub fn quadratic_check(gamma: &Rational) -> Vec<Identity> {
    let (_, jm, _) = su11_generators(gamma);
    let jb = j_plus_bar();
    let d = DiffOp::euler();
    let rhs = DiffOp::from_euler(&EulerPoly::new(vec![
        -gamma.clone(),
        int(-2) * (gamma + number::frac(1, 2)),
        int(-3),
    ]));
    vec![
        Identity::new("[J+bar, J-] = -2(g+1/2)D - 3D^2 - g", jb.commutator(&jm), rhs),
        Identity::new("[D, J+bar] = J+bar", d.commutator(&jb), jb.clone()),
        Identity::new("[D, J-] = -J-", d.commutator(&jm), -&jm),
    ]
}

/// `[d, x] = 1` and `[a, a^dagger] = 1` with `a = d/2`, `a^dagger = 2x - d`.
pub fn heisenberg_check() -> Vec<Identity> {
    let (a, adag) = hermite_pair();
    vec![
        Identity::new("[d, x] = 1", DiffOp::d().commutator(&DiffOp::x()), DiffOp::identity()),
        Identity::new("[a, a+] = 1", a.commutator(&adag), DiffOp::identity()),
    ]
}

/// `(a, a^dagger) = (d/2, 2x - d)`; `a^dagger` is `2 exp(-d^2/4) x exp(d^2/4)`.
pub fn hermite_pair() -> (DiffOp, DiffOp) {
    let a = DiffOp::term(number::frac(1, 2), 0, 1);
    let b = DiffOp::term(number::frac(1, 4), 0, 2);
    let adag = conjugate_diffop_by_exp(&b, &DiffOp::x(), 8).expect("terminates").scale(&int(2));
    (a, adag)
}

fn hermite_member() -> MemberFn {
    Box::new(|n| Ok(poly_member(families::hermite(n))))
}

/// `(2x - d) H_n = H_{n+1}`.
pub fn hermite_raising() -> LadderRelation {
    let (_, adag) = hermite_pair();
    LadderRelation {
        name: "hermite_raising".into(),
        family: FamilySpec::new(Family::Hermite, Variant::DerivativeSeeded),
        index_shift: 1,
        parameter_shift: vec![],
        expected: EulerRational::one(),
        operator: Box::new(move |_| LadderOp::from_diffop(&adag)),
        member: hermite_member(),
        shifted: None,
    }
}

/// `d H_n = 2n H_{n-1}`.
pub fn hermite_lowering() -> LadderRelation {
    LadderRelation {
        name: "hermite_lowering".into(),
        family: FamilySpec::new(Family::Hermite, Variant::DerivativeSeeded),
        index_shift: -1,
        parameter_shift: vec![],
        expected: polynomial(&[int(0), int(2)]),
        operator: Box::new(|_| LadderOp::from_diffop(&DiffOp::d())),
        member: hermite_member(),
        shifted: None,
    }
}

fn hg_member(alpha: Rational, gamma: Rational) -> MemberFn {
    Box::new(move |n| Ok(Some(families::hypergeometric_2f1(&alpha, &int(-(n as i64)), &gamma, n + 2, 0)?)))
}

fn hg_spec(alpha: &Rational, gamma: &Rational) -> FamilySpec {
    FamilySpec::new(Family::Hg2F1, Variant::EulerSeeded)
        .with("alpha", alpha.clone())
        .with("gamma", gamma.clone())
}

/// `(1/(D+alpha)) (x d^2 + gamma d) F(alpha, -n; gamma; x) = -n F(alpha, -n+1; gamma; x)`.
pub fn hg_lowering(alpha: &Rational, gamma: &Rational) -> Result<LadderRelation> {
    let factors = families::hg_lowering_factors(alpha, gamma)?;
    Ok(LadderRelation {
        name: "hg_lowering".into(),
        family: hg_spec(alpha, gamma),
        index_shift: -1,
        parameter_shift: vec![],
        expected: polynomial(&[int(0), int(-1)]),
        operator: Box::new(move |_| LadderOp::chain(factors.to_vec())),
        member: hg_member(alpha.clone(), gamma.clone()),
        shifted: None,
    })
}

/// Conjugate of `J~_- = T~(D) J_-` with `[J~_-, J~_+] = 1`, as `J~_+ = x T(D)`.
///
/// `T = T~^{-1} (J_0 + delta) / (C - g(J_0))`, `g(J_0) = -J_0 (J_0 + 1)`, with the
/// Casimir `C = J_- J_+ + g(J_0)` and `delta` fixed on the lowest monomial.
pub fn canonical_conjugate(t_tilde: &EulerRational, gamma: &Rational) -> Result<GradedOp> {
    let (jp, jm, j0) = su11_generators(gamma);
    let j0_poly = GradedOp::from(&j0).diagonal_part().num().clone();
    let g = -&(&j0_poly * &(&j0_poly + &EulerPoly::one()));
    let jmjp = GradedOp::from(&jm.compose(&jp)).diagonal_part();
    let casimir = &jmjp + &EulerRational::from_poly(g.clone());
    if !(casimir.is_polynomial() && casimir.num().degree().unwrap_or(0) == 0) {
        return Err(Error::InconsistentConjugate);
    }
    let c_minus_g = &casimir - &EulerRational::from_poly(g);
    let base = &t_tilde.recip()? * &c_minus_g.recip()?;
    let lower = LadderOp::chain(vec![GradedOp::diagonal(t_tilde.clone()), GradedOp::from(&jm)]);
    let build = |delta: &Rational| -> GradedOp {
        let shift = EulerRational::from_poly(&j0_poly + &EulerPoly::constant(delta.clone()));
        GradedOp::source(&base * &shift, 1)
    };
    let on_one = |delta: &Rational| -> Result<Rational> {
        let up = LadderOp::single(build(delta));
        let one = XSeries::monomial(int(0), Direction::Ascending);
        let a = lower.apply(&up.apply(&one, 4)?, 4)?;
        let b = up.apply(&lower.apply(&one, 4)?, 4)?;
        let c = a.add(&b.scale(&int(-1)))?;
        Ok(c.coefficient(&int(0)).unwrap_or_else(Rational::zero))
    };
    let v0 = on_one(&int(0))?;
    let v1 = on_one(&int(1))?;
    if v0 == v1 {
        return if v0.is_one() { Ok(build(&int(0))) } else { Err(Error::InconsistentConjugate) };
    }
    let delta = (Rational::one() - &v0) / (v1 - &v0);
    Ok(build(&delta))
}

/// `J~_+ = ((D + alpha - 1)/(D + gamma - 1)) x`.
pub fn hg_canonical_raising(alpha: &Rational, gamma: &Rational) -> Result<GradedOp> {
    canonical_conjugate(&EulerRational::inverse_of(EulerPoly::linear(alpha.clone()))?, gamma)
}

/// `[J~_-, J~_+] x^k` for the hypergeometric pair.
pub fn hg_canonical_commutator_on(alpha: &Rational, gamma: &Rational, k: u32) -> Result<XSeries> {
    let lower = LadderOp::chain(families::hg_lowering_factors(alpha, gamma)?.to_vec());
    let upper = LadderOp::single(hg_canonical_raising(alpha, gamma)?);
    let m = XSeries::monomial(int(k as i64), Direction::Ascending);
    let a = lower.apply(&upper.apply(&m, 4)?, 4)?;
    let b = upper.apply(&lower.apply(&m, 4)?, 4)?;
    a.add(&b.scale(&int(-1)))
}

/// `[1 - ((D+alpha-1)/(D+gamma-1)) x] F(alpha, -n) = F(alpha, -n-1)`.
pub fn hg_raising(alpha: &Rational, gamma: &Rational) -> Result<LadderRelation> {
    let up = hg_canonical_raising(alpha, gamma)?;
    let op = LadderOp { chains: vec![vec![GradedOp::identity()], vec![up.scale(&int(-1))]] };
    Ok(LadderRelation {
        name: "hg_raising".into(),
        family: hg_spec(alpha, gamma),
        index_shift: 1,
        parameter_shift: vec![],
        expected: EulerRational::one(),
        operator: Box::new(move |_| op.clone()),
        member: hg_member(alpha.clone(), gamma.clone()),
        shifted: None,
    })
}

/// `[1 - ((D+alpha-1)/((D+gamma-1) D)) (x + x^2 d)] F(alpha, -n) = F(alpha, -n-1)`.
pub fn hg_raising_bar(alpha: &Rational, gamma: &Rational) -> Result<LadderRelation> {
    let r = EulerRational::new(
        EulerPoly::linear(alpha - int(1)).scale(&int(-1)),
        &EulerPoly::linear(gamma - int(1)) * &EulerPoly::d(),
    )?;
    let op = LadderOp {
        chains: vec![vec![GradedOp::identity()], vec![GradedOp::diagonal(r), GradedOp::from(&j_plus_bar())]],
    };
    Ok(LadderRelation {
        name: "hg_raising_bar".into(),
        family: hg_spec(alpha, gamma),
        index_shift: 1,
        parameter_shift: vec![],
        expected: EulerRational::one(),
        operator: Box::new(move |_| op.clone()),
        member: hg_member(alpha.clone(), gamma.clone()),
        shifted: None,
    })
}

fn laguerre_member(alpha: Rational) -> MemberFn {
    Box::new(move |n| Ok(poly_member(families::laguerre(n, &alpha)?)))
}

/// `[x d + (alpha+1) + n - x] L_n = (n+1) L_{n+1}`.
pub fn laguerre_raising(alpha: &Rational) -> LadderRelation {
    let a = alpha.clone();
    LadderRelation {
        name: "laguerre_raising".into(),
        family: laguerre_spec(alpha),
        index_shift: 1,
        parameter_shift: vec![],
        expected: polynomial(&[int(1), int(1)]),
        operator: Box::new(move |n| LadderOp::from_diffop(&a_dagger(&(&a + int(n as i64 + 1))))),
        member: laguerre_member(alpha.clone()),
        shifted: None,
    }
}

/// `[x d - n] L_n = -(n + alpha) L_{n-1}`.
pub fn laguerre_lowering(alpha: &Rational) -> LadderRelation {
    LadderRelation {
        name: "laguerre_lowering".into(),
        family: laguerre_spec(alpha),
        index_shift: -1,
        parameter_shift: vec![],
        expected: polynomial(&[-alpha.clone(), int(-1)]),
        operator: Box::new(|n| LadderOp::from_diffop(&(&DiffOp::euler() - &DiffOp::scalar(int(n as i64))))),
        member: laguerre_member(alpha.clone()),
        shifted: None,
    }
}

/// `A^dagger(c) = x d + c - x`.
pub fn a_dagger(c: &Rational) -> DiffOp {
    &(&DiffOp::euler() + &DiffOp::scalar(c.clone())) - &DiffOp::x()
}

/// `A^dagger(alpha+1) A^dagger(alpha+2) ... A^dagger(alpha+n) 1`.
pub fn laguerre_product(n: u32, alpha: &Rational) -> LaurentPoly {
    let mut y = XSeries::monomial(int(0), Direction::Ascending);
    for k in (1..=n).rev() {
        y = a_dagger(&(alpha + int(k as i64))).apply(&y, n + 1);
    }
    y.to_laurent().expect("polynomial")
}

/// `d L^alpha_n = -L^{alpha+1}_{n-1}`.
pub fn parameter_shift_laguerre(alpha: &Rational) -> LadderRelation {
    let (a0, a1) = (alpha.clone(), alpha + int(1));
    LadderRelation {
        name: "laguerre_alpha_shift".into(),
        family: laguerre_spec(alpha),
        index_shift: -1,
        parameter_shift: vec![("alpha".into(), int(1))],
        expected: EulerRational::constant(int(-1)),
        operator: Box::new(|_| LadderOp::from_diffop(&DiffOp::d())),
        member: laguerre_member(a0),
        shifted: Some(laguerre_member(a1)),
    }
}

/// `d F(alpha+k, beta+k; gamma+k; x) = ((alpha+k)(beta+k)/(gamma+k)) F(alpha+k+1, beta+k+1; gamma+k+1; x)`,
/// checked through `x^window`.
pub fn parameter_shift_hg(alpha: &Rational, beta: &Rational, gamma: &Rational, window: u32) -> Result<LadderRelation> {
    let expected = EulerRational::new(
        &EulerPoly::linear(alpha.clone()) * &EulerPoly::linear(beta.clone()),
        EulerPoly::linear(gamma.clone()),
    )?;
    let (a, b, g) = (alpha.clone(), beta.clone(), gamma.clone());
    let member = move |k: u32| -> Result<Option<XSeries>> {
        let s = int(k as i64);
        Ok(Some(families::hypergeometric_2f1(&(&a + &s), &(&b + &s), &(&g + &s), window + 1, 0)?))
    };
    Ok(LadderRelation {
        name: "hg_parameter_shift".into(),
        family: FamilySpec::new(Family::Hg2F1, Variant::EulerSeeded)
            .with("alpha", alpha.clone())
            .with("beta", beta.clone())
            .with("gamma", gamma.clone()),
        index_shift: 0,
        parameter_shift: vec![("alpha".into(), int(1)), ("beta".into(), int(1)), ("gamma".into(), int(1))],
        expected,
        operator: Box::new(|_| LadderOp::from_diffop(&DiffOp::d())),
        member: Box::new(member.clone()),
        shifted: Some(Box::new(move |k| member(k + 1))),
    })
}

/// `exp(-A) B exp(A) x^n` by nested exponentials, against the adjoint series
/// `sum_j (-1)^j ad_A^j(B) / j!` on `x^n`. `None` if the adjoint series does not
/// terminate within `max_terms`.
pub fn similarity_check(a: &DiffOp, b: &DiffOp, n: u32, max_terms: u32) -> Result<Option<bool>> {
    let Some(conj) = conjugate_diffop_by_exp(a, b, max_terms) else {
        return Ok(None);
    };
    let ga = GradedOp::from(a);
    let order = n + 2 * max_terms + 4;
    let up = exp_apply(&ga, &int(n as i64), order, 1)?;
    let mid = b.apply(&up, order);
    let lhs = exp_apply_series(std::slice::from_ref(&ga), &mid, order, -1)?;
    let rhs = conj.apply(&XSeries::monomial(int(n as i64), Direction::Descending), order);
    Ok(Some(lhs.is_terminated() && rhs.is_terminated() && lhs.agrees_with(&rhs)))
}

/// Relation names accepted by [`relation_by_name`].
pub const RELATIONS: &[&str] = &[
    "ch_lowering",
    "ch_raising",
    "hg_lowering",
    "hg_raising",
    "hg_raising_bar",
    "hermite_raising",
    "hermite_lowering",
    "laguerre_raising",
    "laguerre_lowering",
    "laguerre_alpha_shift",
    "hg_parameter_shift",
];

/// Builds a relation from its name and `alpha`, `beta`, `gamma` bindings.
pub fn relation_by_name(name: &str, params: &std::collections::BTreeMap<String, Rational>) -> Result<LadderRelation> {
    let get = |k: &str| {
        params
            .get(k)
            .cloned()
            .ok_or_else(|| Error::InvalidArgument(format!("{name} needs parameter {k:?}")))
    };
    Ok(match name {
        "ch_lowering" => ch_lowering(&get("gamma")?),
        "ch_raising" => ch_raising(&get("gamma")?),
        "hg_lowering" => hg_lowering(&get("alpha")?, &get("gamma")?)?,
        "hg_raising" => hg_raising(&get("alpha")?, &get("gamma")?)?,
        "hg_raising_bar" => hg_raising_bar(&get("alpha")?, &get("gamma")?)?,
        "hermite_raising" => hermite_raising(),
        "hermite_lowering" => hermite_lowering(),
        "laguerre_raising" => laguerre_raising(&get("alpha")?),
        "laguerre_lowering" => laguerre_lowering(&get("alpha")?),
        "laguerre_alpha_shift" => parameter_shift_laguerre(&get("alpha")?),
        "hg_parameter_shift" => parameter_shift_hg(&get("alpha")?, &get("beta")?, &get("gamma")?, 10)?,
        _ => {
            return Err(Error::InvalidArgument(format!(
                "unknown relation {name:?}; expected one of {}",
                RELATIONS.join(", ")
            )))
        }
    })
}
