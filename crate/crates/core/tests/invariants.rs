use eulerop::families::oracle::{laguerre_recurrence, pochhammer_series};
use eulerop::families::{self, Family, FamilySpec, Variant};
use eulerop::number::{frac, int, Rational};
use eulerop::solver::{self, SeparationMode};
use eulerop::{DiffOp, Direction, LaurentPoly, TSeries, XSeries};
use proptest::prelude::*;

fn rat() -> impl Strategy<Value = Rational> {
    (-20i64..20, 1i64..6).prop_map(|(p, q)| frac(p, q))
}

fn diffop() -> impl Strategy<Value = DiffOp> {
    prop::collection::vec((rat(), 0u32..4, 0u32..4), 0..5).prop_map(|terms| {
        let mut op = DiffOp::zero();
        for (c, x, d) in terms {
            op.add_term(x, d, c);
        }
        op
    })
}

fn poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec(rat(), 0..6).prop_map(|cs| LaurentPoly::from_dense(&cs))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn composition_is_associative(a in diffop(), b in diffop(), c in diffop()) {
        prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
    }

    #[test]
    fn commutator_jacobi(a in diffop(), b in diffop(), c in diffop()) {
        let j = &(&a.commutator(&b.commutator(&c)) + &b.commutator(&c.commutator(&a))) + &c.commutator(&a.commutator(&b));
        prop_assert!(j.is_zero());
    }

    #[test]
    fn composition_acts_in_sequence(a in diffop(), b in diffop(), p in poly()) {
        let ab = eulerop::identities::apply_poly(&a.compose(&b), &p);
        let seq = eulerop::identities::apply_poly(&a, &eulerop::identities::apply_poly(&b, &p));
        prop_assert_eq!(ab, seq);
    }

    #[test]
    fn json_round_trips(op in diffop(), p in poly()) {
        prop_assert_eq!(DiffOp::from_json(&op.to_json()).unwrap(), op);
        prop_assert_eq!(LaurentPoly::from_json(&p.to_json()).unwrap(), p.clone());
        let s = XSeries::from_laurent(&p);
        prop_assert_eq!(XSeries::from_json(&s.to_json()).unwrap(), s);
        let t = TSeries::from_fn(3, |k| p.shift(k as i64));
        prop_assert_eq!(TSeries::from_json(&t.to_json()).unwrap(), t);
    }

    #[test]
    fn chg_series_solves_its_operator(a in rat(), gp in 1i64..12, gq in 1i64..4) {
        let g = frac(gp, gq);
        let y = families::confluent_1f1(&a, &g, 12, 0).unwrap();
        let op = families::confluent_operator(&a, &g);
        let exact = y.as_terminated();
        let r = op.apply(&exact, u32::MAX);
        let low: Vec<_> = r.terms().filter(|(e, c)| e < &int(12) && !num_traits::Zero::is_zero(*c)).collect();
        prop_assert!(low.is_empty(), "{:?}", low);
        let oracle = pochhammer_series(&[a.clone()], &[g.clone()], 12);
        for (k, c) in oracle.iter().enumerate() {
            prop_assert_eq!(&y.coeff_at_offset(k as u32), c);
        }
    }
}

#[test]
fn family_specs_drive_the_solver() {
    let spec = FamilySpec::new(Family::Laguerre, Variant::DerivativeSeeded).with("n", int(4)).with("alpha", frac(1, 2));
    let eq = spec.equation(10).unwrap();
    assert_eq!(eq.roots, vec![int(4)]);
    let rep = solver::solve_series(&eq.separation.f, &eq.separation.p, &eq.roots[0], 10).unwrap();
    assert!(rep.terminated);
    assert_eq!(rep.solution.direction(), Direction::Descending);
    let l = laguerre_recurrence(4, &frac(1, 2));
    let ratio = rep.solution.ratio_to(&XSeries::from_laurent(&l));
    assert!(ratio.is_some());
}

#[test]
fn operator_route_agrees_with_family_route() {
    let op = families::hypergeometric_operator(&frac(1, 2), &frac(2, 3), &frac(7, 4));
    let reports = solver::solve_operator(&op, SeparationMode::Ascending, 10).unwrap();
    assert_eq!(reports.len(), 2);
    let direct = families::hypergeometric_2f1(&frac(1, 2), &frac(2, 3), &frac(7, 4), 10, 0).unwrap();
    assert!(reports.iter().any(|r| r.solution.agrees_with(&direct)));
}
