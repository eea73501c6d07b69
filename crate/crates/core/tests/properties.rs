use num_bigint::BigInt;
use proptest::prelude::*;

use twistknot::algebra::expr::Expr;
use twistknot::algebra::{rat, HalfLaurent, MultiPoly, Rational, VarNames};
use twistknot::casework::CaseContext;
use twistknot::family::{SignCase, TwistVector};
use twistknot::obstruction::{h_coeffs, h_coeffs_from_derivs};
use twistknot::oracle::{crosscheck, expand_twists, DiagramTemplate};

/// Laurent polynomial with small coefficients; `integral` keeps the
/// doubled exponents even.
fn laurent(integral: bool) -> impl Strategy<Value = HalfLaurent> {
    prop::collection::vec((-12i64..12, -5i64..6), 0..6).prop_map(move |terms| {
        HalfLaurent::from_terms(
            terms
                .into_iter()
                .map(|(e, c)| (if integral { 2 * e } else { e }, BigInt::from(c))),
        )
    })
}

fn multipoly() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((-4i64..5, 0u32..3, 0u32..3, 0u32..2), 0..5).prop_map(|terms| {
        terms.into_iter().fold(MultiPoly::zero(), |acc, (c, i, j, k)| {
            let m = MultiPoly::var(0)
                .pow(i)
                .mul(&MultiPoly::var(1).pow(j))
                .mul(&MultiPoly::var(2).pow(k));
            acc.add(&m.scale(&rat(c)))
        })
    })
}

fn point() -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(-6i64..7, 3).prop_map(|v| v.into_iter().map(rat).collect())
}

/// A built-in family, one of its sign cases and a twist vector.
fn instance() -> impl Strategy<Value = (&'static str, SignCase, TwistVector)> {
    prop_oneof![Just(("7_6", 5usize)), Just(("10_58", 5)), Just(("8_12", 4))].prop_flat_map(|(family, k)| {
        (
            Just(family),
            (0usize..1 << k).prop_map(move |i| SignCase::all(k)[i].clone()),
            prop::collection::vec(1u32..6, k).prop_map(|n| TwistVector::new(n).unwrap()),
        )
    })
}

proptest! {
    #[test]
    fn laurent_ring_axioms(a in laurent(false), b in laurent(false), c in laurent(false)) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.add(&b).sub(&b), a.clone());
        prop_assert_eq!(a.mul(&HalfLaurent::one()), a);
    }

    #[test]
    fn laurent_text_roundtrip(a in laurent(false)) {
        prop_assert_eq!(HalfLaurent::parse(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn mirror_is_an_involutive_ring_map(a in laurent(false), b in laurent(false)) {
        prop_assert_eq!(a.mirror().mirror(), a.clone());
        prop_assert_eq!(a.mul(&b).mirror(), a.mirror().mul(&b.mirror()));
    }

    #[test]
    fn derivatives_are_linear_and_leibniz(a in laurent(false), b in laurent(false)) {
        let (da, db) = (a.derivs_at_one(2), b.derivs_at_one(2));
        let sum = a.add(&b).derivs_at_one(2);
        for k in 0..=2 {
            prop_assert_eq!(&sum[k], &(&da[k] + &db[k]));
        }
        let prod = a.mul(&b).derivs_at_one(2);
        prop_assert_eq!(&prod[1], &(&da[1] * &db[0] + &da[0] * &db[1]));
        prop_assert_eq!(&prod[2], &(&da[2] * &db[0] + rat(2) * &da[1] * &db[1] + &da[0] * &db[2]));
    }

    #[test]
    fn h_expansion_routes_agree(a in laurent(false)) {
        prop_assert_eq!(h_coeffs(&a, 4), h_coeffs_from_derivs(&a.derivs_at_one(4)));
    }

    #[test]
    fn root5_evaluation_is_multiplicative(a in laurent(true), b in laurent(true)) {
        let lhs = a.mul(&b).eval_root5().unwrap();
        prop_assert_eq!(lhs, a.eval_root5().unwrap().mul(&b.eval_root5().unwrap()));
    }

    #[test]
    fn root5_ignores_fifth_powers(a in laurent(true), k in -4i64..5) {
        prop_assert_eq!(a.shift(10 * k).eval_root5().unwrap(), a.eval_root5().unwrap());
    }

    #[test]
    fn multipoly_ring_and_evaluation(p in multipoly(), q in multipoly(), x in point()) {
        prop_assert_eq!(p.mul(&q), q.mul(&p));
        prop_assert_eq!(p.add(&q).sub(&q), p.clone());
        let pq = p.mul(&q).eval(&x).unwrap();
        prop_assert_eq!(pq, p.eval(&x).unwrap() * q.eval(&x).unwrap());
    }

    #[test]
    fn multipoly_text_roundtrip(p in multipoly()) {
        let names = VarNames::letters(3);
        let text = p.to_string_with(&names);
        prop_assert_eq!(Expr::parse(&text).unwrap().to_poly(&names).unwrap(), p);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn engine_invariants((family, case, n) in instance()) {
        let ctx = CaseContext::builtin(family, &case).unwrap();
        let inst = ctx.evaluate(&n, false).unwrap();
        let props = ctx.properties(&inst).unwrap();
        for (i, p) in props.iter().enumerate() {
            prop_assert!(p.unwrap_or(true), "{} {} {}: property {}", family, case, n, i);
        }

        // symbolic derivative polynomials evaluate to the numeric ones
        let point: Vec<Rational> = n.counts().iter().map(|&t| rat(t as i64)).collect();
        for (k, poly) in ctx.engine.symbolic_derivs().iter().enumerate() {
            prop_assert_eq!(&poly.eval(&point).unwrap(), &inst.derivs[k]);
        }

        // the mirrored case gives the mirrored polynomial
        let mirror = CaseContext::builtin(family, &case.mirror()).unwrap();
        prop_assert_eq!(mirror.engine.jones(&n).unwrap(), inst.jones.mirror());
    }

    #[test]
    fn bracket_oracle_agrees_with_engine(
        (family, case, _) in instance(),
        bumps in prop::collection::vec((0usize..5, 1u32..3), 0..3),
    ) {
        let spec = twistknot::family::FamilySpec::builtin(family, &case.to_string()).unwrap();
        let mut n = vec![1; spec.band_count()];
        for (i, extra) in bumps {
            let k = n.len();
            n[i % k] += extra;
        }
        let n = TwistVector::new(n).unwrap();
        let tpl = DiagramTemplate::builtin(family).unwrap();
        prop_assume!(expand_twists(tpl, &spec, &n).unwrap().len() <= 16);
        prop_assert!(crosscheck(&spec, tpl, &n, 16).unwrap(), "{} {} {}", family, case, n);
    }
}
