use proptest::prelude::*;

use knotoid::closure::height_of_diagram;
use knotoid::codec::{emit_ktd, parse_ktd};
use knotoid::generate::{random_diagrams, random_singular_diagrams};
use knotoid::invariants::{
    affine_index_polynomial, kauffman_bracket, normalized_bracket, skein_extend, vbar, Invariant, InvariantValue,
};
use knotoid::moves::{
    apply_move, enumerate_move_sites, is_descending, make_descending, nodify, resolve, switch_crossing, MoveSite,
};
use knotoid::{validate, CrossingKind, KnotoidDiagram, LaurentPoly1, Var};

fn diagram(max: usize) -> impl Strategy<Value = KnotoidDiagram> {
    any::<u64>().prop_map(move |seed| random_diagrams(seed, 1, max).remove(0))
}

fn poly() -> impl Strategy<Value = LaurentPoly1> {
    prop::collection::vec((-6i64..6, -5i64..5), 0..5).prop_map(|t| LaurentPoly1::from_terms(Var::A, t))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ktd_round_trip(d in diagram(8)) {
        let text = emit_ktd(&d);
        let back = parse_ktd(&text).unwrap();
        prop_assert_eq!(&back, &d);
        prop_assert_eq!(emit_ktd(&back), text);
    }

    #[test]
    fn mirror_inverts_the_variable(d in diagram(7)) {
        let f = normalized_bracket(&d).unwrap();
        prop_assert_eq!(normalized_bracket(&d.mirror()).unwrap(), f.invert_variable());
    }

    #[test]
    fn every_site_applies(d in diagram(6)) {
        let b = kauffman_bracket(&d).unwrap();
        for site in enumerate_move_sites(&d) {
            let e = apply_move(&d, &site).unwrap();
            prop_assert!(validate(&e).is_valid());
            prop_assert_eq!(e.crossing_count() as i64, d.crossing_count() as i64 + site.crossing_delta());
            if let MoveSite::R1Add { .. } = site {
                let eb = kauffman_bracket(&e).unwrap();
                let up = &b * &LaurentPoly1::monomial(Var::A, 3, -1);
                let down = &b * &LaurentPoly1::monomial(Var::A, -3, -1);
                prop_assert!(eb == up || eb == down);
            }
        }
    }

    #[test]
    fn descending_record_replays(d in diagram(8)) {
        let (desc, record) = make_descending(&d).unwrap();
        prop_assert!(is_descending(&desc));
        prop_assert_eq!(record.replay(&d).unwrap(), desc.clone());
        prop_assert!(vbar(&desc).unwrap().is_zero());
        prop_assert!(affine_index_polynomial(&d).unwrap().max_abs_degree() as usize <= height_of_diagram(&d));
    }

    #[test]
    fn skein_relation_holds(d in diagram(7), pick in any::<prop::sample::Index>()) {
        let c = pick.index(d.crossing_count());
        let s = nodify(&d, c).unwrap();
        let sign = d.crossing_sign(c).unwrap();
        let other = switch_crossing(&d, c).unwrap();
        let (pos, neg) = if sign > 0 { (&d, &other) } else { (&other, &d) };
        prop_assert_eq!(&resolve(&s, c, sign).unwrap(), &d);
        for inv in [Invariant::Bracket, Invariant::Affine, Invariant::Vbar] {
            let (InvariantValue::Poly1(v), InvariantValue::Poly1(p), InvariantValue::Poly1(n)) =
                (skein_extend(inv, &s).unwrap(), skein_extend(inv, pos).unwrap(), skein_extend(inv, neg).unwrap())
            else { unreachable!() };
            prop_assert_eq!(v, &p - &n);
        }
    }

    #[test]
    fn singular_samples_are_valid(seed in any::<u64>(), k in 1usize..4) {
        for d in random_singular_diagrams(seed, 3, k, 8) {
            prop_assert!(validate(&d).is_valid());
            prop_assert_eq!(d.count_kind(CrossingKind::Singular), k);
        }
    }

    #[test]
    fn laurent_ring_laws(p in poly(), q in poly(), r in poly()) {
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert!((&p - &p).is_zero());
        prop_assert_eq!(p.eval_at_one() * q.eval_at_one(), (&p * &q).eval_at_one());
    }
}
