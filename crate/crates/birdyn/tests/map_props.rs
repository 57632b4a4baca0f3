use birdyn::arith::{Field, FieldElem, NumberField, Rat};
use birdyn::maps::{
    compose_components, degree_sequence, degree_sequence_exact, make_family_a, make_family_b, map_compose, map_evaluate,
    map_inverse, BiMap, PPoint, DEFAULT_TERM_CAP,
};
use proptest::prelude::*;

fn nonzero() -> impl Strategy<Value = Rat> {
    (-20i64..=20, 1i64..=9).prop_filter_map("nonzero", |(n, d)| (n != 0).then(|| Rat::new(n, d)))
}

fn family_map() -> impl Strategy<Value = BiMap> {
    (any::<bool>(), nonzero(), nonzero(), nonzero()).prop_map(|(a, x, y, z)| {
        let k = NumberField::rationals();
        let e = |r: Rat| FieldElem::from_rat(&k, r);
        if a {
            make_family_a(&e(x), &e(y), &e(z)).unwrap()
        } else {
            make_family_b(&e(x), &e(y), &e(z)).unwrap()
        }
    })
}

fn point() -> impl Strategy<Value = [i64; 3]> {
    [1i64..=60, -60i64..=60, -60i64..=60]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn composition_agrees_with_evaluation(f in family_map(), g in family_map(), p in point()) {
        let h = map_compose(&f, &g).unwrap();
        let p = PPoint::from_ints(f.field(), p).unwrap();
        let gp = map_evaluate(&g, &p).point();
        let fgp = gp.and_then(|q| map_evaluate(&f, &q).point());
        if let (Some(want), Some(got)) = (fgp, map_evaluate(&h, &p).point()) {
            prop_assert_eq!(got, want);
        }
    }

    #[test]
    fn inverse_undoes_the_map(f in family_map(), p in point()) {
        let g = map_inverse(&f).unwrap();
        let p = PPoint::from_ints(f.field(), p).unwrap();
        if let Some(q) = map_evaluate(&f, &p).point() {
            if let Some(back) = map_evaluate(&g, &q).point() {
                prop_assert_eq!(back, p);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn pullback_degree_law(f in family_map(), g in family_map(), h in family_map()) {
        let gh = map_compose(&g, &h).unwrap();
        for inner in [&g, &gh] {
            let c = compose_components(f.components(), inner.components(), DEFAULT_TERM_CAP).unwrap();
            prop_assert_eq!(c.comps[0].degree() + c.cancelled.degree(), f.degree() * inner.degree());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn modular_degrees_match_exact_composition(f in family_map()) {
        let exact = degree_sequence_exact(&f, 5, DEFAULT_TERM_CAP).unwrap();
        prop_assert_eq!(degree_sequence(&f, 5).unwrap(), exact);
    }
}

#[test]
fn degree_law_on_the_generic_map() {
    let k = NumberField::rationals();
    let e = |s: i64| FieldElem::from_i64(&k, s);
    let f = make_family_a(&e(1), &e(2), &e(3)).unwrap();
    let c = compose_components(f.components(), f.components(), DEFAULT_TERM_CAP).unwrap();
    assert_eq!(c.comps[0].degree(), 3);
    assert_eq!(c.cancelled.degree(), 1);
}
