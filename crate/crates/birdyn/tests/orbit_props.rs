use birdyn::arith::{Field, FieldElem, NumberField, Rat};
use birdyn::classifier::condition_k;
use birdyn::maps::{make_family_a, PPoint};
use birdyn::orbits::{track_orbit, Dir, JetPoint};
use proptest::prelude::*;

fn nonzero() -> impl Strategy<Value = Rat> {
    (-12i64..=12, 1i64..=6).prop_filter_map("nonzero", |(n, d)| (n != 0).then(|| Rat::new(n, d)))
}

fn q(r: &Rat) -> FieldElem {
    FieldElem::from_rat(&NumberField::rationals(), r.clone())
}

/// γ₀ placing (α₁, γ₀) on the condition-k locus, when 1 + α₁ + … + α₁^{k−1} ≠ 0.
fn gamma_for(a1: &Rat, k: usize) -> Option<Rat> {
    let s = (0..k).fold(Rat::zero(), |acc, i| acc.add(&a1.pow(i as u64)));
    a1.square().mul(&s).inv().ok().map(|v| v.neg())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn first_image_of_a1_is_on_the_fiber_over_o0(a0 in nonzero(), a1 in nonzero(), g0 in nonzero()) {
        let f = make_family_a(&q(&a0), &q(&a1), &q(&g0)).unwrap();
        let o = track_orbit(&f, 1, 3).unwrap();
        let k = f.field();
        let (zero, one) = (FieldElem::zero(k), FieldElem::one(k));
        let want = JetPoint::on_fiber(PPoint::new([zero.clone(), one.clone(), zero.clone()]).unwrap(), Dir::new(one, zero).unwrap());
        prop_assert_eq!(&o.points[1], &want);
    }

    #[test]
    fn condition_k_iff_singular_orbit_of_length_2k_plus_1(a0 in nonzero(), a1 in nonzero(), k in 1usize..=4) {
        let Some(g0) = gamma_for(&a1, k) else { return Ok(()) };
        let f = make_family_a(&q(&a0), &q(&a1), &q(&g0)).unwrap();
        prop_assert!(condition_k(&q(&a1), &q(&g0), k));
        let o = track_orbit(&f, 1, 12).unwrap();
        // the shortest condition satisfied decides the length
        let first = (1..=k).find(|&j| condition_k(&q(&a1), &q(&g0), j)).unwrap();
        prop_assert_eq!(o.end(), Some(1));
        prop_assert_eq!(o.len(), 2 * first + 1);
    }

    #[test]
    fn off_every_locus_the_orbit_does_not_return_to_o1(a0 in nonzero(), a1 in nonzero(), g0 in nonzero()) {
        prop_assume!((1..=5).all(|k| !condition_k(&q(&a1), &q(&g0), k)));
        let f = make_family_a(&q(&a0), &q(&a1), &q(&g0)).unwrap();
        let o = track_orbit(&f, 1, 11).unwrap();
        prop_assert_ne!(o.end(), Some(1));
    }
}
