use std::sync::Arc;

use birdyn::arith::mgcd::gcd;
use birdyn::arith::{Field, FieldElem, HPoly, NumberField, Rat, UPoly};
use birdyn::Error;
use proptest::prelude::*;

fn rat() -> impl Strategy<Value = Rat> {
    (-60i64..=60, 1i64..=20).prop_map(|(n, d)| Rat::new(n, d))
}

fn k6() -> Arc<NumberField> {
    NumberField::from_i64s(&[1, 0, 0, 1, 0, 0, 1]).unwrap()
}

fn elem6() -> impl Strategy<Value = FieldElem> {
    prop::collection::vec(rat(), 6).prop_map(|cs| FieldElem::from_coeffs(&k6(), cs).unwrap())
}

fn upoly() -> impl Strategy<Value = UPoly<Rat>> {
    prop::collection::vec(rat(), 1..7).prop_map(|cs| UPoly::new(cs, &()))
}

/// Homogeneous polynomial of degree `d` in x0, x1, x2 with small integer coefficients.
fn hpoly(d: u32) -> impl Strategy<Value = HPoly<Rat>> {
    let n = ((d + 1) * (d + 2) / 2) as usize;
    prop::collection::vec(-4i64..=4, n).prop_map(move |cs| {
        let mut terms = Vec::new();
        let mut it = cs.into_iter();
        for i in 0..=d {
            for j in 0..=d - i {
                terms.push(([i, j, d - i - j], Rat::int(it.next().unwrap())));
            }
        }
        HPoly::from_terms(terms, d, &()).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn rational_field_laws(a in rat(), b in rat(), c in rat()) {
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.sub(&b).add(&b), a.clone());
        if !a.is_zero() {
            prop_assert!(a.mul(&a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn number_field_laws(a in elem6(), b in elem6(), c in elem6()) {
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        if !a.is_zero() {
            let ai = a.inv().unwrap();
            prop_assert!(a.mul(&ai).is_one());
            prop_assert_eq!(b.mul(&a).div(&a).unwrap(), b.clone());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn division_with_remainder(a in upoly(), b in upoly()) {
        prop_assume!(!b.is_zero());
        let (q, r) = a.divrem(&b).unwrap();
        prop_assert_eq!(q.mul(&b).add(&r), a.clone());
        prop_assert!(r.deg() < b.deg());
    }

    #[test]
    fn univariate_gcd_divides_and_is_maximal(a in upoly(), b in upoly(), c in upoly()) {
        prop_assume!(!c.is_zero() && !(a.is_zero() && b.is_zero()));
        let g = a.mul(&c).gcd(&b.mul(&c));
        prop_assert!(a.mul(&c).rem(&g).unwrap().is_zero());
        prop_assert!(b.mul(&c).rem(&g).unwrap().is_zero());
        prop_assert!(g.rem(&c).unwrap().is_zero());
    }

    #[test]
    fn homogeneous_gcd_recovers_a_common_factor(a in hpoly(2), b in hpoly(2), c in hpoly(1)) {
        prop_assume!(!a.is_zero() && !b.is_zero() && !c.is_zero());
        let (ac, bc) = (a.mul(&c), b.mul(&c));
        let g = gcd(&ac, &bc);
        prop_assert!(g.divides(&ac) && g.divides(&bc));
        prop_assert!(c.divides(&g));
    }
}

#[test]
fn generator_inverse_in_the_degree_six_field() {
    let k = k6();
    let a = FieldElem::generator(&k);
    let want = a.pow(5).add(&a.pow(2)).neg();
    assert_eq!(a.inv().unwrap(), want);
    assert!(matches!(FieldElem::zero(&k).inv(), Err(Error::ZeroInverse)));
}

#[test]
fn reducible_modulus_is_reported() {
    // x^2 - 1 = (x - 1)(x + 1)
    let k = NumberField::from_i64s(&[-1, 0, 1]);
    let err = match k {
        Err(e) => e,
        Ok(k) => FieldElem::generator(&k).sub(&FieldElem::one(&k)).inv().unwrap_err(),
    };
    assert!(matches!(err, Error::ReducibleModulus { .. }), "{err}");
}
