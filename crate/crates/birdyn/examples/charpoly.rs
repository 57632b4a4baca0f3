//! Characteristic polynomials from orbit data: the closed forms for
//! synthetic orbit lengths, then one computed from an actual map.

use birdyn::arith::{FieldElem, NumberField};
use birdyn::classifier::{expected_charpoly, FamilyKind};
use birdyn::entropy::{build_lists, char_poly_bk};
use birdyn::maps::make_family_a;
use birdyn::orbits::{se_profile, SeEntry};

fn main() -> birdyn::Result<()> {
    for p in 0..4 {
        // A0 -> O2 in one step, A1 never singular, A2 -> O0 after p + 1 steps
        let se = [
            SeEntry { start: 0, se: true, length: 1, end: Some(2) },
            SeEntry { start: 1, se: false, length: 0, end: None },
            SeEntry { start: 2, se: true, length: p + 1, end: Some(0) },
        ];
        let chi = char_poly_bk(&build_lists(&se)?)?;
        assert_eq!(chi, expected_charpoly(FamilyKind::A, None, Some(p)));
        println!("p = {p}: {chi}");
    }

    let q = NumberField::rationals();
    let e = |s: &str| FieldElem::parse(&q, s).unwrap();
    let f = make_family_a(&e("1"), &e("2"), &e("-1/4"))?;
    let profile = se_profile(&f, 64)?;
    for o in &profile.orbits {
        println!("A{}: length {}, ends at {:?}", o.start, o.len(), o.end());
    }
    println!("chi = {}", char_poly_bk(&build_lists(&profile.entries())?)?);
    Ok(())
}
