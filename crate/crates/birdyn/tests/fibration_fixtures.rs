use birdyn::classifier::{case_matches, zero_entropy_catalog};
use birdyn::io::fixture::{check_fibration_dir, fixtures_dir, load_fibrations};

#[test]
fn every_fixture_passes() {
    let checks = check_fibration_dir(&fixtures_dir().join("fibrations"), 7).unwrap();
    assert!(checks.len() >= 30);
    let bad: Vec<_> = checks.iter().filter(|c| !c.passed()).map(|c| format!("{c:?}")).collect();
    assert!(bad.is_empty(), "{bad:#?}");
    for c in &checks {
        assert!(c.pointwise > 0, "{} was never sampled", c.name);
        assert!(c.identity == Some(true), "{}", c.name);
    }
}

#[test]
fn catalog_references_resolve_to_maps_on_the_locus() {
    let fibs = load_fibrations(&fixtures_dir().join("fibrations")).unwrap();
    for e in zero_entropy_catalog() {
        for name in e.fibrations {
            let spec = &fibs.iter().find(|(n, _)| n == name).unwrap_or_else(|| panic!("missing {name}")).1;
            let f = spec.map.as_ref().expect("fixtures embed their map").build().unwrap();
            assert!(case_matches(e.case, &f).unwrap(), "{name} is not a {} map", e.case);
        }
    }
}

#[test]
fn period_eighteen_numerators_one_and_two_are_dependent() {
    // V1 is a constant multiple of V2², so only V3 is transverse to either
    let fibs = load_fibrations(&fixtures_dir().join("fibrations")).unwrap();
    let get = |n: &str| {
        let s = &fibs.iter().find(|(m, _)| m == n).unwrap().1;
        s.fibration_in(&s.field().unwrap()).unwrap()
    };
    let (v1, v2, v3) = (get("k1p3_h1"), get("k1p3_h2"), get("k1p3_h3"));
    assert!(!birdyn::fibrations::transversality_check(&v1, &v2));
    assert!(birdyn::fibrations::transversality_check(&v1, &v3));
    assert!(birdyn::fibrations::transversality_check(&v2, &v3));
    assert_eq!(v2.degree(), 3);
}
