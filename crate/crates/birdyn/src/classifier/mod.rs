//! Which zero-entropy case a map falls in, and the catalog of those cases.

mod catalog;

pub use catalog::{
    case_matches, catalog_entry, check_entry, constraints_hold, map_vars, matching_cases, verify_catalog, zero_entropy_catalog,
    CatalogEntry, EntryCheck, NON_PERIODIC_SEARCH,
};

use std::fmt;
use std::str::FromStr;

use crate::arith::{Field, FieldElem, Rat, UPoly};
use crate::entropy::{dynamical_degree_given, dynamical_degree_of_profile, GrowthClass};
use crate::error::{Error, Result};
use crate::maps::{BiMap, DegreeOptions, Family};
use crate::orbits::{se_profile, SeProfile};

pub const K_MAX: usize = 16;
pub const P_MAX: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    A,
    B,
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyKind::A => "A",
            FamilyKind::B => "B",
        })
    }
}

/// The zero-entropy cases. Family A cases are named by (k, p); the four
/// (1, 4) maps and two (2, 3) maps by their coefficient field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Case {
    P0,
    P1,
    P2,
    K1P3,
    K2P3Quintic,
    K2P3Rational,
    /// α₁ = γ₀ = −1, any α₀ ≠ −1.
    K1P4Collision,
    K1P4Real,
    K1P4Gaussian,
    K1P4Octic,
    /// f^p(α₀, β₂) never reaches (0, 0).
    BGeneric,
    /// f^p(α₀, β₂) = (0, 0) for some p ≥ 1.
    BPeriodic,
    /// (α₀, β₂) = (0, 0).
    BOrigin,
}

impl Case {
    pub const ALL: [Case; 13] = [
        Case::P0,
        Case::P1,
        Case::P2,
        Case::K1P3,
        Case::K2P3Quintic,
        Case::K2P3Rational,
        Case::K1P4Collision,
        Case::K1P4Real,
        Case::K1P4Gaussian,
        Case::K1P4Octic,
        Case::BGeneric,
        Case::BPeriodic,
        Case::BOrigin,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Case::P0 => "p0",
            Case::P1 => "p1",
            Case::P2 => "p2",
            Case::K1P3 => "k1p3",
            Case::K2P3Quintic => "k2p3_quintic",
            Case::K2P3Rational => "k2p3_rational",
            Case::K1P4Collision => "k1p4_collision",
            Case::K1P4Real => "k1p4_real",
            Case::K1P4Gaussian => "k1p4_gaussian",
            Case::K1P4Octic => "k1p4_octic",
            Case::BGeneric => "b_generic",
            Case::BPeriodic => "b_periodic",
            Case::BOrigin => "b_origin",
        }
    }

    pub fn family(&self) -> FamilyKind {
        match self {
            Case::BGeneric | Case::BPeriodic | Case::BOrigin => FamilyKind::B,
            _ => FamilyKind::A,
        }
    }

    /// (k, p) the case forces; `None` leaves that index free.
    fn signature(&self) -> (Option<usize>, Option<usize>) {
        match self {
            Case::P0 => (None, Some(0)),
            Case::P1 => (None, Some(1)),
            Case::P2 => (None, Some(2)),
            Case::K1P3 => (Some(1), Some(3)),
            Case::K2P3Quintic | Case::K2P3Rational => (Some(2), Some(3)),
            Case::K1P4Collision | Case::K1P4Real | Case::K1P4Gaussian | Case::K1P4Octic => (Some(1), Some(4)),
            Case::BGeneric | Case::BPeriodic | Case::BOrigin => (None, None),
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Case {
    type Err = Error;

    fn from_str(s: &str) -> Result<Case> {
        Case::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| Error::parse(s.to_string(), "unknown case"))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CaseLabel {
    pub family: FamilyKind,
    pub k: Option<usize>,
    pub p: Option<usize>,
    pub growth: GrowthClass,
    /// Present exactly when the growth is not exponential and a case matched.
    pub case: Option<Case>,
    pub charpoly: UPoly<Rat>,
    /// d_0 = 1, d_1, …
    pub degrees: Vec<u64>,
    /// Disagreements between the characteristic polynomial, the degrees and the orbit data.
    pub notes: Vec<String>,
}

/// α₁²γ₀(1 + α₁ + … + α₁^{k−1}) + 1 = 0; false for k = 0.
pub fn condition_k(alpha1: &FieldElem, gamma0: &FieldElem, k: usize) -> bool {
    if k == 0 {
        return false;
    }
    let k_field = alpha1.field();
    let mut sum = FieldElem::zero(k_field);
    let mut pw = FieldElem::one(k_field);
    for _ in 0..k {
        sum = sum.add(&pw);
        pw = pw.mul(alpha1);
    }
    alpha1.mul(alpha1).mul(gamma0).mul(&sum).add(&FieldElem::one(k_field)).is_zero()
}

fn p_from_profile(profile: &SeProfile, p_max: usize) -> Option<usize> {
    let a2 = profile.orbit(2);
    (a2.is_se() && a2.end() == Some(0) && a2.len() <= p_max + 1).then(|| a2.len() - 1)
}

/// Smallest p ≤ p_max with the A₂-orbit, blown up along the earlier
/// singular orbits, landing on O₀ after p steps.
pub fn find_p_a(f: &BiMap, p_max: usize) -> Result<Option<usize>> {
    if !matches!(f.family(), Family::A { .. }) {
        return Err(Error::InvalidParameter("find_p_a needs a family A map".into()));
    }
    let profile = se_profile(f, p_max + 1)?;
    Ok(p_from_profile(&profile, p_max))
}

/// Smallest p ≤ p_max with g^p(α₀, β₂) = (0, 0) for g(x, y) = (α₀ + α₁x, (x + β₂y)/y);
/// absent if the orbit hits y = 0 first.
pub fn find_p_b(alpha0: &FieldElem, beta2: &FieldElem, alpha1: &FieldElem, p_max: usize) -> Option<usize> {
    let (mut x, mut y) = (alpha0.clone(), beta2.clone());
    for p in 0..=p_max {
        if x.is_zero() && y.is_zero() {
            return Some(p);
        }
        let Ok(inv) = y.inv() else { return None };
        let nx = alpha0.add(&alpha1.mul(&x));
        y = x.add(&beta2.mul(&y)).mul(&inv);
        x = nx;
    }
    None
}

fn xn(n: usize) -> UPoly<Rat> {
    UPoly::monomial(Rat::one(), n)
}

fn ints(cs: &[i64]) -> UPoly<Rat> {
    UPoly::from_i64s(cs, &())
}

/// The characteristic polynomial the case analysis predicts for (k, p).
pub fn expected_charpoly(family: FamilyKind, k: Option<usize>, p: Option<usize>) -> UPoly<Rat> {
    let golden = ints(&[-1, -1, 1]);
    match (family, k, p) {
        (FamilyKind::B, _, None) => ints(&[1, -1, -1, 1]),
        (FamilyKind::B, _, Some(p)) => xn(p + 1).add(&ints(&[1])).mul(&ints(&[1, -1, -1, 1])),
        (FamilyKind::A, None, None) => golden,
        (FamilyKind::A, None, Some(p)) => xn(p + 1).mul(&golden).add(&xn(2)),
        (FamilyKind::A, Some(k), None) => xn(2 * k + 1).mul(&golden).add(&ints(&[1])),
        (FamilyKind::A, Some(k), Some(p)) => {
            let inner = xn(2 * k + 3).sub(&xn(2 * k + 2)).sub(&xn(2 * k + 1)).add(&ints(&[1]));
            xn(p + 1).mul(&inner).add(&xn(2 * k + 3)).add(&ints(&[1, -1, -1]))
        }
    }
}

/// Orbit budget covering A₁-orbits of length 2k + 1 and A₂-orbits of length p + 1.
fn orbit_steps(k_max: usize, p_max: usize) -> usize {
    (2 * k_max + 2).max(p_max + 2)
}

fn pick_case(f: &BiMap, k: Option<usize>, p: Option<usize>, growth: &GrowthClass) -> Result<Option<Case>> {
    if matches!(growth, GrowthClass::Exponential { .. }) {
        return Ok(None);
    }
    for c in Case::ALL {
        let (ck, cp) = c.signature();
        let fits = (ck.is_none() || ck == k) && (cp.is_none() || cp == p);
        if fits && catalog::case_matches(c, f)? {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

/// (k, p), growth and case of a family map.
pub fn classify_map(f: &BiMap, k_max: usize, p_max: usize) -> Result<CaseLabel> {
    let opts = DegreeOptions::default();
    let mut notes = Vec::new();
    let (family, k, p, dd) = match f.family() {
        Family::Raw => return Err(Error::InvalidParameter("classification needs a family A or B map".into())),
        Family::B { alpha0, alpha1, beta2 } => {
            let p = find_p_b(alpha0, beta2, alpha1, p_max);
            let dd = dynamical_degree_of_profile(f, &se_profile(f, orbit_steps(0, p_max))?, &opts)?;
            let want = expected_charpoly(FamilyKind::B, None, p);
            if dd.charpoly != want {
                notes.push(format!("orbit lists give {}, affine orbit predicts {want}", dd.charpoly));
            }
            (FamilyKind::B, None, p, dd)
        }
        Family::A { alpha0, alpha1, gamma0 } => {
            let k = (1..=k_max).find(|&k| condition_k(alpha1, gamma0, k));
            let one = FieldElem::one(f.field());
            // α₀ = −1 on this line is the p = 0 map
            let collision =
                alpha1.add(&one).is_zero() && gamma0.add(&one).is_zero() && !alpha0.add(&one).is_zero();
            if collision {
                // the A₂-orbit needs a third level of blow-ups here; 𝒳 comes from the closed form
                let dd = dynamical_degree_given(f, expected_charpoly(FamilyKind::A, Some(1), Some(4)), &opts)?;
                (FamilyKind::A, Some(1), Some(4), dd)
            } else {
                let profile = se_profile(f, orbit_steps(k_max, p_max))?;
                let p = p_from_profile(&profile, p_max);
                let a1 = profile.orbit(1);
                let a1_se = a1.is_se() && a1.end() == Some(1);
                match k {
                    Some(k) if !(a1_se && a1.len() == 2 * k + 1) => {
                        notes.push(format!("condition {k} holds but the A1-orbit has length {}", a1.len()))
                    }
                    None if a1_se => notes.push(format!("A1-orbit returns after {} steps without condition k", a1.len())),
                    _ => {}
                }
                (FamilyKind::A, k, p, dynamical_degree_of_profile(f, &profile, &opts)?)
            }
        }
    };
    notes.extend(dd.discrepancy.clone());
    let case = pick_case(f, k, p, &dd.class)?;
    Ok(CaseLabel { family, k, p, growth: dd.class, case, charpoly: dd.charpoly, degrees: dd.degrees, notes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::NumberField;
    use crate::maps::{make_family_a, make_family_b};

    fn r(s: &str) -> FieldElem {
        FieldElem::parse(&NumberField::rationals(), s).unwrap()
    }

    #[test]
    fn condition_k_examples() {
        let a = r("3");
        assert!(condition_k(&a, &r("-1/9"), 1));
        assert!(condition_k(&a, &r("-1/36"), 2));
        for k in 1..=8 {
            assert!(!condition_k(&r("1"), &r("1"), k));
        }
        assert!(!condition_k(&a, &r("-1/9"), 0));
    }

    #[test]
    fn p_for_family_b() {
        let a1 = r("7");
        assert_eq!(find_p_b(&r("0"), &r("0"), &a1, 4), Some(0));
        assert_eq!(find_p_b(&r("-1"), &r("1"), &r("-1"), 4), Some(1));
        assert_eq!(find_p_b(&r("1"), &r("1"), &r("1"), 32), None);
    }

    #[test]
    fn p_for_family_a() {
        let p0 = make_family_a(&r("1/2"), &r("2"), &r("1/2")).unwrap();
        assert_eq!(find_p_a(&p0, 8).unwrap(), Some(0));
        let p1 = make_family_a(&r("7/18"), &r("2"), &r("1/3")).unwrap();
        assert_eq!(find_p_a(&p1, 8).unwrap(), Some(1));
        let generic = make_family_a(&r("1"), &r("2"), &r("3")).unwrap();
        assert_eq!(find_p_a(&generic, 32).unwrap(), None);
    }

    #[test]
    fn formulas() {
        // (k, 0): (x^{2k+2} − 1)(x − 1)(x + 1)
        let k1p0 = expected_charpoly(FamilyKind::A, Some(1), Some(0));
        assert_eq!(k1p0, ints(&[1, 0, -1, 0, -1, 0, 1]));
        assert_eq!(expected_charpoly(FamilyKind::A, None, Some(1)), ints(&[0, 0, 0, -1, 1]));
        assert_eq!(expected_charpoly(FamilyKind::B, None, Some(0)), ints(&[1, -1, -1, 1]).mul(&ints(&[1, 1])));
    }

    #[test]
    fn rational_two_three() {
        let f = make_family_a(&r("1/4"), &r("1"), &r("-1/2")).unwrap();
        let l = classify_map(&f, K_MAX, P_MAX).unwrap();
        assert_eq!((l.k, l.p), (Some(2), Some(3)));
        assert_eq!(l.growth, GrowthClass::Quadratic);
        assert_eq!(l.case, Some(Case::K2P3Rational));
    }

    #[test]
    fn origin_b_not_periodic() {
        let f = make_family_b(&r("0"), &r("5"), &r("0")).unwrap();
        let l = classify_map(&f, K_MAX, P_MAX).unwrap();
        assert_eq!(l.case, Some(Case::BOrigin));
        assert!(matches!(l.growth, GrowthClass::Bounded { .. }));
        assert_eq!(crate::fibrations::check_periodicity(&f, 12).unwrap(), None);
    }

    #[test]
    fn generic_is_exponential_without_case() {
        let f = make_family_a(&r("1"), &r("2"), &r("3")).unwrap();
        let l = classify_map(&f, 4, 8).unwrap();
        assert!(matches!(l.growth, GrowthClass::Exponential { .. }));
        assert_eq!(l.case, None);
        assert_eq!((l.k, l.p), (None, None));
    }
}
