//! Orbit lists, the Bedford–Kim characteristic polynomial, and degree growth.

mod growth;
mod lists;

pub use crate::arith::sturm::largest_real_root;
pub use growth::{annihilates, classify_growth, default_tolerance, fit_recurrence, GrowthClass};
pub use lists::{build_lists, char_poly_bk, list_polynomials, ListOrbit, OrbitList, OrbitListSet};

use crate::arith::{Rat, UPoly};
use crate::error::{Error, Result};
use crate::maps::{degree_sequence_with, BiMap, DegreeOptions};
use crate::orbits::{se_profile, SeEntry, SeProfile};

/// δ as an interval; lo = hi = 1 when there is no expanding root.
#[derive(Clone, Debug, PartialEq)]
pub struct Delta {
    pub lo: Rat,
    pub hi: Rat,
}

impl Delta {
    pub fn one() -> Self {
        Delta { lo: Rat::one(), hi: Rat::one() }
    }

    pub fn is_one(&self) -> bool {
        self.lo == Rat::one() && self.hi == Rat::one()
    }

    pub fn midpoint(&self) -> f64 {
        (self.lo.to_f64() + self.hi.to_f64()) / 2.0
    }
}

#[derive(Clone, Debug)]
pub struct DynamicalDegree {
    pub charpoly: UPoly<Rat>,
    pub delta: Delta,
    pub class: GrowthClass,
    pub lists: OrbitListSet,
    pub se: Vec<SeEntry>,
    /// d_0 = 1, d_1, … as computed.
    pub degrees: Vec<u64>,
    pub empirical: UPoly<Rat>,
    /// Set when the characteristic polynomial and the computed degrees disagree.
    pub discrepancy: Option<String>,
}

/// Degrees computed for the empirical side: enough terms to pin down an
/// annihilator of degree deg 𝒳 twice over.
pub fn empirical_length(charpoly: &UPoly<Rat>) -> usize {
    (2 * charpoly.degree().unwrap_or(0) + 8).max(24)
}

/// The empirical degree sequence stops after the first degree above this
/// unless the options set their own bound.
pub const EMPIRICAL_DEGREE_BUDGET: u32 = 3000;

pub fn dynamical_degree(f: &BiMap, max_steps: usize) -> Result<DynamicalDegree> {
    dynamical_degree_with(f, max_steps, &DegreeOptions::default())
}

pub fn dynamical_degree_with(f: &BiMap, max_steps: usize, opts: &DegreeOptions) -> Result<DynamicalDegree> {
    let profile = se_profile(f, max_steps)?;
    dynamical_degree_of_profile(f, &profile, opts)
}

/// Same, reusing orbits already tracked.
pub fn dynamical_degree_of_profile(f: &BiMap, profile: &SeProfile, opts: &DegreeOptions) -> Result<DynamicalDegree> {
    let se = profile.entries();
    let lists = build_lists(&se)?;
    let charpoly = char_poly_bk(&lists)?;
    reconcile(f, charpoly, lists, se, opts)
}

/// Growth from a characteristic polynomial obtained some other way, checked
/// against the computed degrees.
pub fn dynamical_degree_given(f: &BiMap, charpoly: UPoly<Rat>, opts: &DegreeOptions) -> Result<DynamicalDegree> {
    reconcile(f, charpoly, OrbitListSet::default(), Vec::new(), opts)
}

fn reconcile(
    f: &BiMap,
    charpoly: UPoly<Rat>,
    lists: OrbitListSet,
    se: Vec<SeEntry>,
    opts: &DegreeOptions,
) -> Result<DynamicalDegree> {
    let n = empirical_length(&charpoly);
    let opts = DegreeOptions { max_degree: Some(opts.max_degree.unwrap_or(EMPIRICAL_DEGREE_BUDGET)), ..opts.clone() };
    let mut degrees = vec![1u64];
    degrees.extend(degree_sequence_with(f, n, &opts)?.into_iter().map(u64::from));
    let empirical = match fit_recurrence(&degrees) {
        Ok(p) => p,
        // degrees hit the budget before the recurrence could be confirmed
        Err(Error::InsufficientData { .. }) if degrees.len() > 3 => {
            let class = classify_growth(&charpoly, &degrees)?;
            let delta = match &class {
                GrowthClass::Exponential { lo, hi, .. } => Delta { lo: lo.clone(), hi: hi.clone() },
                _ => Delta::one(),
            };
            let msg = format!("only {} degrees within budget; class taken from the characteristic polynomial", degrees.len());
            return Ok(DynamicalDegree { charpoly: charpoly.clone(), delta, class, lists, se, degrees, empirical: charpoly, discrepancy: Some(msg) });
        }
        Err(e) => return Err(e),
    };
    let from_data = classify_growth(&empirical, &degrees)?;
    let (class, discrepancy) = match classify_growth(&charpoly, &degrees) {
        Ok(c) if c.same_kind(&from_data) => (c, None),
        Ok(c) => {
            let msg = format!("characteristic polynomial gives {c}, degrees give {from_data}");
            (from_data, Some(msg))
        }
        Err(e) => (from_data, Some(format!("characteristic polynomial rejected by the degrees: {e}"))),
    };
    let delta = match &class {
        GrowthClass::Exponential { lo, hi, .. } => Delta { lo: lo.clone(), hi: hi.clone() },
        _ => Delta::one(),
    };
    Ok(DynamicalDegree { charpoly, delta, class, lists, se, degrees, empirical, discrepancy })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{FieldElem, NumberField};
    use crate::maps::{make_family_a, make_family_b};

    fn r(s: &str) -> FieldElem {
        FieldElem::parse(&NumberField::rationals(), s).unwrap()
    }

    fn q(cs: &[i64]) -> UPoly<Rat> {
        UPoly::from_i64s(cs, &())
    }

    #[test]
    fn generic_family_a() {
        let f = make_family_a(&r("1"), &r("2"), &r("3")).unwrap();
        let d = dynamical_degree(&f, 64).unwrap();
        assert_eq!(d.charpoly, q(&[-1, -1, 1]));
        assert!(matches!(d.class, GrowthClass::Exponential { .. }));
        assert!((d.delta.midpoint() - 1.618033988749895).abs() < 1e-9);
        assert!(d.discrepancy.is_none());
    }

    #[test]
    fn generic_family_b() {
        let f = make_family_b(&r("1"), &r("1"), &r("1")).unwrap();
        let d = dynamical_degree(&f, 64).unwrap();
        assert_eq!(d.charpoly, q(&[1, -1, -1, 1]));
        assert_eq!(d.class, GrowthClass::Linear);
        assert!(d.delta.is_one());
    }

    #[test]
    fn p_one_is_bounded() {
        let f = make_family_a(&r("7/18"), &r("2"), &r("1/3")).unwrap();
        let d = dynamical_degree(&f, 64).unwrap();
        // x²(x² − x − 1) + x² = x³(x − 1)
        assert_eq!(d.charpoly, q(&[0, 0, 0, -1, 1]));
        assert!(matches!(d.class, GrowthClass::Bounded { .. }), "{}", d.class);
    }
}
