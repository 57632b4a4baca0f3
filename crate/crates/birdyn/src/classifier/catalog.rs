use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;

use super::{classify_map, expected_charpoly, find_p_b, Case, CaseLabel, FamilyKind, K_MAX, P_MAX};
use crate::arith::expr::eval_expr;
use crate::arith::{Field, FieldElem, NumberField};
use crate::error::{Error, Result};
use crate::fibrations::check_periodicity;
use crate::maps::{make_family_a, make_family_b, BiMap, Family};

/// One parametric zero-entropy case with a concrete representative.
#[derive(Clone, Debug, PartialEq)]
pub struct CatalogEntry {
    /// Unique; equals `case.name()` for the base entry of a case.
    pub name: &'static str,
    pub case: Case,
    /// Coefficients of the field modulus, constant term first; `None` is ℚ.
    pub modulus: Option<&'static [i64]>,
    /// Representative parameters in terms of the generator `a`:
    /// (alpha0, alpha1, gamma0) for family A, (alpha0, alpha1, beta2) for B.
    pub params: [&'static str; 3],
    /// Expressions in alpha0, alpha1, gamma0 / beta2 that vanish on the locus.
    pub zero: Vec<&'static str>,
    /// Expressions that must not vanish.
    pub nonzero: Vec<&'static str>,
    pub growth: &'static str,
    pub period: Option<usize>,
    /// Fibration fixtures under fixtures/fibrations, without extension.
    pub fibrations: &'static [&'static str],
}

const P0: &[&str] = &["alpha1*gamma0 - 1", "alpha0 - gamma0"];
const P1: &[&str] = &["gamma0*(1 + alpha1) - 1", "alpha0*alpha1*(1 + alpha1)^2 - (1 + alpha1 + alpha1^2)"];
// F²(A₂) = O₀ written in α₁ = ω²
const P2: &[&str] = &[
    "alpha1^3*gamma0^2 - (alpha0*alpha1^3 + (alpha0 + 1)*alpha1^2 + (alpha0 - 2)*alpha1)*gamma0 + alpha1^2*alpha0 + alpha0 - 1",
    "alpha1^2*gamma0^3 - (alpha1^3 + alpha1^2 + alpha1)*gamma0^2 + (alpha0*alpha1^3 + (2*alpha0 + 1)*alpha1^2 - alpha1)*gamma0 - alpha1^2*alpha0 - alpha1*alpha0 + 1",
];
const K1P3: &[&str] = &[
    "alpha1^6 + alpha1^3 + 1",
    "alpha0 + 2*alpha1^5 - alpha1^3 + alpha1^2 + alpha1",
    "gamma0 - alpha1 - alpha1^4",
];
const QUINTIC: &[&str] = &[
    "alpha1^4 + alpha1^3 + alpha1^2 + alpha1 + 1",
    "alpha0 + alpha1^3 + 2*alpha1^2 + alpha1 + 2",
    "gamma0 + 1 + alpha1^2 + alpha1^3",
];
const B_ORIGIN: &[&str] = &["alpha0", "beta2"];

macro_rules! entry {
    ($name:expr, $case:ident, $modulus:expr, [$a0:expr, $a1:expr, $c:expr], $zero:expr, $nonzero:expr, $growth:expr, $period:expr, $fib:expr) => {
        CatalogEntry {
            name: $name,
            case: Case::$case,
            modulus: $modulus,
            params: [$a0, $a1, $c],
            zero: $zero.to_vec(),
            nonzero: $nonzero.to_vec(),
            growth: $growth,
            period: $period,
            fibrations: $fib,
        }
    };
}

const CUBIC: Option<&[i64]> = Some(&[1, 1, 1]);
const GAUSS: Option<&[i64]> = Some(&[1, 0, 1]);

pub fn zero_entropy_catalog() -> Vec<CatalogEntry> {
    vec![
        entry!("p0", P0, None, ["1/4", "4", "1/4"], P0, &[], "Bounded", None, &["p0_v1", "p0_v2"]),
        entry!("p0_unit", P0, None, ["1", "1", "1"], &[P0[0], P0[1], "alpha1 - 1"], &[], "Bounded", None, &["p0_unit_v1", "p0_unit_v2"]),
        entry!(
            "p0_period4",
            P0,
            None,
            ["-1", "-1", "-1"],
            &[P0[0], P0[1], "alpha1 + 1"],
            &[],
            "Bounded",
            Some(4),
            &["p0_period4_v1", "p0_period4_v2"]
        ),
        entry!(
            "p0_period6",
            P0,
            CUBIC,
            ["a^-1", "a", "a^-1"],
            &[P0[0], P0[1], "alpha1^2 + alpha1 + 1"],
            &[],
            "Bounded",
            Some(6),
            &["p0_period6_v1", "p0_period6_v2"]
        ),
        entry!("p1", P1, None, ["21/100", "4", "1/5"], P1, &[], "Bounded", None, &["p1_v1", "p1_v2"]),
        entry!("p1_unit", P1, None, ["3/4", "1", "1/2"], &[P1[0], P1[1], "alpha1 - 1"], &[], "Bounded", None, &["p1_unit_v1", "p1_unit_v2"]),
        entry!(
            "p1_period6",
            P1,
            CUBIC,
            ["(1 + a + a^2)/(a*(1 + a)^2)", "a", "1/(1 + a)"],
            &[P1[0], P1[1], "alpha1^2 + alpha1 + 1"],
            &[],
            "Bounded",
            Some(6),
            &["p1_period6_v1", "p1_period6_v2"]
        ),
        entry!(
            "p1_period8",
            P1,
            GAUSS,
            ["(1 + a + a^2)/(a*(1 + a)^2)", "a", "1/(1 + a)"],
            &[P1[0], P1[1], "alpha1^2 + 1"],
            &[],
            "Bounded",
            Some(8),
            &["p1_period8_v1", "p1_period8_v2"]
        ),
        entry!("p2", P2, None, ["5/27", "4", "1/6"], P2, &["alpha1*gamma0 - 1"], "Linear", None, &["p2_v"]),
        entry!(
            "p2_period10",
            P2,
            Some(&[1, -1, 1, -1, 1]),
            ["(a^3 - a^2 + 1)/((a + 1)*(a^2 - a + 1)^2)", "a^2", "(a - 1)/(a*(a^2 - a + 1))"],
            &[P2[0], P2[1], "alpha1^4 + alpha1^3 + alpha1^2 + alpha1 + 1"],
            &["alpha1*gamma0 - 1"],
            "Bounded",
            Some(10),
            &["p2_period10_v"]
        ),
        entry!(
            "k1p3",
            K1P3,
            Some(&[1, 0, 0, 1, 0, 0, 1]),
            ["-2*a^5 + a^3 - a^2 - a", "a", "a + a^4"],
            K1P3,
            &[],
            "Bounded",
            Some(18),
            &["k1p3_h1", "k1p3_h2", "k1p3_h3"]
        ),
        entry!(
            "k2p3_quintic",
            K2P3Quintic,
            Some(&[1, 1, 1, 1, 1]),
            ["-(a^3 + 2*a^2 + a + 2)", "a", "-(1 + a^2 + a^3)"],
            QUINTIC,
            &[],
            "Quadratic",
            None,
            &["k2p3_quintic_v"]
        ),
        entry!(
            "k2p3_rational",
            K2P3Rational,
            None,
            ["1/4", "1", "-1/2"],
            &["alpha0 - 1/4", "alpha1 - 1", "gamma0 + 1/2"],
            &[],
            "Quadratic",
            None,
            &["k2p3_rational_v"]
        ),
        entry!(
            "k1p4_collision",
            K1P4Collision,
            None,
            ["2", "-1", "-1"],
            &["alpha1 + 1", "gamma0 + 1"],
            &["alpha0 + 1"],
            "Quadratic",
            None,
            &["k1p4_collision_v"]
        ),
        entry!(
            "k1p4_real",
            K1P4Real,
            None,
            ["0", "1", "-1"],
            &["alpha0", "alpha1 - 1", "gamma0 + 1"],
            &[],
            "Quadratic",
            None,
            &["k1p4_real_v"]
        ),
        entry!(
            "k1p4_gaussian",
            K1P4Gaussian,
            GAUSS,
            ["0", "a", "1"],
            &["alpha0", "alpha1^2 + 1", "gamma0 - 1"],
            &[],
            "Quadratic",
            None,
            &["k1p4_gaussian_v"]
        ),
        entry!(
            "k1p4_octic",
            K1P4Octic,
            Some(&[1, 0, 0, 0, 1]),
            ["1 - a^3", "a", "a^2"],
            &["alpha1^4 + 1", "alpha0 - 1 + alpha1^3", "gamma0 - alpha1^2"],
            &[],
            "Quadratic",
            None,
            &["k1p4_octic_v"]
        ),
        entry!("b_generic", BGeneric, None, ["1", "1", "1"], &[], &[], "Linear", None, &["b_generic_v", "b_generic_w"]),
        entry!(
            "b_periodic",
            BPeriodic,
            None,
            ["-1", "-1", "1"],
            &["alpha1 + 1", "alpha0 + beta2^2"],
            &["beta2"],
            "Bounded",
            Some(4),
            &["b_periodic_h", "b_periodic_w"]
        ),
        entry!("b_origin", BOrigin, None, ["0", "5", "0"], B_ORIGIN, &[], "Bounded", None, &[]),
        entry!(
            "b_origin_period6",
            BOrigin,
            CUBIC,
            ["0", "a", "0"],
            &[B_ORIGIN[0], B_ORIGIN[1], "alpha1^2 + alpha1 + 1"],
            &[],
            "Bounded",
            Some(6),
            &["b_origin_period6_v1", "b_origin_period6_v2"]
        ),
        entry!(
            "b_origin_square",
            BOrigin,
            None,
            ["0", "4", "0"],
            B_ORIGIN,
            &[],
            "Bounded",
            None,
            &["b_origin_v1", "b_origin_v2"]
        ),
    ]
}

pub fn catalog_entry(name: &str) -> Option<CatalogEntry> {
    zero_entropy_catalog().into_iter().find(|e| e.name == name)
}

/// Parameter bindings for constraint expressions.
pub fn map_vars(f: &BiMap) -> Result<BTreeMap<String, FieldElem>> {
    let pairs = match f.family() {
        Family::A { alpha0, alpha1, gamma0 } => [("alpha0", alpha0), ("alpha1", alpha1), ("gamma0", gamma0)],
        Family::B { alpha0, alpha1, beta2 } => [("alpha0", alpha0), ("alpha1", alpha1), ("beta2", beta2)],
        Family::Raw => return Err(Error::InvalidParameter("map has no family parameters".into())),
    };
    Ok(pairs.into_iter().map(|(n, v)| (n.to_string(), v.clone())).collect())
}

/// Whether every `zero` expression vanishes and no `nonzero` one does.
pub fn constraints_hold(f: &BiMap, zero: &[&str], nonzero: &[&str]) -> Result<bool> {
    let vars = map_vars(f)?;
    for z in zero {
        if !eval_expr(z, f.field(), &vars)?.is_zero() {
            return Ok(false);
        }
    }
    for z in nonzero {
        if eval_expr(z, f.field(), &vars)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

impl CatalogEntry {
    pub fn family(&self) -> FamilyKind {
        self.case.family()
    }

    pub fn field(&self) -> Result<Arc<NumberField>> {
        match self.modulus {
            None => Ok(NumberField::rationals()),
            Some(m) => NumberField::from_i64s(m),
        }
    }

    pub fn parameters(&self) -> Result<[FieldElem; 3]> {
        let k = self.field()?;
        let mut vars = BTreeMap::new();
        if !k.is_rational() {
            vars.insert("a".to_string(), FieldElem::generator(&k));
        }
        let v = |s: &str| eval_expr(s, &k, &vars);
        Ok([v(self.params[0])?, v(self.params[1])?, v(self.params[2])?])
    }

    pub fn representative(&self) -> Result<BiMap> {
        let [a0, a1, c] = self.parameters()?;
        match self.family() {
            FamilyKind::A => make_family_a(&a0, &a1, &c),
            FamilyKind::B => make_family_b(&a0, &a1, &c),
        }
    }

    /// The representative lies on its own locus.
    pub fn satisfies_own_constraints(&self) -> Result<bool> {
        constraints_hold(&self.representative()?, &self.zero, &self.nonzero)
    }
}

/// Whether `f` lies in the locus of `case`, judged by exact constraint
/// evaluation (family A) or the affine orbit of (α₀, β₂) (family B).
pub fn case_matches(case: Case, f: &BiMap) -> Result<bool> {
    let fam = match f.family() {
        Family::A { .. } => FamilyKind::A,
        Family::B { .. } => FamilyKind::B,
        Family::Raw => return Ok(false),
    };
    if fam != case.family() {
        return Ok(false);
    }
    if let Family::B { alpha0, alpha1, beta2 } = f.family() {
        let p = find_p_b(alpha0, beta2, alpha1, P_MAX);
        return Ok(match case {
            Case::BGeneric => p.is_none(),
            Case::BOrigin => p == Some(0),
            _ => matches!(p, Some(n) if n >= 1),
        });
    }
    let base = catalog_entry(case.name()).expect("every case has a base entry");
    constraints_hold(f, &base.zero, &base.nonzero)
}

pub fn matching_cases(f: &BiMap) -> Result<Vec<Case>> {
    let mut out = Vec::new();
    for c in Case::ALL {
        if case_matches(c, f)? {
            out.push(c);
        }
    }
    Ok(out)
}

/// Outcome of checking one entry against its representative.
#[derive(Clone, Debug)]
pub struct EntryCheck {
    pub name: &'static str,
    pub label: std::result::Result<CaseLabel, String>,
    pub on_locus: bool,
    pub growth_ok: bool,
    /// The smallest period found, searched up to the expected one (or 12).
    pub period: Option<usize>,
    pub period_ok: bool,
    pub charpoly_ok: bool,
    pub matches: Vec<Case>,
}

impl EntryCheck {
    pub fn passed(&self) -> bool {
        self.label.is_ok() && self.on_locus && self.growth_ok && self.period_ok && self.charpoly_ok && self.matches.len() == 1
    }
}

/// How far periodicity is searched for entries not expected to be periodic.
pub const NON_PERIODIC_SEARCH: usize = 12;

pub fn check_entry(e: &CatalogEntry) -> EntryCheck {
    let mut out = EntryCheck {
        name: e.name,
        label: Err(String::new()),
        on_locus: false,
        growth_ok: false,
        period: None,
        period_ok: false,
        charpoly_ok: false,
        matches: Vec::new(),
    };
    let f = match e.representative() {
        Ok(f) => f,
        Err(err) => {
            out.label = Err(err.to_string());
            return out;
        }
    };
    out.on_locus = e.satisfies_own_constraints().unwrap_or(false);
    out.matches = matching_cases(&f).unwrap_or_default();
    match classify_map(&f, K_MAX, P_MAX) {
        Ok(l) => {
            out.growth_ok = l.growth.name() == e.growth && l.case == Some(e.case);
            out.charpoly_ok = l.charpoly == expected_charpoly(l.family, l.k, l.p);
            out.label = Ok(l);
        }
        Err(err) => out.label = Err(err.to_string()),
    }
    let bounded = e.growth == "Bounded";
    let search = e.period.unwrap_or(NON_PERIODIC_SEARCH);
    match bounded.then(|| check_periodicity(&f, search)) {
        Some(Ok(p)) => {
            out.period = p;
            out.period_ok = p == e.period;
        }
        Some(Err(_)) => {}
        None => out.period_ok = e.period.is_none(),
    }
    out
}

/// Checks every entry; entries are independent and run in parallel.
pub fn verify_catalog(entries: &[CatalogEntry]) -> Vec<EntryCheck> {
    entries.par_iter().map(check_entry).collect()
}
