//! The nine acceptance criteria as runnable checks.
//!
//! Shared by `birdyn verify-all` and the `acceptance` test target. Details are
//! deterministic; elapsed times are kept separately so reports stay
//! byte-identical across runs.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::arith::expr::eval_expr;
use crate::arith::{Field, FieldElem, NumberField, Rat, UPoly};
use crate::classifier::{
    catalog_entry, classify_map, condition_k, expected_charpoly, zero_entropy_catalog, FamilyKind, K_MAX, P_MAX,
};
use crate::entropy::{
    annihilates, build_lists, char_poly_bk, dynamical_degree, fit_recurrence, largest_real_root, GrowthClass,
};
use crate::error::{Error, Result};
use crate::fibrations::check_periodicity;
use crate::io::fixture::{check_fibration_dir, check_fibration_spec, fixtures_dir, read_text};
use crate::io::parse_fibration_spec;
use crate::maps::{
    compose_components, degree_sequence, make_family_a, make_family_b, map_compose, map_evaluate, BiMap, PPoint,
    DEFAULT_TERM_CAP,
};
use crate::orbits::{track_orbit, Dir, JetPoint, SeEntry};

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct Criterion {
    pub number: u32,
    pub title: &'static str,
    pub checks: Vec<Check>,
    pub elapsed: Duration,
}

impl Criterion {
    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.passed)
    }

    /// One line: number, verdict, title, and the failing checks if any.
    pub fn summary(&self) -> String {
        let ok = self.checks.iter().filter(|c| c.passed).count();
        let mut s = format!(
            "criterion {}: {} ({ok}/{} checks) {}",
            self.number,
            if self.passed() { "PASS" } else { "FAIL" },
            self.checks.len(),
            self.title
        );
        for c in self.checks.iter().filter(|c| !c.passed) {
            s.push_str(&format!("; failed {}: {}", c.name, c.detail));
        }
        s
    }

    pub fn to_value(&self) -> Value {
        json!({
            "criterion": self.number,
            "title": self.title,
            "passed": self.passed(),
            "checks": self.checks.iter().map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail})).collect::<Vec<_>>(),
        })
    }
}

fn check(name: impl Into<String>, f: impl FnOnce() -> Result<(bool, String)>) -> Check {
    let name = name.into();
    match f() {
        Ok((passed, detail)) => Check { name, passed, detail },
        Err(e) => Check { name, passed: false, detail: format!("error: {e}") },
    }
}

fn rep(name: &str) -> Result<BiMap> {
    catalog_entry(name).ok_or_else(|| Error::InvalidParameter(format!("no catalog entry {name}")))?.representative()
}

fn q() -> std::sync::Arc<NumberField> {
    NumberField::rationals()
}

fn qe(s: &str) -> FieldElem {
    FieldElem::parse(&q(), s).expect("rational literal")
}

fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n, d)
}

pub const TITLES: [&str; 9] = [
    "degree sequences match the stated values and closed forms",
    "characteristic polynomial formulas from orbit lists",
    "dynamical degree of the generic map and of the condition-k maps",
    "growth classes",
    "fibrations, first integrals and transversality",
    "periodicity with minimal periods",
    "orbit machinery for A1",
    "empirical recurrences against the characteristic polynomial",
    "randomized law suites",
];

pub fn run_criterion(n: u32) -> Criterion {
    let t = Instant::now();
    let checks = match n {
        1 => degrees(),
        2 => formulas(),
        3 => dyn_degree(),
        4 => growth(),
        5 => fibrations(),
        6 => periods(),
        7 => orbits(),
        8 => oracles(),
        9 => laws(),
        _ => vec![Check { name: "criterion".into(), passed: false, detail: format!("no criterion {n}") }],
    };
    let title = TITLES.get((n as usize).wrapping_sub(1)).copied().unwrap_or("unknown");
    Criterion { number: n, title, checks, elapsed: t.elapsed() }
}

pub fn run_all() -> Vec<Criterion> {
    (1..=9).into_par_iter().map(run_criterion).collect()
}

const K1P4: [&str; 4] = ["k1p4_collision", "k1p4_real", "k1p4_gaussian", "k1p4_octic"];
const K1P4_DEGREES: [u32; 10] = [2, 3, 5, 7, 11, 15, 20, 25, 32, 39];
const K2P3_DEGREES: [u32; 11] = [2, 3, 5, 8, 12, 16, 22, 28, 35, 43, 52];

fn degrees() -> Vec<Check> {
    let mut out = Vec::new();
    let mut seqs = BTreeMap::new();
    for name in K1P4 {
        let t = Instant::now();
        let d = rep(name).and_then(|f| degree_sequence(&f, 10));
        let el = t.elapsed();
        out.push(check(format!("{name} d1..d10"), || {
            let d = d.clone()?;
            Ok((d == K1P4_DEGREES && el < Duration::from_secs(30), format!("{d:?}")))
        }));
        if let Ok(d) = d {
            seqs.insert(name, d);
        }
    }
    let k2p3 = rep("k2p3_rational").and_then(|f| degree_sequence(&f, 11));
    out.push(check("k2p3_rational d1..d11", || {
        let d = k2p3.clone()?;
        Ok((d == K2P3_DEGREES, format!("{d:?}")))
    }));
    out.push(check("b_generic d_n = 5/4 + n/2 - (-1)^n/4", || {
        let d = degree_sequence(&rep("b_generic")?, 12)?;
        let want: Vec<Rat> = (1..=12i64)
            .map(|n| rat(5, 4).add(&rat(n, 2)).sub(&rat(if n % 2 == 0 { 1 } else { -1 }, 4)))
            .collect();
        let got: Vec<Rat> = d.iter().map(|&v| Rat::int(v)).collect();
        Ok((got == want, format!("{d:?}")))
    }));
    out.push(check("(1,4) closed form over Q(i)", || {
        let k = NumberField::from_i64s(&[1, 0, 1])?;
        let i = FieldElem::generator(&k);
        let c = |n: i64, d: i64| FieldElem::from_rat(&k, rat(n, d));
        let mut bad = Vec::new();
        for (name, d) in &seqs {
            for (idx, &v) in d.iter().enumerate() {
                let n = idx as u64 + 1;
                let sign = if n.is_multiple_of(2) { c(1, 1) } else { c(-1, 1) };
                let form = c(23, 16)
                    .add(&c(3, 8).mul(&c((n * n) as i64, 1)))
                    .sub(&c(3, 16).mul(&sign))
                    .sub(&c(1, 8).mul(&i.pow(n).add(&i.neg().pow(n))));
                if form != FieldElem::from_i64(&k, v as i64) {
                    bad.push(format!("{name} n={n}"));
                }
            }
        }
        Ok((seqs.len() == 4 && bad.is_empty(), if bad.is_empty() { "4 maps, n = 1..10".into() } else { bad.join(", ") }))
    }));
    out.push(check("(2,3) closed form over Q(w), w^2+w+1=0", || {
        let d = k2p3.clone()?;
        let k = NumberField::from_i64s(&[1, 1, 1])?;
        let w = FieldElem::generator(&k);
        let wbar = w.square();
        let c = |n: i64, dd: i64| FieldElem::from_rat(&k, rat(n, dd));
        let ok = d.iter().enumerate().all(|(idx, &v)| {
            let n = idx as u64 + 1;
            let sign = if n.is_multiple_of(2) { c(1, 1) } else { c(-1, 1) };
            let form = c(97, 72)
                .add(&c(5 * (n * n) as i64, 12))
                .sub(&c(1, 8).mul(&sign))
                .sub(&c(1, 9).mul(&w.pow(n).add(&wbar.pow(n))));
            form == FieldElem::from_i64(&k, v as i64)
        });
        Ok((ok, "n = 1..11".into()))
    }));
    out
}

fn upoly(cs: &[i64]) -> UPoly<Rat> {
    UPoly::from_i64s(cs, &())
}

fn xpow(n: usize) -> UPoly<Rat> {
    UPoly::monomial(Rat::one(), n)
}

fn golden() -> UPoly<Rat> {
    upoly(&[-1, -1, 1])
}

/// x^{p+1}(x² − x − 1) + x²
pub fn chi_p(p: usize) -> UPoly<Rat> {
    xpow(p + 1).mul(&golden()).add(&xpow(2))
}

/// x^{2k+1}(x² − x − 1) + 1
pub fn chi_k(k: usize) -> UPoly<Rat> {
    xpow(2 * k + 1).mul(&golden()).add(&xpow(0))
}

/// x^{p+1}(x^{2k+3} − x^{2k+2} − x^{2k+1} + 1) + x^{2k+3} − x² − x + 1
pub fn chi_kp(k: usize, p: usize) -> UPoly<Rat> {
    let inner = xpow(2 * k + 3).sub(&xpow(2 * k + 2)).sub(&xpow(2 * k + 1)).add(&xpow(0));
    xpow(p + 1).mul(&inner).add(&xpow(2 * k + 3)).sub(&xpow(2)).sub(&xpow(1)).add(&xpow(0))
}

/// (x^{p+1} + 1)(x − 1)²(x + 1)
pub fn chi_b(p: usize) -> UPoly<Rat> {
    xpow(p + 1).add(&xpow(0)).mul(&upoly(&[1, -1, -1, 1]))
}

fn entry(start: usize, len: Option<usize>, end: usize) -> SeEntry {
    match len {
        Some(length) => SeEntry { start, se: true, length, end: Some(end) },
        None => SeEntry { start, se: false, length: 0, end: None },
    }
}

fn bk(entries: &[SeEntry]) -> Result<UPoly<Rat>> {
    char_poly_bk(&build_lists(entries)?)
}

fn formulas() -> Vec<Check> {
    let mut out = Vec::new();
    let a = |k: Option<usize>, p: Option<usize>| {
        vec![entry(0, Some(1), 2), entry(1, k.map(|k| 2 * k + 1), 1), entry(2, p.map(|p| p + 1), 0)]
    };
    let mut compare = |name: String, family: FamilyKind, k: Option<usize>, p: Option<usize>, es: Vec<SeEntry>, want: UPoly<Rat>| {
        out.push(check(name, || {
            let got = bk(&es)?;
            let table = expected_charpoly(family, k, p);
            Ok((got == want && table == want, format!("{got}")))
        }));
    };
    for p in 0..=6 {
        compare(format!("X_p p={p}"), FamilyKind::A, None, Some(p), a(None, Some(p)), chi_p(p));
    }
    for k in 1..=4 {
        compare(format!("X_k k={k}"), FamilyKind::A, Some(k), None, a(Some(k), None), chi_k(k));
    }
    for (k, p) in [(1, 0), (1, 1), (1, 2), (1, 3), (2, 3), (1, 4)] {
        compare(format!("X_(k,p) ({k},{p})"), FamilyKind::A, Some(k), Some(p), a(Some(k), Some(p)), chi_kp(k, p));
    }
    for p in 0..=4 {
        let es = vec![entry(0, Some(1), 2), entry(1, Some(1), 1), entry(2, Some(p + 1), 0)];
        compare(format!("family B p={p}"), FamilyKind::B, None, Some(p), es, chi_b(p));
    }
    out
}

fn dyn_degree() -> Vec<Check> {
    let tol = rat(1, 1_000_000_000_000);
    let phi = largest_real_root(&golden(), &tol);
    let mut out = vec![check("generic map: X = x^2 - x - 1, delta near 1.6180339887", || {
        let f = make_family_a(&qe("1"), &qe("2"), &qe("3"))?;
        let d = dynamical_degree(&f, 64)?;
        let target = Rat::new(16180339887i64, 10_000_000_000i64);
        let eps = rat(1, 1_000_000_000);
        let ok = d.charpoly == golden()
            && d.delta.hi.sub(&d.delta.lo) <= eps
            && d.delta.lo.sub(&target).abs() <= eps
            && d.delta.hi.sub(&target).abs() <= eps;
        Ok((ok, format!("X = {}, delta in [{}, {}]", d.charpoly, d.delta.lo, d.delta.hi)))
    })];
    let roots: Vec<(Rat, Rat)> = (1..=6).filter_map(|k| largest_real_root(&chi_k(k), &tol)).collect();
    let text: Vec<String> = roots.iter().map(|r| format!("{:.8}", r.0.to_f64())).collect();
    // Each X_k is positive at the golden ratio, so its largest root lies below it
    // and the sequence can only approach from below.
    out.push(check("delta(X_k) strictly decreasing toward the golden ratio, k = 1..6", || {
        let (_, phi_hi) = phi.clone().ok_or(Error::InvalidParameter("no root".into()))?;
        let decreasing = roots.windows(2).all(|w| w[1].1 < w[0].0);
        let above = roots.iter().all(|r| r.0 > phi_hi);
        Ok((roots.len() == 6 && decreasing && above, text.join(", ")))
    }));
    out.push(check("delta(X_k) strictly increasing toward the golden ratio, k = 1..6", || {
        let (phi_lo, _) = phi.clone().ok_or(Error::InvalidParameter("no root".into()))?;
        let increasing = roots.windows(2).all(|w| w[0].1 < w[1].0);
        let below = roots.iter().all(|r| r.1 < phi_lo);
        let gap = phi_lo.sub(&roots[5].1).to_f64();
        Ok((roots.len() == 6 && increasing && below && gap < 2e-3, format!("{}, gap at k = 6 {gap:.2e}", text.join(" < "))))
    }));
    // α₁ = 2, γ₀ = −1/(4(2^k − 1)) satisfies condition k
    for k in 1..=6usize {
        out.push(check(format!("condition-{k} map has X_k"), || {
            let g0 = Rat::new(-1, 4 * ((1i64 << k) - 1));
            let f = make_family_a(&qe("1"), &qe("2"), &FieldElem::from_rat(&q(), g0))?;
            let d = dynamical_degree(&f, 64)?;
            Ok((d.charpoly == chi_k(k) && matches!(d.class, GrowthClass::Exponential { .. }), format!("{}", d.charpoly)))
        }));
    }
    out
}

fn growth() -> Vec<Check> {
    let mut out = vec![check("p2: Linear with d_n = 2n - 1 for n >= 2", || {
        let l = classify_map(&rep("p2")?, K_MAX, P_MAX)?;
        let lin = l.degrees.iter().enumerate().skip(2).all(|(n, &d)| d == 2 * n as u64 - 1);
        Ok((l.growth == GrowthClass::Linear && lin, format!("{} {:?}", l.growth, &l.degrees[..8.min(l.degrees.len())])))
    })];
    let expect = [
        ("k2p3_rational", "Quadratic"),
        ("k2p3_quintic", "Quadratic"),
        ("k1p4_collision", "Quadratic"),
        ("k1p4_real", "Quadratic"),
        ("k1p4_gaussian", "Quadratic"),
        ("k1p4_octic", "Quadratic"),
        ("p0", "Bounded"),
        ("p0_unit", "Bounded"),
        ("p1", "Bounded"),
        ("p1_unit", "Bounded"),
        ("b_generic", "Linear"),
    ];
    out.extend(expect.par_iter().map(|(name, class)| {
        check(format!("{name} {class}"), || {
            let l = classify_map(&rep(name)?, K_MAX, P_MAX)?;
            Ok((l.growth.name() == *class, l.growth.to_string()))
        })
    }).collect::<Vec<_>>());
    out.push(check("family B (2, 3, 5) Linear", || {
        let l = classify_map(&make_family_b(&qe("2"), &qe("3"), &qe("5"))?, K_MAX, P_MAX)?;
        Ok((l.growth == GrowthClass::Linear, l.growth.to_string()))
    }));
    out
}

const COVERED: [&str; 13] = [
    "p0",
    "p1",
    "p2",
    "k1p3",
    "k2p3_quintic",
    "k2p3_rational",
    "k1p4_collision",
    "k1p4_real",
    "k1p4_gaussian",
    "k1p4_octic",
    "b_generic",
    "b_periodic",
    "b_origin_square",
];

fn fibrations() -> Vec<Check> {
    let dir = fixtures_dir();
    let mut out = Vec::new();
    match check_fibration_dir(&dir.join("fibrations"), 7) {
        Ok(checks) => {
            for c in &checks {
                let mut bits = Vec::new();
                if let Some(o) = c.first_integral {
                    bits.push(format!("first integral {o}"));
                }
                if let Some(t) = c.transverse {
                    bits.push(format!("transverse {t}"));
                }
                bits.push(format!("{} points", c.pointwise));
                out.push(Check { name: c.name.clone(), passed: c.passed() && c.identity == Some(true), detail: bits.join(", ") });
            }
            for name in COVERED {
                let fibs = catalog_entry(name).map(|e| e.fibrations).unwrap_or(&[]);
                let ok = !fibs.is_empty() && fibs.iter().all(|f| checks.iter().any(|c| c.name == *f && c.passed()));
                out.push(Check { name: format!("{name} covered"), passed: ok, detail: fibs.join(", ") });
            }
        }
        Err(e) => out.push(Check { name: "fibration fixtures".into(), passed: false, detail: e.to_string() }),
    }
    // the period-18 tables exactly as printed, with the stated multipliers
    for name in ["k1p3_h1", "k1p3_h2"] {
        out.push(check(format!("{name} as displayed"), || {
            let spec = parse_fibration_spec(&read_text(&dir.join("displayed").join(format!("{name}.json")))?)?;
            let c = check_fibration_spec(name, &spec, None, None, 7)?;
            Ok((c.identity == Some(true), format!("identity {:?}", c.identity)))
        }));
    }
    out
}

fn periods() -> Vec<Check> {
    let cases: [(&str, &str, usize); 9] = [
        ("p0_period4", "alpha1 = -1", 4),
        ("p0_period6", "alpha1 a primitive cube root", 6),
        ("p1_period6", "k = 0 excluded by the parameters; k = 1 instead", 6),
        ("p1_period8", "k = 2", 8),
        ("p2_period10", "k = 1, w a primitive 10th root", 10),
        ("k1p3", "over Q[a]/(a^6+a^3+1)", 18),
        ("b_periodic", "family B (-1, -1, 1)", 4),
        ("b_origin_period6", "family B (0, zeta3, 0)", 6),
        ("p2_cyclotomic6", "w^2 - w + 1 = 0", 6),
    ];
    cases
        .par_iter()
        .map(|(name, what, n)| {
            check(format!("{name} ({what}) period {n}"), || {
                let f = if *name == "p2_cyclotomic6" { p2_at_sixth_root()? } else { rep(name)? };
                let p = check_periodicity(&f, *n)?;
                Ok((p == Some(*n), format!("smallest period up to {n}: {p:?}")))
            })
        })
        .collect()
}

/// The p2 parameters at a root of w² − w + 1; their denominators vanish there.
fn p2_at_sixth_root() -> Result<BiMap> {
    let k = NumberField::from_i64s(&[1, -1, 1])?;
    let vars = BTreeMap::from([("w".to_string(), FieldElem::generator(&k))]);
    let a0 = eval_expr("(w^3 - w^2 + 1)/((w + 1)*(w^2 - w + 1)^2)", &k, &vars)?;
    let g0 = eval_expr("(w - 1)/(w*(w^2 - w + 1))", &k, &vars)?;
    make_family_a(&a0, &FieldElem::generator(&k).square(), &g0)
}

fn orbit_points(f: &BiMap, steps: usize) -> Result<Vec<JetPoint>> {
    Ok(track_orbit(f, 1, steps)?.points)
}

fn orbits() -> Vec<Check> {
    let mut out = Vec::new();
    let maps = [("1", "2", "3"), ("2/3", "-3", "5/7"), ("-4", "1/2", "9")];
    for (a0, a1, g0) in maps {
        out.push(check(format!("({a0}, {a1}, {g0}): F(A1) on E0 and F^2k(A1), k = 1..4"), || {
            let (al1, ga0) = (qe(a1), qe(g0));
            let f = make_family_a(&qe(a0), &al1, &ga0)?;
            let pts = orbit_points(&f, 9)?;
            let k = f.field();
            let zero = FieldElem::zero(k);
            let one = FieldElem::one(k);
            let on_e0 = JetPoint::on_fiber(PPoint::new([zero.clone(), one.clone(), zero.clone()])?, Dir::new(one.clone(), zero.clone()).expect("direction"));
            let first = pts.get(1) == Some(&on_e0);
            let mut even = true;
            let mut sum = zero.clone();
            for kk in 1..=4u64 {
                sum = sum.add(&al1.pow(kk - 1));
                let want = JetPoint::point(PPoint::new([zero.clone(), al1.mul(&ga0).mul(&sum), one.clone()])?);
                even &= pts.get(2 * kk as usize) == Some(&want);
            }
            Ok((first && even, format!("{} exact points", pts.len())))
        }));
    }
    out.push(check("condition k iff the A1-orbit is SE of length 2k+1, 20 draws", || {
        let mut rng = ChaCha8Rng::seed_from_u64(0xa1_0b17);
        let mut agreements = 0;
        for draw in 0..20 {
            let nz = |rng: &mut ChaCha8Rng| loop {
                let r = Rat::new(rng.gen_range(-9i64..=9), rng.gen_range(1i64..=5));
                if !r.is_zero() && r != Rat::int(-1) {
                    break r;
                }
            };
            let a1 = nz(&mut rng);
            let a0 = Rat::new(rng.gen_range(-9i64..=9), rng.gen_range(1i64..=5));
            // target condition 1..4 on 16 draws, none on 4
            let target = if draw % 5 == 4 { None } else { Some(draw % 5 + 1) };
            let g0 = match target {
                Some(k) => {
                    let s = (0..k).fold(Rat::zero(), |acc, i| acc.add(&a1.pow(i as u64)));
                    a1.square().mul(&s).inv()?.neg()
                }
                None => nz(&mut rng),
            };
            let f = make_family_a(&FieldElem::from_rat(&q(), a0.clone()), &FieldElem::from_rat(&q(), a1.clone()), &FieldElem::from_rat(&q(), g0.clone()))?;
            let o = track_orbit(&f, 1, 10)?;
            for k in 1..=4 {
                let cond = condition_k(&FieldElem::from_rat(&q(), a1.clone()), &FieldElem::from_rat(&q(), g0.clone()), k);
                let se = o.end() == Some(1) && o.len() == 2 * k + 1;
                if cond != se {
                    return Ok((false, format!("draw {draw}: ({a0}, {a1}, {g0}) k={k} condition {cond}, SE {se}")));
                }
                agreements += 1;
            }
        }
        Ok((true, format!("{agreements} agreements")))
    }));
    out
}

fn oracles() -> Vec<Check> {
    let entries = zero_entropy_catalog();
    let mut out: Vec<Check> = entries
        .par_iter()
        .map(|e| {
            check(format!("{} recurrence", e.name), || {
                let l = classify_map(&e.representative()?, K_MAX, P_MAX)?;
                let fitted = fit_recurrence(&l.degrees)?;
                let divides = l.charpoly.rem(&fitted)?.is_zero();
                let ds: Vec<Rat> = l.degrees.iter().map(|&d| Rat::int(d)).collect();
                let kills = annihilates(&l.charpoly, &ds);
                Ok((divides && kills, format!("fitted {fitted}, X = {}", l.charpoly)))
            })
        })
        .collect();
    let passing = out.iter().filter(|c| c.passed).count();
    out.push(Check { name: "at least 10 catalog cases".into(), passed: passing >= 10, detail: format!("{passing} cases") });
    out
}

pub const ARITH_CASES: usize = 1000;
pub const COMPOSE_CASES: usize = 200;
pub const PULLBACK_CASES: usize = 100;

fn small_rat(rng: &mut ChaCha8Rng) -> Rat {
    Rat::new(rng.gen_range(-30i64..=30), rng.gen_range(1i64..=12))
}

fn field_elem(rng: &mut ChaCha8Rng, k: &std::sync::Arc<NumberField>) -> FieldElem {
    let cs = (0..k.degree()).map(|_| small_rat(rng)).collect();
    FieldElem::from_coeffs(k, cs).expect("degree-many coefficients")
}

fn ring_laws<F: Field>(a: &F, b: &F, c: &F) -> bool {
    let assoc = a.add(b).add(c) == a.add(&b.add(c)) && a.mul(b).mul(c) == a.mul(&b.mul(c));
    let comm = a.add(b) == b.add(a) && a.mul(b) == b.mul(a);
    let dist = a.mul(&b.add(c)) == a.mul(b).add(&a.mul(c));
    let inv = a.is_zero() || a.mul(&a.inv().expect("nonzero")).is_one();
    assoc && comm && dist && inv && a.sub(a).is_zero()
}

/// A random family map with small rational parameters, α₁ ≠ 0.
fn random_map(rng: &mut ChaCha8Rng) -> Result<BiMap> {
    let k = q();
    let mut nz = || loop {
        let r = small_rat(rng);
        if !r.is_zero() {
            break r;
        }
    };
    let (a0, a1, c) = (nz(), nz(), nz());
    let e = |r: Rat| FieldElem::from_rat(&k, r);
    if a0 > a1 {
        make_family_a(&e(a0), &e(a1), &e(c))
    } else {
        make_family_b(&e(a0), &e(a1), &e(c))
    }
}

pub fn arith_laws(cases: usize, seed: u64) -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = NumberField::from_i64s(&[1, 0, 0, 1, 0, 0, 1])?;
    for i in 0..cases {
        let ok = if i % 2 == 0 {
            ring_laws(&small_rat(&mut rng), &small_rat(&mut rng), &small_rat(&mut rng))
        } else {
            ring_laws(&field_elem(&mut rng, &k), &field_elem(&mut rng, &k), &field_elem(&mut rng, &k))
        };
        if !ok {
            return Ok((false, format!("case {i}")));
        }
    }
    Ok((true, format!("{cases} cases over Q and Q[a]/(a^6+a^3+1)")))
}

pub fn compose_eval_consistency(cases: usize, seed: u64) -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut compared = 0;
    for i in 0..cases {
        let (f, g) = (random_map(&mut rng)?, random_map(&mut rng)?);
        let h = map_compose(&f, &g)?;
        let p = PPoint::from_ints(f.field(), [rng.gen_range(1..=50), rng.gen_range(-50..=50), rng.gen_range(-50..=50)])?;
        let Some(gp) = map_evaluate(&g, &p).point() else { continue };
        let Some(fgp) = map_evaluate(&f, &gp).point() else { continue };
        if let Some(hp) = map_evaluate(&h, &p).point() {
            if hp != fgp {
                return Ok((false, format!("case {i}: {hp} vs {fgp}")));
            }
            compared += 1;
        }
    }
    Ok((compared * 2 > cases, format!("{compared} of {cases} points compared")))
}

pub fn pullback_degree_law(cases: usize, seed: u64) -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..cases {
        let (f, g) = (random_map(&mut rng)?, random_map(&mut rng)?);
        let g = if i % 2 == 1 { map_compose(&g, &random_map(&mut rng)?)? } else { g };
        let c = compose_components(f.components(), g.components(), DEFAULT_TERM_CAP)?;
        if c.comps[0].degree() + c.cancelled.degree() != f.degree() * g.degree() {
            return Ok((false, format!("case {i}")));
        }
    }
    Ok((true, format!("{cases} cases")))
}

fn laws() -> Vec<Check> {
    vec![
        check("exact arithmetic laws", || arith_laws(ARITH_CASES, 1)),
        check("composition against evaluation", || compose_eval_consistency(COMPOSE_CASES, 2)),
        check("pullback degree law", || pullback_degree_law(PULLBACK_CASES, 3)),
    ]
}
