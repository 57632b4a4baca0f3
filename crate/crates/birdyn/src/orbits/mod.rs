//! Orbits of A_0, A_1, A_2 under the map induced on blow-ups of the plane.

mod jet;
mod series;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arith::roots::embedding_prime;
use crate::arith::{Field, FieldElem, Fp, HPoly};
use crate::error::{Error, Result};
use crate::maps::{BiMap, PPoint};

pub use jet::{BlowupRegistry, Dir, JetPoint, DEFAULT_ORDER, RAISED_ORDER};

pub const DEFAULT_MAX_STEPS: usize = 64;

/// Bits of coefficient height after which iteration continues modulo a prime.
pub const HEIGHT_BUDGET: u64 = 4096;

const JET_SEED: u64 = 0x0b17_5eed;

#[derive(Clone, Debug, PartialEq)]
pub enum Terminal {
    /// The orbit hit O_index; `modular` when detected after switching to a prime field.
    Reached { index: usize, modular: bool },
    Truncated,
    /// The induced map could not be evaluated (indeterminate jet or a deeper tower).
    Undetermined(String),
}

#[derive(Clone, Debug)]
pub struct OrbitRecord {
    /// Which A_i the orbit starts from.
    pub start: usize,
    /// Exactly computed points, starting with A_i.
    pub points: Vec<JetPoint>,
    /// Points computed after the height budget was exceeded, modulo `prime`.
    pub modular_points: Vec<JetPoint<Fp>>,
    pub prime: Option<u64>,
    pub terminal: Terminal,
}

impl OrbitRecord {
    /// Number of points, including A_i and the endpoint.
    pub fn len(&self) -> usize {
        self.points.len() + self.modular_points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn exact_steps(&self) -> usize {
        self.points.len()
    }

    /// Terminal indeterminacy index when the orbit is singular elementary.
    pub fn end(&self) -> Option<usize> {
        match self.terminal {
            Terminal::Reached { index, .. } => Some(index),
            _ => None,
        }
    }

    pub fn is_se(&self) -> bool {
        self.end().is_some()
    }
}

fn family_data(f: &BiMap) -> Result<(&[PPoint], &[PPoint])> {
    match (f.indeterminacy(), f.collapse_points()) {
        (Some(o), Some(a)) if o.len() == 3 && a.len() == 3 => Ok((o, a)),
        _ => Err(Error::InvalidParameter("orbit tracking needs the three points O_i and A_i".into())),
    }
}

/// The induced map at one point, relative to the given blow-ups.
pub fn jet_evaluate(f: &BiMap, p: &JetPoint, reg: &BlowupRegistry) -> Result<JetPoint> {
    if p.depth() > 2 {
        return Err(Error::TowerTooDeep(p.to_string()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(JET_SEED);
    jet::eval_jet(f.components(), reg, p, &mut rng)
}

/// Image of a point on a collapsed curve S_i when A_i is blown up: the direction
/// of F − A_i after dividing out the exact power of S_i.
pub fn fiber_direction_image(f: &BiMap, p: &JetPoint, reg: &BlowupRegistry) -> Result<JetPoint> {
    if p.depth() != 0 {
        return Err(Error::NotOnCollapsedCurve);
    }
    let (_, apts) = family_data(f)?;
    let Some(curves) = f.exceptional() else { return Err(Error::NotOnCollapsedCurve) };
    let c = f.components();
    for (s, a) in curves.iter().zip(apts) {
        if !s.eval(p.center.coords()).is_zero() || !reg.contains(&JetPoint::point(a.clone())) {
            continue;
        }
        let i = a.coords().iter().position(|v| !v.is_zero()).expect("nonzero point");
        let others: Vec<usize> = (0..3).filter(|&j| j != i).collect();
        let rel = |j: usize| c[j].sub(&c[i].scale(&a.coords()[j]));
        let (mut u, mut v) = (rel(others[0]), rel(others[1]));
        while !u.is_zero() && !v.is_zero() && s.divides(&u) && s.divides(&v) {
            u = u.div_exact(s)?;
            v = v.div_exact(s)?;
        }
        // one of them may still be divisible: it then vanishes to higher order
        let val = |h: &HPoly<FieldElem>| if h.is_zero() { FieldElem::zero(f.field()) } else { h.eval(p.center.coords()) };
        let d = Dir::new(val(&u), val(&v)).ok_or(Error::IndeterminateJet { order: 0 })?;
        let img = JetPoint::on_fiber(a.clone(), d);
        if reg.contains(&img) {
            return Err(Error::TowerTooDeep(img.to_string()));
        }
        return Ok(img);
    }
    Err(Error::NotOnCollapsedCurve)
}

fn height(p: &JetPoint) -> u64 {
    let mut h: u64 = p.center.coords().iter().map(|c| c.height_bits()).sum();
    for d in &p.dirs {
        h += d.0.iter().map(|c| c.height_bits()).sum::<u64>();
    }
    h
}

enum Run<F: Field> {
    Done(Vec<JetPoint<F>>, Terminal),
    /// Height budget exceeded; the last point is where to resume.
    Budget(Vec<JetPoint<F>>),
}

fn run<F: Field>(
    comps: &[HPoly<F>; 3],
    reg: &BlowupRegistry<F>,
    opts: &[PPoint<F>],
    start: JetPoint<F>,
    steps: usize,
    too_high: impl Fn(&JetPoint<F>) -> bool,
    modular: bool,
    rng: &mut ChaCha8Rng,
) -> Run<F> {
    let mut pts = vec![start];
    for step in 0..=steps {
        let cur = pts.last().unwrap().clone();
        if cur.depth() == 0 && !reg.contains(&cur) {
            if let Some(j) = opts.iter().position(|o| *o == cur.center) {
                return Run::Done(pts, Terminal::Reached { index: j, modular });
            }
        }
        if step == steps {
            break;
        }
        if too_high(&cur) {
            return Run::Budget(pts);
        }
        match jet::eval_jet(comps, reg, &cur, rng) {
            Ok(next) => pts.push(next),
            Err(e) => return Run::Done(pts, Terminal::Undetermined(e.to_string())),
        }
    }
    Run::Done(pts, Terminal::Truncated)
}

/// Tracks the orbit of A_start relative to the given blow-ups.
pub fn track_orbit_in(f: &BiMap, start: usize, reg: &BlowupRegistry, max_steps: usize) -> Result<OrbitRecord> {
    let (opts, apts) = family_data(f)?;
    if start > 2 {
        return Err(Error::InvalidParameter(format!("no point A_{start}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(JET_SEED ^ start as u64);
    let first = JetPoint::point(apts[start].clone());
    let r = run(f.components(), reg, opts, first, max_steps, |p| height(p) > HEIGHT_BUDGET, false, &mut rng);
    let mut points = match r {
        Run::Done(points, terminal) => {
            return Ok(OrbitRecord { start, points, modular_points: vec![], prime: None, terminal });
        }
        Run::Budget(points) => points,
    };
    let resume = points.pop().expect("nonempty orbit");
    let remaining = max_steps + 1 - points.len() - 1;
    for _ in 0..16 {
        let (p, root) = embedding_prime(f.field(), &mut rng, 62);
        let emb = |c: &FieldElem| c.embed(root);
        let mapped = (|| -> Result<_> {
            let comps: Vec<HPoly<Fp>> = f.components().iter().map(|c| c.try_map(&p, emb)).collect::<Result<_>>()?;
            let comps: [HPoly<Fp>; 3] = comps.try_into().expect("three components");
            let reg = reg.try_map(emb)?;
            let opts = opts.iter().map(|o| o.map(emb)).collect::<Result<Vec<_>>>()?;
            Ok((comps, reg, opts, resume.map(emb)?))
        })();
        let Ok((comps, mreg, mopts, mstart)) = mapped else { continue };
        if comps.iter().any(|c| c.degree() != f.degree() || c.is_zero()) {
            continue;
        }
        let Run::Done(mpts, terminal) = run(&comps, &mreg, &mopts, mstart, remaining, |_| false, true, &mut rng) else {
            unreachable!("no budget in modular runs")
        };
        return Ok(OrbitRecord { start, points, modular_points: mpts, prime: Some(p), terminal });
    }
    Err(Error::NoPrime("no prime embeds the orbit data".into()))
}

/// Per-start summary of the singular elementary orbits.
#[derive(Clone, Debug, PartialEq)]
pub struct SeEntry {
    pub start: usize,
    pub se: bool,
    pub length: usize,
    pub end: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct SeProfile {
    pub orbits: Vec<OrbitRecord>,
    pub registry: BlowupRegistry,
}

impl SeProfile {
    pub fn entries(&self) -> Vec<SeEntry> {
        self.orbits
            .iter()
            .map(|o| SeEntry { start: o.start, se: o.is_se(), length: o.len(), end: o.end() })
            .collect()
    }

    pub fn orbit(&self, start: usize) -> &OrbitRecord {
        &self.orbits[start]
    }
}

const LABELS: [&str; 3] = ["E", "G", "H"];

/// Tracks A_0, A_1, A_2 in turn, blowing up each singular elementary orbit
/// (all of its points) before tracking the next one.
pub fn se_profile(f: &BiMap, max_steps: usize) -> Result<SeProfile> {
    se_profile_upto(f, 2, max_steps)
}

fn se_profile_upto(f: &BiMap, last: usize, max_steps: usize) -> Result<SeProfile> {
    let mut reg = BlowupRegistry::new();
    let mut orbits = Vec::new();
    for i in 0..=last {
        let rec = track_orbit_in(f, i, &reg, max_steps)?;
        if rec.is_se() {
            for (n, p) in rec.points.iter().enumerate() {
                reg.register(format!("{}{n}", LABELS[i]), p.clone());
            }
        }
        orbits.push(rec);
    }
    Ok(SeProfile { orbits, registry: reg })
}

/// The orbit of A_start with the blow-ups of the earlier singular elementary orbits.
pub fn track_orbit(f: &BiMap, start: usize, max_steps: usize) -> Result<OrbitRecord> {
    if start > 2 {
        return Err(Error::InvalidParameter(format!("no point A_{start}")));
    }
    let mut prof = se_profile_upto(f, start, max_steps)?;
    Ok(prof.orbits.swap_remove(start))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::NumberField;
    use crate::maps::{make_family_a, make_family_b};

    fn r(s: &str) -> FieldElem {
        FieldElem::parse(&NumberField::rationals(), s).unwrap()
    }

    fn pt(f: &BiMap, c: [&str; 3]) -> PPoint {
        PPoint::new(c.map(|s| FieldElem::parse(f.field(), s).unwrap())).unwrap()
    }

    fn e0(f: &BiMap) -> BlowupRegistry {
        let mut reg = BlowupRegistry::new();
        reg.register("E0", JetPoint::point(f.collapse_points().unwrap()[0].clone()));
        reg
    }

    #[test]
    fn a1_lands_on_e0_and_returns() {
        let f = make_family_a(&r("1"), &r("2"), &r("3")).unwrap();
        let reg = e0(&f);
        let a1 = JetPoint::point(f.collapse_points().unwrap()[1].clone());
        let img = jet_evaluate(&f, &a1, &reg).unwrap();
        let want = JetPoint::on_fiber(pt(&f, ["0", "1", "0"]), Dir::new(r("1"), r("0")).unwrap());
        assert_eq!(img, want);
        assert_eq!(fiber_direction_image(&f, &a1, &reg).unwrap(), want);
        let back = jet_evaluate(&f, &img, &reg).unwrap();
        // [0 : α1γ0 : 1]
        assert_eq!(back, JetPoint::point(pt(&f, ["0", "6", "1"])));
    }

    #[test]
    fn generic_profile() {
        let f = make_family_a(&r("1"), &r("2"), &r("3")).unwrap();
        let prof = se_profile(&f, 64).unwrap();
        let e = prof.entries();
        assert!(e[0].se && e[0].length == 1 && e[0].end == Some(2));
        assert!(!e[1].se);
        assert!(!e[2].se);
        assert_eq!(prof.orbit(2).terminal, Terminal::Truncated);
        assert!(prof.orbit(2).prime.is_some());
    }

    #[test]
    fn a2_equals_o0() {
        let f = make_family_a(&r("1/2"), &r("2"), &r("1/2")).unwrap();
        let o = track_orbit(&f, 2, 64).unwrap();
        assert_eq!(o.end(), Some(0));
        assert_eq!(o.len(), 1);
    }

    #[test]
    fn a2_reaches_o0_in_one_step() {
        let f = make_family_a(&r("7/18"), &r("2"), &r("1/3")).unwrap();
        let o = track_orbit(&f, 2, 64).unwrap();
        assert_eq!(o.end(), Some(0));
        assert_eq!(o.len(), 2);
    }

    #[test]
    fn condition_one_closes_a1_orbit() {
        let f = make_family_a(&r("5"), &r("2"), &r("-1/4")).unwrap();
        let o = track_orbit(&f, 1, 64).unwrap();
        assert_eq!(o.end(), Some(1));
        assert_eq!(o.len(), 3);
        let depths: Vec<usize> = o.points.iter().map(|p| p.depth()).collect();
        assert_eq!(depths, vec![0, 1, 0]);
    }

    #[test]
    fn family_b_profile() {
        let f = make_family_b(&r("1"), &r("1"), &r("1")).unwrap();
        let e = se_profile(&f, 64).unwrap().entries();
        assert_eq!((e[0].se, e[0].length, e[0].end), (true, 1, Some(2)));
        assert_eq!((e[1].se, e[1].length, e[1].end), (true, 1, Some(1)));
        assert!(!e[2].se);
    }

    #[test]
    fn family_b_periodic_start() {
        // f(α0, β2) = (0, 0) for α1 = −1, α0 = −β2²
        let f = make_family_b(&r("-1"), &r("-1"), &r("1")).unwrap();
        let o = track_orbit(&f, 2, 64).unwrap();
        assert_eq!((o.end(), o.len()), (Some(0), 2));
    }
}
