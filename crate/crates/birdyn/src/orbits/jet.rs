//! Points of the blown-up plane as curve germs.
//!
//! A point is identified by its center and, when it lies on exceptional
//! fibers, by one direction per blow-up level. To apply the map, a germ
//! through the point is built with a random tail beyond the identifying
//! data; the image germ is read back into the same form. Two germs with
//! different tails must agree, otherwise the induced map is not defined at
//! the point to the precision used.

use std::fmt;

use rand::Rng;

use crate::arith::{Field, FieldElem, HPoly};
use crate::error::{Error, Result};
use crate::maps::PPoint;

use super::series::{self, Series};

pub const DEFAULT_ORDER: usize = 6;
pub const RAISED_ORDER: usize = 12;

/// A direction [u : v] in a chart, first nonzero entry scaled to 1.
#[derive(Clone, PartialEq, Eq)]
pub struct Dir<F: Field = FieldElem>(pub [F; 2]);

impl<F: Field> Dir<F> {
    pub fn new(u: F, v: F) -> Option<Self> {
        if !u.is_zero() {
            let s = u.inv().ok()?;
            Some(Dir([F::one(&u.ctx()), v.mul(&s)]))
        } else if !v.is_zero() {
            Some(Dir([u, F::one(&v.ctx())]))
        } else {
            None
        }
    }
}

impl<F: Field> fmt::Display for Dir<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} : {}]", self.0[0], self.0[1])
    }
}

impl<F: Field> fmt::Debug for Dir<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A point of P² (depth 0) or an infinitely near point (depth 1 or 2).
///
/// Directions are taken in the affine chart of the center where its first
/// nonzero coordinate is 1, with the remaining two coordinates in order.
/// At depth 2 the second direction lives in the chart of the first blow-up
/// that contains the first direction: coordinates (a, b/a − m) when the first
/// direction is [1 : m], and (b, a/b) when it is [0 : 1].
#[derive(Clone, PartialEq, Eq)]
pub struct JetPoint<F: Field = FieldElem> {
    pub center: PPoint<F>,
    pub dirs: Vec<Dir<F>>,
}

impl<F: Field> JetPoint<F> {
    pub fn point(center: PPoint<F>) -> Self {
        JetPoint { center, dirs: vec![] }
    }

    pub fn on_fiber(center: PPoint<F>, dir: Dir<F>) -> Self {
        JetPoint { center, dirs: vec![dir] }
    }

    pub fn depth(&self) -> usize {
        self.dirs.len()
    }

    /// The registered center this point lies over, if any (itself minus the last direction).
    pub fn base(&self) -> Option<JetPoint<F>> {
        if self.dirs.is_empty() {
            None
        } else {
            Some(JetPoint { center: self.center.clone(), dirs: self.dirs[..self.dirs.len() - 1].to_vec() })
        }
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> Result<G>) -> Result<JetPoint<G>> {
        let center = self.center.map(&f)?;
        let dirs = self
            .dirs
            .iter()
            .map(|d| Dir::new(f(&d.0[0])?, f(&d.0[1])?).ok_or(Error::ZeroInverse))
            .collect::<Result<Vec<_>>>()?;
        Ok(JetPoint { center, dirs })
    }
}

impl<F: Field> fmt::Display for JetPoint<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.center)?;
        for d in &self.dirs {
            write!(f, " {d}")?;
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for JetPoint<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Blown-up centers, in blow-up order, with labels.
#[derive(Clone, Debug, PartialEq)]
pub struct BlowupRegistry<F: Field = FieldElem> {
    entries: Vec<(String, JetPoint<F>)>,
}

impl<F: Field> Default for BlowupRegistry<F> {
    fn default() -> Self {
        BlowupRegistry { entries: vec![] }
    }
}

impl<F: Field> BlowupRegistry<F> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a center; duplicates and repeated labels are ignored.
    pub fn register(&mut self, label: impl Into<String>, p: JetPoint<F>) -> bool {
        let label = label.into();
        if self.entries.iter().any(|(l, q)| *q == p || *l == label) {
            return false;
        }
        self.entries.push((label, p));
        true
    }

    pub fn label_of(&self, p: &JetPoint<F>) -> Option<&str> {
        self.entries.iter().find(|(_, q)| q == p).map(|(l, _)| l.as_str())
    }

    pub fn contains(&self, p: &JetPoint<F>) -> bool {
        self.label_of(p).is_some()
    }

    pub fn entries(&self) -> &[(String, JetPoint<F>)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn try_map<G: Field>(&self, f: impl Fn(&F) -> Result<G>) -> Result<BlowupRegistry<G>> {
        let entries = self.entries.iter().map(|(l, p)| Ok((l.clone(), p.map(&f)?))).collect::<Result<Vec<_>>>()?;
        Ok(BlowupRegistry { entries })
    }
}

fn chart<F: Field>(p: &PPoint<F>) -> (usize, usize, usize) {
    let i = p.coords().iter().position(|c| !c.is_zero()).expect("nonzero point");
    let rest: Vec<usize> = (0..3).filter(|&j| j != i).collect();
    (i, rest[0], rest[1])
}

fn mono<F: Field>(c: &[(usize, F)], n: usize, ctx: &F::Ctx) -> Series<F> {
    let mut s = vec![F::zero(ctx); n];
    for (k, v) in c {
        if *k < n {
            s[*k] = s[*k].add(v);
        }
    }
    s
}

/// Projective germ through `p` with tail (g0, g1).
fn germ<F: Field>(p: &JetPoint<F>, g: [F; 2], n: usize) -> [Series<F>; 3] {
    let ctx = p.center.ctx();
    let (i, j1, j2) = chart(&p.center);
    let c = p.center.coords();
    let [g0, g1] = g;
    let (a, b) = match p.dirs.as_slice() {
        [] => (mono(&[(1, g0)], n, &ctx), mono(&[(1, g1)], n, &ctx)),
        [d] => (
            mono(&[(1, d.0[0].clone()), (2, g0)], n, &ctx),
            mono(&[(1, d.0[1].clone()), (2, g1)], n, &ctx),
        ),
        [d, e] => {
            let lead = mono(&[(1, e.0[0].clone()), (2, g0)], n, &ctx);
            if !d.0[0].is_zero() {
                let s = mono(&[(0, d.0[1].clone()), (1, e.0[1].clone()), (2, g1)], n, &ctx);
                let b = series::mul(&lead, &s, n, &ctx);
                (lead, b)
            } else {
                let r = mono(&[(1, e.0[1].clone()), (2, g1)], n, &ctx);
                let a = series::mul(&lead, &r, n, &ctx);
                (a, lead)
            }
        }
        _ => unreachable!("depth is at most 2"),
    };
    let mut x: [Series<F>; 3] = std::array::from_fn(|_| vec![F::zero(&ctx); n]);
    x[i][0] = F::one(&ctx);
    x[j1] = a;
    x[j1][0] = x[j1][0].add(&c[j1]);
    x[j2] = b;
    x[j2][0] = x[j2][0].add(&c[j2]);
    x
}

/// Leading direction of a local germ (a, b), with the common valuation.
fn lead_dir<F: Field>(a: &[F], b: &[F]) -> Option<(Dir<F>, usize)> {
    let va = series::valuation(a);
    let vb = series::valuation(b);
    let v = match (va, vb) {
        (None, None) => return None,
        (Some(x), None) => x,
        (None, Some(y)) => y,
        (Some(x), Some(y)) => x.min(y),
    };
    let ctx = a.first().or(b.first())?.ctx();
    let at = |s: &[F]| s.get(v).cloned().unwrap_or_else(|| F::zero(&ctx));
    Some((Dir::new(at(a), at(b))?, v))
}

/// Reads an image germ back into a point, consulting the registry for depth.
fn extract<F: Field>(y: &[Series<F>; 3], reg: &BlowupRegistry<F>) -> Result<JetPoint<F>> {
    let center = PPoint::new([y[0][0].clone(), y[1][0].clone(), y[2][0].clone()])?;
    let base = JetPoint::point(center.clone());
    if !reg.contains(&base) {
        return Ok(base);
    }
    let ctx = center.ctx();
    let (i, j1, j2) = chart(&center);
    let n = y[i].len();
    let yi = series::inv(&y[i], n, &ctx);
    let mut a = series::mul(&y[j1], &yi, n, &ctx);
    let mut b = series::mul(&y[j2], &yi, n, &ctx);
    a[0] = a[0].sub(&center.coords()[j1]);
    b[0] = b[0].sub(&center.coords()[j2]);
    let order = n;
    let (d1, _) = lead_dir(&a, &b).ok_or(Error::IndeterminateJet { order })?;
    let p1 = JetPoint::on_fiber(center.clone(), d1.clone());
    if !reg.contains(&p1) {
        return Ok(p1);
    }
    let (lead, rest) = if !d1.0[0].is_zero() {
        let mut s = series::div(&b, &a, &ctx);
        s[0] = s[0].sub(&d1.0[1]);
        (a, s)
    } else {
        let r = series::div(&a, &b, &ctx);
        (b, r)
    };
    let m = rest.len();
    let (d2, _) = lead_dir(&lead[..m.min(lead.len())], &rest).ok_or(Error::IndeterminateJet { order })?;
    let p2 = JetPoint { center, dirs: vec![d1, d2] };
    if reg.contains(&p2) {
        return Err(Error::TowerTooDeep(p2.to_string()));
    }
    Ok(p2)
}

/// One application of the induced map with a given tail.
fn eval_once<F: Field>(comps: &[HPoly<F>; 3], reg: &BlowupRegistry<F>, p: &JetPoint<F>, g: [F; 2]) -> Result<JetPoint<F>> {
    for n in [DEFAULT_ORDER + 1, RAISED_ORDER + 1] {
        let x = germ(p, g.clone(), n);
        let img: Vec<Series<F>> = comps.iter().map(|c| series::eval_form(c, &x, n)).collect();
        let Some(v) = img.iter().filter_map(|s| series::valuation(s)).min() else { continue };
        if n - v < 4 {
            continue;
        }
        let y: [Series<F>; 3] = std::array::from_fn(|i| img[i][v..].to_vec());
        return extract(&y, reg);
    }
    Err(Error::IndeterminateJet { order: RAISED_ORDER })
}

fn random_tail<F: Field, R: Rng>(ctx: &F::Ctx, rng: &mut R) -> [F; 2] {
    let mut r = || loop {
        let v: i64 = rng.gen_range(-(1 << 20)..(1 << 20));
        if v != 0 {
            return F::from_i64(ctx, v);
        }
    };
    [r(), r()]
}

/// The induced map at `p`, checked with two independent tails.
pub(crate) fn eval_jet<F: Field, R: Rng>(
    comps: &[HPoly<F>; 3],
    reg: &BlowupRegistry<F>,
    p: &JetPoint<F>,
    rng: &mut R,
) -> Result<JetPoint<F>> {
    let ctx = p.center.ctx();
    let a = eval_once(comps, reg, p, random_tail(&ctx, rng))?;
    let b = eval_once(comps, reg, p, random_tail(&ctx, rng))?;
    if a != b {
        return Err(Error::IndeterminateJet { order: DEFAULT_ORDER });
    }
    Ok(a)
}
