//! Invariant fibrations V = P/Q with V∘f = ψ(V), first integrals, invariant
//! curves and periodicity.

mod curves;
mod period;

pub use curves::{curve_pullback, search_invariant_curves, CurvePullback, CurveSearch, InvariantFamily, Unresolved};
pub use period::check_periodicity;

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::linalg::nullspace;
use crate::arith::{APoly, Field, FieldElem, HPoly, NumberField};
use crate::error::{Error, Result};
use crate::maps::BiMap;

/// A rational function P/Q in the affine coordinates x, y.
#[derive(Clone, Debug, PartialEq)]
pub struct Fibration {
    pub p: APoly<FieldElem>,
    pub q: APoly<FieldElem>,
}

impl Fibration {
    pub fn new(p: APoly<FieldElem>, q: APoly<FieldElem>) -> Result<Self> {
        if q.is_zero() {
            return Err(Error::validation("Q", "denominator is zero"));
        }
        if !p.is_zero() && !p.gcd(&q).is_constant() {
            return Err(Error::validation("P/Q", format!("common factor {}", p.gcd(&q))));
        }
        Ok(Fibration { p, q })
    }

    /// P/1.
    pub fn polynomial(p: APoly<FieldElem>) -> Self {
        let q = APoly::constant(FieldElem::one(p.ctx()));
        Fibration { p, q }
    }

    pub fn field(&self) -> &Arc<NumberField> {
        self.q.ctx()
    }

    pub fn degree(&self) -> u32 {
        self.p.total_degree().unwrap_or(0).max(self.q.total_degree().unwrap_or(0))
    }

    pub fn eval(&self, x: &FieldElem, y: &FieldElem) -> Option<FieldElem> {
        self.p.eval(x, y).div(&self.q.eval(x, y)).ok()
    }

    pub fn pow(&self, n: u32) -> Self {
        Fibration { p: self.p.pow(n), q: self.q.pow(n) }
    }

    /// Numerator and denominator homogenized to the common degree.
    fn forms(&self) -> (HPoly<FieldElem>, HPoly<FieldElem>) {
        let m = self.degree();
        (self.p.homogenize(m), self.q.homogenize(m))
    }

    /// (P∘F, Q∘F) homogeneously; their ratio is V∘f.
    fn pulled(&self, f: &BiMap) -> Result<(HPoly<FieldElem>, HPoly<FieldElem>)> {
        let (ph, qh) = self.forms();
        Ok((ph.subst(f.components())?, qh.subst(f.components())?))
    }
}

impl fmt::Display for Fibration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.p, self.q)
    }
}

/// ψ(t) = (ω₁t + ω₂)/(ω₃t + ω₄).
#[derive(Clone, Debug, PartialEq)]
pub struct Mobius {
    pub w: [FieldElem; 4],
}

impl Mobius {
    pub fn new(w: [FieldElem; 4]) -> Result<Self> {
        let m = Mobius { w };
        if m.det().is_zero() {
            return Err(Error::InvalidParameter(format!("{m} is degenerate")));
        }
        Ok(m)
    }

    pub fn identity(k: &Arc<NumberField>) -> Self {
        Mobius { w: [FieldElem::one(k), FieldElem::zero(k), FieldElem::zero(k), FieldElem::one(k)] }
    }

    /// t ↦ λt.
    pub fn scaling(l: FieldElem) -> Result<Self> {
        let k = l.field().clone();
        Mobius::new([l, FieldElem::zero(&k), FieldElem::zero(&k), FieldElem::one(&k)])
    }

    /// t ↦ λt + c.
    pub fn affine(l: FieldElem, c: FieldElem) -> Result<Self> {
        let k = l.field().clone();
        Mobius::new([l, c, FieldElem::zero(&k), FieldElem::one(&k)])
    }

    pub fn det(&self) -> FieldElem {
        self.w[0].mul(&self.w[3]).sub(&self.w[1].mul(&self.w[2]))
    }

    /// Scaled so that ω₄ = 1, or ω₃ = 1 when ω₄ = 0.
    pub fn normalized(&self) -> Self {
        let s = if !self.w[3].is_zero() { &self.w[3] } else { &self.w[2] };
        let inv = s.inv().expect("nondegenerate");
        Mobius { w: self.w.clone().map(|c| c.mul(&inv)) }
    }

    /// self ∘ other.
    pub fn compose(&self, o: &Mobius) -> Mobius {
        let [a, b, c, d] = &self.w;
        let [e, f, g, h] = &o.w;
        Mobius {
            w: [
                a.mul(e).add(&b.mul(g)),
                a.mul(f).add(&b.mul(h)),
                c.mul(e).add(&d.mul(g)),
                c.mul(f).add(&d.mul(h)),
            ],
        }
        .normalized()
    }

    pub fn pow(&self, n: usize) -> Mobius {
        let mut acc = Mobius::identity(self.w[0].field());
        for _ in 0..n {
            acc = self.compose(&acc);
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.w[1].is_zero() && self.w[2].is_zero() && self.w[0] == self.w[3]
    }

    /// λ when ψ(t) = λt.
    pub fn as_scaling(&self) -> Option<FieldElem> {
        if self.w[1].is_zero() && self.w[2].is_zero() {
            self.w[0].div(&self.w[3]).ok()
        } else {
            None
        }
    }

    pub fn apply(&self, t: &FieldElem) -> Option<FieldElem> {
        let num = self.w[0].mul(t).add(&self.w[1]);
        let den = self.w[2].mul(t).add(&self.w[3]);
        num.div(&den).ok()
    }

    /// Smallest n ≤ max with ψⁿ = id.
    pub fn order(&self, max: usize) -> Option<usize> {
        let mut acc = self.normalized();
        for n in 1..=max {
            if acc.is_identity() {
                return Some(n);
            }
            acc = self.compose(&acc);
        }
        None
    }
}

impl fmt::Display for Mobius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = &self.w;
        write!(f, "t -> ({a}*t + {b}) / ({c}*t + {d})")
    }
}

/// P(f)·(ω₃P + ω₄Q) = (ω₁P + ω₂Q)·Q(f), as a polynomial identity.
pub fn check_fibration(f: &BiMap, v: &Fibration, psi: &Mobius) -> Result<bool> {
    let (ph, qh) = v.forms();
    let (a, b) = v.pulled(f)?;
    let [w1, w2, w3, w4] = &psi.w;
    let lhs = a.mul(&ph.scale(w3).add(&qh.scale(w4)));
    let rhs = ph.scale(w1).add(&qh.scale(w2)).mul(&b);
    Ok(lhs == rhs)
}

/// The ψ with V∘f = ψ(V), from the linear system on (ω₁, …, ω₄).
pub fn find_mobius(f: &BiMap, v: &Fibration) -> Result<Option<Mobius>> {
    let (ph, qh) = v.forms();
    let (a, b) = v.pulled(f)?;
    let cols = [ph.mul(&b), qh.mul(&b), a.mul(&ph).neg(), a.mul(&qh).neg()];
    let mut mons: Vec<_> = cols.iter().flat_map(|c| c.terms().keys().copied()).collect();
    mons.sort();
    mons.dedup();
    let rows: Vec<Vec<FieldElem>> = mons.iter().map(|e| cols.iter().map(|c| c.coeff(e)).collect()).collect();
    let ns = nullspace(&rows, 4, f.field());
    match ns.len() {
        0 => Ok(None),
        1 => {
            let w: [FieldElem; 4] = ns[0].clone().try_into().expect("four unknowns");
            Ok(Mobius::new(w).ok().map(|m| m.normalized()))
        }
        n => Err(Error::DegenerateSolutionSpace(n)),
    }
}

/// W∘f = W exactly.
pub fn check_first_integral(f: &BiMap, w: &Fibration) -> Result<bool> {
    let (ph, qh) = w.forms();
    let (a, b) = w.pulled(f)?;
    Ok(a.mul(&qh) == ph.mul(&b))
}

/// A first integral from V∘f = ψ(V) with ψ of the given finite order: Vⁿ when
/// ψ is a scaling, otherwise ∏_{i<n} ψⁱ(V), which equals ∏ V∘fⁱ.
pub fn build_first_integral(f: &BiMap, v: &Fibration, psi: &Mobius, order: usize) -> Result<Fibration> {
    if order == 0 || !psi.pow(order).is_identity() {
        return Err(Error::NotFiniteOrder(psi.to_string()));
    }
    if !check_fibration(f, v, psi)? {
        return Err(Error::validation("fibration", format!("V∘f differs from {psi}(V)")));
    }
    let w = if psi.as_scaling().is_some() {
        v.pow(order as u32)
    } else {
        let k = v.field();
        let (mut num, mut den) = (APoly::constant(FieldElem::one(k)), APoly::constant(FieldElem::one(k)));
        let mut m = Mobius::identity(k);
        for _ in 0..order {
            let [a, b, c, d] = &m.w;
            num = num.mul(&v.p.scale(a).add(&v.q.scale(b)));
            den = den.mul(&v.p.scale(c).add(&v.q.scale(d)));
            m = psi.compose(&m);
        }
        let g = num.gcd(&den);
        Fibration::new(num.div_exact(&g)?, den.div_exact(&g)?)?
    };
    Ok(w)
}

fn jac_part(v: &Fibration, dx: bool) -> APoly<FieldElem> {
    let (dp, dq) = if dx { (v.p.dx(), v.q.dx()) } else { (v.p.dy(), v.q.dy()) };
    dp.mul(&v.q).sub(&v.p.mul(&dq))
}

/// Whether ∂(V₁, V₂)/∂(x, y) is not identically zero.
pub fn transversality_check(v1: &Fibration, v2: &Fibration) -> bool {
    let j = jac_part(v1, true).mul(&jac_part(v2, false)).sub(&jac_part(v1, false).mul(&jac_part(v2, true)));
    !j.is_zero()
}

/// Compares V(f(pt)) with ψ(V(pt)) at `samples` random rational points where
/// both sides are defined; returns how many points were compared.
pub fn pointwise_check(f: &BiMap, v: &Fibration, psi: &Mobius, samples: usize, seed: u64) -> Result<usize> {
    let k = f.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut done = 0;
    for _ in 0..samples * 20 {
        if done == samples {
            break;
        }
        let mut r = || {
            let n: i64 = rng.gen_range(-50..=50);
            let d: i64 = rng.gen_range(1..=9);
            FieldElem::from_i64(k, n).div(&FieldElem::from_i64(k, d)).unwrap()
        };
        let (x, y) = (r(), r());
        let Some((fx, fy)) = f.eval_affine(&x, &y) else { continue };
        let (Some(t), Some(s)) = (v.eval(&x, &y), v.eval(&fx, &fy)) else { continue };
        let Some(want) = psi.apply(&t) else { continue };
        if want != s {
            return Err(Error::validation("fibration", format!("fails at ({x}, {y})")));
        }
        done += 1;
    }
    Ok(done)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::{make_family_a, make_family_b};

    fn k() -> Arc<NumberField> {
        NumberField::rationals()
    }

    fn r(n: i64) -> FieldElem {
        FieldElem::from_i64(&k(), n)
    }

    pub(crate) fn apoly(terms: &[((u32, u32), i64)]) -> APoly<FieldElem> {
        APoly::from_terms(terms.iter().map(|&(m, c)| (m, r(c))), &k())
    }

    fn prop32_a1() -> (BiMap, Fibration, Fibration) {
        let f = make_family_a(&r(1), &r(1), &r(1)).unwrap();
        let v1 = Fibration::new(
            apoly(&[((0, 0), 1), ((1, 0), -2), ((0, 1), 3), ((0, 2), 2)]),
            apoly(&[((0, 0), 1), ((0, 1), 1)]),
        )
        .unwrap();
        let v2 = Fibration::new(
            apoly(&[((0, 0), 1), ((1, 0), 2), ((0, 1), 3), ((0, 2), 2)]),
            apoly(&[((0, 0), 2), ((0, 1), 2)]),
        )
        .unwrap();
        (f, v1, v2)
    }

    #[test]
    fn sign_flip_fibration() {
        let (f, v1, _) = prop32_a1();
        let neg = Mobius::scaling(r(-1)).unwrap();
        assert!(check_fibration(&f, &v1, &neg).unwrap());
        assert!(!check_fibration(&f, &v1, &Mobius::identity(&k())).unwrap());
        assert_eq!(find_mobius(&f, &v1).unwrap(), Some(neg.clone()));
        assert_eq!(pointwise_check(&f, &v1, &neg, 20, 7).unwrap(), 20);
    }

    #[test]
    fn translation_fibration() {
        let (f, v1, v2) = prop32_a1();
        assert_eq!(find_mobius(&f, &v2).unwrap(), Some(Mobius::affine(r(1), r(1)).unwrap()));
        assert!(transversality_check(&v1, &v2));
        assert!(!transversality_check(&v1, &v1));
        assert!(!transversality_check(&v1, &v1.pow(2)));
    }

    #[test]
    fn square_is_first_integral() {
        let (f, v1, v2) = prop32_a1();
        let neg = Mobius::scaling(r(-1)).unwrap();
        let w = build_first_integral(&f, &v1, &neg, 2).unwrap();
        assert_eq!(w, v1.pow(2));
        assert!(check_first_integral(&f, &w).unwrap());
        assert!(!check_first_integral(&f, &v1).unwrap());
        let shift = Mobius::affine(r(1), r(1)).unwrap();
        assert!(matches!(build_first_integral(&f, &v2, &shift, 6), Err(Error::NotFiniteOrder(_))));
        let c = Fibration::polynomial(apoly(&[((0, 0), 5)]));
        assert!(check_first_integral(&f, &c).unwrap());
        assert_eq!(build_first_integral(&f, &c, &Mobius::identity(&k()), 1).unwrap(), c);
    }

    #[test]
    fn family_b_coordinate() {
        let f = make_family_b(&r(3), &r(2), &r(1)).unwrap();
        let x = Fibration::polynomial(apoly(&[((1, 0), 1)]));
        assert_eq!(find_mobius(&f, &x).unwrap(), Some(Mobius::affine(r(2), r(3)).unwrap()));
    }

    #[test]
    fn orbit_product_integral() {
        // α₁ = −1: ψ(t) = −t + α₀ has order 2, W = x·(α₀ − x)
        let f = make_family_b(&r(3), &r(-1), &r(1)).unwrap();
        let x = Fibration::polynomial(apoly(&[((1, 0), 1)]));
        let psi = find_mobius(&f, &x).unwrap().unwrap();
        assert_eq!(psi.order(10), Some(2));
        let w = build_first_integral(&f, &x, &psi, 2).unwrap();
        assert!(check_first_integral(&f, &w).unwrap());
        assert_eq!(w.degree(), 2);
    }

    #[test]
    fn degenerate_system_reported() {
        let (f, ..) = prop32_a1();
        let c = Fibration::polynomial(apoly(&[((0, 0), 1)]));
        assert!(matches!(find_mobius(&f, &c), Err(Error::DegenerateSolutionSpace(_))));
    }

    #[test]
    fn common_factor_rejected() {
        let p = apoly(&[((1, 0), 1), ((2, 0), 1)]);
        let q = apoly(&[((1, 0), 1)]);
        assert!(Fibration::new(p, q).is_err());
    }
}
