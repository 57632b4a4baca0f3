//! Birational maps of the projective plane and the two quadratic families.

mod compose;
mod degrees;
mod fixed;
mod locus;
mod normalize;

use std::fmt;
use std::sync::Arc;

use crate::arith::mgcd::gcd_many;
use crate::arith::{Field, FieldElem, HPoly, NumberField};
use crate::error::{Error, Result};

pub use compose::{compose_components, map_compose, map_compose_capped, map_evaluate, map_inverse, Composition, Evaluation, DEFAULT_TERM_CAP};
pub use degrees::{degree_sequence, degree_sequence_exact, degree_sequence_with, DegreeOptions};
pub use fixed::{fixed_points, period_two_points, FixedPoints};
pub use locus::{collapse_image, exceptional_locus, jacobian, line_points};
pub use normalize::{normalize_family_b, DiagonalAffine};

/// A point of the projective plane, kept in canonical form.
#[derive(Clone, PartialEq, Eq)]
pub struct PPoint<F: Field = FieldElem> {
    coords: [F; 3],
}

impl<F: Field> PPoint<F> {
    /// Scales the first nonzero coordinate to 1.
    pub fn new(coords: [F; 3]) -> Result<Self> {
        let Some(i) = coords.iter().position(|c| !c.is_zero()) else {
            return Err(Error::InvalidParameter("point with all coordinates zero".into()));
        };
        let s = coords[i].inv()?;
        Ok(PPoint { coords: [coords[0].mul(&s), coords[1].mul(&s), coords[2].mul(&s)] })
    }

    /// The point [1 : x : y].
    pub fn affine(x: F, y: F) -> Self {
        let one = F::one(&x.ctx());
        PPoint { coords: [one, x, y] }
    }

    pub fn coords(&self) -> &[F; 3] {
        &self.coords
    }

    pub fn ctx(&self) -> F::Ctx {
        self.coords[0].ctx()
    }

    /// (x, y) in the chart x0 = 1.
    pub fn affine_coords(&self) -> Option<(F, F)> {
        if self.coords[0].is_zero() {
            None
        } else {
            Some((self.coords[1].clone(), self.coords[2].clone()))
        }
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> Result<G>) -> Result<PPoint<G>> {
        PPoint::new([f(&self.coords[0])?, f(&self.coords[1])?, f(&self.coords[2])?])
    }
}

impl PPoint {
    pub fn from_ints(field: &Arc<NumberField>, c: [i64; 3]) -> Result<Self> {
        PPoint::new(c.map(|v| FieldElem::from_i64(field, v)))
    }
}

impl<F: Field> fmt::Display for PPoint<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} : {} : {}]", self.coords[0], self.coords[1], self.coords[2])
    }
}

impl<F: Field> fmt::Debug for PPoint<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Which normal form a map was built from.
#[derive(Clone, Debug, PartialEq)]
pub enum Family {
    /// f(x, y) = (α0 + α1 x + y, x / (γ0 + y))
    A { alpha0: FieldElem, alpha1: FieldElem, gamma0: FieldElem },
    /// f(x, y) = (α0 + α1 x, (x + β2 y) / y)
    B { alpha0: FieldElem, alpha1: FieldElem, beta2: FieldElem },
    Raw,
}

/// A birational map of P² given by three homogeneous components without common factor.
///
/// For the families the loci are stored in matching order: the exceptional
/// curve `exceptional[i]` collapses to `images[i]`, and `indeterminacy[i]` is O_i.
#[derive(Clone, Debug)]
pub struct BiMap {
    comps: [HPoly<FieldElem>; 3],
    field: Arc<NumberField>,
    family: Family,
    inverse: Option<[HPoly<FieldElem>; 3]>,
    indeterminacy: Option<Vec<PPoint>>,
    exceptional: Option<Vec<HPoly<FieldElem>>>,
    images: Option<Vec<PPoint>>,
}

fn lin(field: &Arc<NumberField>, c: [&FieldElem; 3]) -> HPoly<FieldElem> {
    HPoly::from_terms(
        [([1, 0, 0], c[0].clone()), ([0, 1, 0], c[1].clone()), ([0, 0, 1], c[2].clone())],
        1,
        field,
    )
    .expect("linear terms")
}

impl BiMap {
    /// A map from its components; the optional inverse and indeterminacy points are checked.
    pub fn raw(
        field: &Arc<NumberField>,
        comps: [HPoly<FieldElem>; 3],
        inverse: Option<[HPoly<FieldElem>; 3]>,
        indeterminacy: Option<Vec<PPoint>>,
    ) -> Result<Self> {
        check_components(&comps)?;
        if let Some(inv) = &inverse {
            check_components(inv)?;
            let c = compose_components(&comps, inv, DEFAULT_TERM_CAP)?;
            if !is_identity(&c.comps) {
                return Err(Error::validation("inverse", "composition with the map is not the identity"));
            }
        }
        if let Some(pts) = &indeterminacy {
            for p in pts {
                if comps.iter().any(|c| !c.eval(p.coords()).is_zero()) {
                    return Err(Error::validation("indeterminacy", format!("{p} is not a common zero of the components")));
                }
            }
        }
        Ok(BiMap {
            comps,
            field: field.clone(),
            family: Family::Raw,
            inverse,
            indeterminacy,
            exceptional: None,
            images: None,
        })
    }

    /// Components assumed reduced; used internally after composition.
    pub(crate) fn from_reduced(field: &Arc<NumberField>, comps: [HPoly<FieldElem>; 3]) -> Self {
        BiMap {
            comps,
            field: field.clone(),
            family: Family::Raw,
            inverse: None,
            indeterminacy: None,
            exceptional: None,
            images: None,
        }
    }

    pub fn identity(field: &Arc<NumberField>) -> Self {
        let comps = [0, 1, 2].map(|i| HPoly::var(i, field));
        BiMap {
            inverse: Some(comps.clone()),
            indeterminacy: Some(vec![]),
            exceptional: Some(vec![]),
            images: Some(vec![]),
            ..BiMap::from_reduced(field, comps)
        }
    }

    /// The standard involution J = [x1x2 : x0x2 : x0x1].
    pub fn involution(field: &Arc<NumberField>) -> Self {
        let one = FieldElem::one(field);
        let m = |e| HPoly::monomial(e, one.clone());
        let comps = [m([0, 1, 1]), m([1, 0, 1]), m([1, 1, 0])];
        let pts = vec![
            PPoint::from_ints(field, [1, 0, 0]).unwrap(),
            PPoint::from_ints(field, [0, 1, 0]).unwrap(),
            PPoint::from_ints(field, [0, 0, 1]).unwrap(),
        ];
        BiMap {
            inverse: Some(comps.clone()),
            indeterminacy: Some(pts.clone()),
            exceptional: Some((0..3).map(|i| HPoly::var(i, field)).collect()),
            images: Some(pts),
            ..BiMap::from_reduced(field, comps)
        }
    }

    pub fn components(&self) -> &[HPoly<FieldElem>; 3] {
        &self.comps
    }

    pub fn degree(&self) -> u32 {
        self.comps[0].degree()
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn inverse_components(&self) -> Option<&[HPoly<FieldElem>; 3]> {
        self.inverse.as_ref()
    }

    /// O_0, O_1, O_2 for the families; whatever was declared for raw maps.
    pub fn indeterminacy(&self) -> Option<&[PPoint]> {
        self.indeterminacy.as_deref()
    }

    /// S_0, S_1, S_2 for the families.
    pub fn exceptional(&self) -> Option<&[HPoly<FieldElem>]> {
        self.exceptional.as_deref()
    }

    /// A_0, A_1, A_2: the points the exceptional curves collapse to.
    pub fn collapse_points(&self) -> Option<&[PPoint]> {
        self.images.as_deref()
    }

    pub fn is_identity(&self) -> bool {
        is_identity(&self.comps)
    }

    /// Affine evaluation (x, y) ↦ f(x, y); `None` when the image is at infinity or undefined.
    pub fn eval_affine(&self, x: &FieldElem, y: &FieldElem) -> Option<(FieldElem, FieldElem)> {
        let p = [FieldElem::one(&self.field), x.clone(), y.clone()];
        let v = self.comps.clone().map(|c| c.eval(&p));
        if v[0].is_zero() {
            return None;
        }
        let s = v[0].inv().ok()?;
        Some((v[1].mul(&s), v[2].mul(&s)))
    }
}

fn check_components(comps: &[HPoly<FieldElem>; 3]) -> Result<()> {
    let d = comps[0].degree();
    if comps.iter().any(|c| c.degree() != d) {
        return Err(Error::DegreeMismatch("map components of different degrees".into()));
    }
    if comps.iter().all(|c| c.is_zero()) {
        return Err(Error::validation("components", "all components are zero"));
    }
    let g = gcd_many(comps);
    if g.degree() > 0 {
        return Err(Error::validation("components", format!("common factor {g}")));
    }
    Ok(())
}

/// [x0 : x1 : x2] up to a scalar.
pub(crate) fn is_identity<F: Field>(c: &[HPoly<F>; 3]) -> bool {
    if c[0].degree() != 1 {
        return false;
    }
    let ctx = c[0].ctx();
    let Some(s) = c[0].proportional_to(&HPoly::var(0, ctx)) else { return false };
    (1..3).all(|i| c[i].proportional_to(&HPoly::var(i, ctx)).as_ref() == Some(&s))
}

fn nonzero(a: &FieldElem, name: &str) -> Result<()> {
    if a.is_zero() {
        Err(Error::InvalidParameter(format!("{name} must be nonzero")))
    } else {
        Ok(())
    }
}

/// f(x, y) = (α0 + α1 x + y, x / (γ0 + y)) as
/// [x0(γ0x0+x2) : (α0x0+α1x1+x2)(γ0x0+x2) : x0x1].
pub fn make_family_a(alpha0: &FieldElem, alpha1: &FieldElem, gamma0: &FieldElem) -> Result<BiMap> {
    nonzero(alpha1, "alpha1")?;
    let k = alpha1.field().clone();
    let (a0, a1, g0) = (alpha0, alpha1, gamma0);
    let zero = FieldElem::zero(&k);
    let one = FieldElem::one(&k);
    let x = |i| HPoly::var(i, &k);
    let s1 = lin(&k, [g0, &zero, &one]);
    let comps = [x(0).mul(&s1), lin(&k, [a0, a1, &one]).mul(&s1), x(0).mul(&x(1))];
    // G = [x0(x0+α1x2) : x2((γ0−α0)x0+x1) : x0(x1−α0x0−α1γ0x2)]
    let inverse = [
        x(0).mul(&lin(&k, [&one, &zero, a1])),
        x(2).mul(&lin(&k, [&g0.sub(a0), &one, &zero])),
        x(0).mul(&lin(&k, [&a0.neg(), &one, &a1.mul(g0).neg()])),
    ];
    let p = |c: [FieldElem; 3]| PPoint::new(c).expect("nonzero point");
    let indeterminacy = vec![
        p([one.clone(), zero.clone(), g0.neg()]),
        p([zero.clone(), one.clone(), a1.neg()]),
        p([zero.clone(), one.clone(), zero.clone()]),
    ];
    let exceptional = vec![x(0), s1.clone(), lin(&k, [g0, a1, &one])];
    let images = vec![
        p([zero.clone(), one.clone(), zero.clone()]),
        p([zero.clone(), zero.clone(), one.clone()]),
        p([a1.neg(), a1.mul(&a0.sub(g0)).neg(), one.clone()]),
    ];
    Ok(BiMap {
        comps,
        field: k.clone(),
        family: Family::A { alpha0: a0.clone(), alpha1: a1.clone(), gamma0: g0.clone() },
        inverse: Some(inverse),
        indeterminacy: Some(indeterminacy),
        exceptional: Some(exceptional),
        images: Some(images),
    })
}

/// f(x, y) = (α0 + α1 x, (x + β2 y) / y) as [x0x2 : (α0x0+α1x1)x2 : x0(x1+β2x2)].
pub fn make_family_b(alpha0: &FieldElem, alpha1: &FieldElem, beta2: &FieldElem) -> Result<BiMap> {
    nonzero(alpha1, "alpha1")?;
    let k = alpha1.field().clone();
    let (a0, a1, b2) = (alpha0, alpha1, beta2);
    let zero = FieldElem::zero(&k);
    let one = FieldElem::one(&k);
    let x = |i| HPoly::var(i, &k);
    let comps = [
        x(0).mul(&x(2)),
        lin(&k, [a0, a1, &zero]).mul(&x(2)),
        x(0).mul(&lin(&k, [&zero, &one, b2])),
    ];
    // [α1x0(x2−β2x0) : (x1−α0x0)(x2−β2x0) : x0(x1−α0x0)]
    let t = lin(&k, [&b2.neg(), &zero, &one]);
    let u = lin(&k, [&a0.neg(), &one, &zero]);
    let inverse = [x(0).mul(&t).scale(a1), u.mul(&t), x(0).mul(&u)];
    let p = |c: [FieldElem; 3]| PPoint::new(c).expect("nonzero point");
    let e0 = p([one.clone(), zero.clone(), zero.clone()]);
    let e1 = p([zero.clone(), zero.clone(), one.clone()]);
    let e2 = p([zero.clone(), one.clone(), zero.clone()]);
    Ok(BiMap {
        comps,
        field: k.clone(),
        family: Family::B { alpha0: a0.clone(), alpha1: a1.clone(), beta2: b2.clone() },
        inverse: Some(inverse),
        indeterminacy: Some(vec![e0, e1.clone(), e2.clone()]),
        exceptional: Some(vec![x(0), x(2), x(1)]),
        images: Some(vec![e2, e1, p([one.clone(), a0.clone(), b2.clone()])]),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> FieldElem {
        FieldElem::from_i64(&NumberField::rationals(), n)
    }

    #[test]
    fn family_a_components_and_loci() {
        let f = make_family_a(&q(1), &q(2), &q(3)).unwrap();
        let k = f.field().clone();
        assert_eq!(f.degree(), 2);
        assert_eq!(f.indeterminacy().unwrap()[0], PPoint::from_ints(&k, [1, 0, -3]).unwrap());
        for p in f.indeterminacy().unwrap() {
            assert!(f.components().iter().all(|c| c.eval(p.coords()).is_zero()), "{p}");
        }
        let g = f.inverse_components().unwrap();
        for a in f.collapse_points().unwrap() {
            assert!(g.iter().all(|c| c.eval(a.coords()).is_zero()), "{a}");
        }
        assert_eq!(f.collapse_points().unwrap()[2], PPoint::from_ints(&k, [-2, 4, 1]).unwrap());
    }

    #[test]
    fn family_a_affine_form() {
        let f = make_family_a(&q(1), &q(1), &q(1)).unwrap();
        assert_eq!(f.eval_affine(&q(0), &q(0)), Some((q(1), q(0))));
        assert_eq!(f.eval_affine(&q(2), &q(3)), Some((q(6), FieldElem::parse(f.field(), "1/2").unwrap())));
    }

    #[test]
    fn raw_map_rejects_common_factor() {
        let k = NumberField::rationals();
        let x0 = HPoly::var(0, &k);
        let comps = [x0.mul(&x0), x0.mul(&HPoly::var(1, &k)), x0.mul(&HPoly::var(2, &k))];
        assert!(BiMap::raw(&k, comps, None, None).is_err());
    }

    #[test]
    fn alpha1_zero_rejected() {
        assert!(matches!(make_family_a(&q(1), &q(0), &q(1)), Err(Error::InvalidParameter(_))));
        assert!(matches!(make_family_b(&q(1), &q(0), &q(1)), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn point_canonical_form() {
        let k = NumberField::rationals();
        let a = PPoint::from_ints(&k, [0, 2, -4]).unwrap();
        assert_eq!(a, PPoint::from_ints(&k, [0, 1, -2]).unwrap());
        assert!(PPoint::from_ints(&k, [0, 0, 0]).is_err());
    }
}
