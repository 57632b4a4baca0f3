use crate::arith::mgcd::gcd_many;
use crate::arith::{Field, FieldElem, HPoly};
use crate::error::{Error, Result};

use super::{BiMap, PPoint};

/// Default cap on the number of terms of any intermediate polynomial.
pub const DEFAULT_TERM_CAP: usize = 200_000;

#[derive(Clone, Debug)]
pub struct Composition<F: Field> {
    pub comps: [HPoly<F>; 3],
    /// The common factor removed from the raw substitution.
    pub cancelled: HPoly<F>,
}

/// f∘g on components, with the common factor cancelled.
pub fn compose_components<F: Field>(f: &[HPoly<F>; 3], g: &[HPoly<F>; 3], cap: usize) -> Result<Composition<F>> {
    let mut raw = Vec::with_capacity(3);
    for c in f {
        let h = c.subst(g)?;
        if h.len() > cap {
            return Err(Error::ResourceLimit { what: "terms in a composed component".into(), size: h.len(), cap });
        }
        raw.push(h);
    }
    let raw: [HPoly<F>; 3] = raw.try_into().expect("three components");
    let g = gcd_many(&raw);
    let comps = if g.degree() == 0 {
        raw
    } else {
        let mut out = Vec::with_capacity(3);
        for h in &raw {
            out.push(h.div_exact(&g)?);
        }
        out.try_into().expect("three components")
    };
    Ok(Composition { comps, cancelled: g })
}

/// f∘g with the default term cap.
pub fn map_compose(f: &BiMap, g: &BiMap) -> Result<BiMap> {
    map_compose_capped(f, g, DEFAULT_TERM_CAP)
}

pub fn map_compose_capped(f: &BiMap, g: &BiMap, cap: usize) -> Result<BiMap> {
    let c = compose_components(f.components(), g.components(), cap)?;
    Ok(BiMap::from_reduced(f.field(), c.comps))
}

/// Result of evaluating a map at a point.
#[derive(Clone, Debug, PartialEq)]
pub enum Evaluation<F: Field = FieldElem> {
    Point(PPoint<F>),
    Indeterminate,
}

impl<F: Field> Evaluation<F> {
    pub fn point(self) -> Option<PPoint<F>> {
        match self {
            Evaluation::Point(p) => Some(p),
            Evaluation::Indeterminate => None,
        }
    }
}

pub fn map_evaluate(f: &BiMap, p: &PPoint) -> Evaluation {
    eval_components(f.components(), p)
}

pub(crate) fn eval_components<F: Field>(comps: &[HPoly<F>; 3], p: &PPoint<F>) -> Evaluation<F> {
    let v = [comps[0].eval(p.coords()), comps[1].eval(p.coords()), comps[2].eval(p.coords())];
    match PPoint::new(v) {
        Ok(q) => Evaluation::Point(q),
        Err(_) => Evaluation::Indeterminate,
    }
}

/// The stored inverse as a map; its loci are the map's loci with roles swapped.
pub fn map_inverse(f: &BiMap) -> Result<BiMap> {
    let inv = f.inverse_components().ok_or(Error::NoInverseAvailable)?;
    let mut g = BiMap::from_reduced(f.field(), inv.clone());
    g.inverse = Some(f.components().clone());
    g.indeterminacy = f.images.clone();
    g.images = f.indeterminacy.clone();
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::NumberField;
    use crate::maps::make_family_a;

    fn q(n: i64) -> FieldElem {
        FieldElem::from_i64(&NumberField::rationals(), n)
    }

    #[test]
    fn family_a_square_cancels_a_line() {
        let f = make_family_a(&q(1), &q(2), &q(3)).unwrap();
        let c = compose_components(f.components(), f.components(), DEFAULT_TERM_CAP).unwrap();
        assert_eq!(c.comps[0].degree(), 3);
        // S0 = {x0 = 0} collapses onto O2, so x0 is what cancels
        assert!(c.cancelled.proportional_to(&HPoly::var(0, f.field())).is_some(), "{}", c.cancelled);
    }

    #[test]
    fn involution_squares_to_identity() {
        let k = NumberField::rationals();
        let j = BiMap::involution(&k);
        assert!(map_compose(&j, &j).unwrap().is_identity());
        let f = make_family_a(&q(1), &q(2), &q(3)).unwrap();
        let id = BiMap::identity(&k);
        assert_eq!(map_compose(&f, &id).unwrap().components(), f.components());
    }

    #[test]
    fn inverse_composes_to_identity() {
        let f = make_family_a(&q(2), &q(-3), &q(5)).unwrap();
        let g = map_inverse(&f).unwrap();
        assert!(map_compose(&f, &g).unwrap().is_identity());
        assert!(map_compose(&g, &f).unwrap().is_identity());
    }

    #[test]
    fn evaluation() {
        let f = make_family_a(&q(1), &q(2), &q(3)).unwrap();
        let k = f.field();
        assert_eq!(map_evaluate(&f, &PPoint::from_ints(k, [1, 0, -3]).unwrap()), Evaluation::Indeterminate);
        let g = make_family_a(&q(1), &q(1), &q(1)).unwrap();
        let p = map_evaluate(&g, &PPoint::affine(q(0), q(0))).point().unwrap();
        assert_eq!(p, PPoint::affine(q(1), q(0)));
    }

    #[test]
    fn term_cap_enforced() {
        let f = make_family_a(&q(1), &q(2), &q(3)).unwrap();
        let e = compose_components(f.components(), f.components(), 2).unwrap_err();
        assert!(matches!(e, Error::ResourceLimit { .. }));
    }
}
