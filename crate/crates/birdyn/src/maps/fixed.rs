use crate::arith::roots::roots_in_field;
use crate::arith::{APoly, Field, FieldElem, UPoly};
use crate::error::{Error, Result};

use super::{BiMap, Family, PPoint};

/// Affine fixed points, plus curves of fixed points when f fixes a whole curve.
#[derive(Clone, Debug, PartialEq)]
pub struct FixedPoints {
    /// (point, minimal period)
    pub points: Vec<(PPoint, u32)>,
    pub curves: Vec<APoly<FieldElem>>,
}

fn roots_or_extension(p: &UPoly<FieldElem>) -> Result<Vec<FieldElem>> {
    if p.deg() < 1 {
        return Ok(vec![]);
    }
    let r = roots_in_field(p)?;
    if !r.complete() {
        return Err(Error::ExtensionNeeded { minpoly: r.cofactor.monic().to_string() });
    }
    Ok(r.roots)
}

fn upoly(cs: Vec<FieldElem>, k: &std::sync::Arc<crate::arith::NumberField>) -> UPoly<FieldElem> {
    UPoly::new(cs, k)
}

/// Affine fixed points of a family map.
pub fn fixed_points(f: &BiMap) -> Result<FixedPoints> {
    let k = f.field().clone();
    let one = FieldElem::one(&k);
    let mut points = Vec::new();
    let mut curves = Vec::new();
    match f.family() {
        Family::A { alpha0, alpha1, gamma0 } => {
            // y = (1−α1)x − α0 and y(γ0 + y) = x
            let c = one.sub(alpha1);
            let y_of = upoly(vec![alpha0.neg(), c.clone()], &k);
            let q = y_of.mul(&y_of.add(&UPoly::constant(gamma0.clone()))).sub(&UPoly::x(&k));
            for x in roots_or_extension(&q)? {
                let y = y_of.eval(&x);
                if !gamma0.add(&y).is_zero() {
                    points.push((PPoint::affine(x, y), 1));
                }
            }
        }
        Family::B { alpha0, alpha1, beta2 } => {
            if alpha1.is_one() {
                if alpha0.is_zero() {
                    // y² − β2 y − x = 0 is fixed pointwise
                    let c = APoly::from_terms(
                        [((0, 2), one.clone()), ((0, 1), beta2.neg()), ((1, 0), one.neg())],
                        &k,
                    );
                    curves.push(c);
                }
            } else {
                let x = alpha0.div(&one.sub(alpha1))?;
                let q = upoly(vec![x.neg(), beta2.neg(), one.clone()], &k);
                for y in roots_or_extension(&q)? {
                    if !y.is_zero() {
                        points.push((PPoint::affine(x.clone(), y), 1));
                    }
                }
            }
        }
        Family::Raw => return Err(Error::InvalidParameter("fixed points need a family map".into())),
    }
    Ok(FixedPoints { points, curves })
}

/// Points of minimal period 2 of a family A map.
///
/// With u the x-coordinate of f(x, y), the conditions f²(x, y) = (x, y) reduce to
/// two quadratics in u; their resultant in u cuts out the admissible x.
pub fn period_two_points(f: &BiMap) -> Result<Vec<PPoint>> {
    let Family::A { alpha0, alpha1, gamma0 } = f.family() else {
        return Err(Error::InvalidParameter("period-two points are implemented for family A".into()));
    };
    let k = f.field().clone();
    let c = |v: &FieldElem| UPoly::constant(v.clone());
    let x = UPoly::x(&k);
    let a1 = c(alpha1);
    // E1 = (x − α0 − α1u)(γ0 + u − α0 − α1x) − x
    let aa = x.sub(&c(alpha0));
    let bb = c(gamma0).sub(&c(alpha0)).sub(&a1.mul(&x));
    let e1 = [aa.mul(&bb).sub(&x), aa.sub(&a1.mul(&bb)), a1.neg()];
    // E2 = (u − α0 − α1x)(γ0 + x − α0 − α1u) − u
    let cc = c(alpha0).neg().sub(&a1.mul(&x));
    let dd = c(gamma0).add(&x).sub(&c(alpha0));
    let e2 = [cc.mul(&dd), dd.sub(&a1.mul(&cc)).sub(&UPoly::one(&k)), a1.neg()];
    let t1 = e1[2].mul(&e2[0]).sub(&e1[0].mul(&e2[2]));
    let t2 = e1[2].mul(&e2[1]).sub(&e1[1].mul(&e2[2]));
    let t3 = e1[1].mul(&e2[0]).sub(&e1[0].mul(&e2[1]));
    let res = t1.mul(&t1).sub(&t2.mul(&t3));
    if res.is_zero() {
        return Err(Error::InvalidParameter("period-two equations are degenerate".into()));
    }
    let mut out = Vec::new();
    for xr in roots_or_extension(&res)? {
        let at = |e: &[UPoly<FieldElem>; 3]| upoly(e.iter().map(|p| p.eval(&xr)).collect(), &k);
        let g = at(&e1).gcd(&at(&e2));
        for u in roots_or_extension(&g)? {
            let y = u.sub(alpha0).sub(&alpha1.mul(&xr));
            let Some(img) = f.eval_affine(&xr, &y) else { continue };
            if img == (xr.clone(), y.clone()) {
                continue;
            }
            if f.eval_affine(&img.0, &img.1).as_ref() == Some(&(xr.clone(), y.clone())) {
                let p = PPoint::affine(xr.clone(), y);
                if !out.contains(&p) {
                    out.push(p);
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::NumberField;
    use crate::maps::{make_family_a, make_family_b, map_evaluate, Evaluation};

    fn r(s: &str) -> FieldElem {
        FieldElem::parse(&NumberField::rationals(), s).unwrap()
    }

    #[test]
    fn family_b_fixed_x() {
        // α0/(1−α1) = 2, y² − y − 2 = (y−2)(y+1)
        let f = make_family_b(&r("-2"), &r("2"), &r("1")).unwrap();
        let fp = fixed_points(&f).unwrap();
        assert_eq!(fp.points.len(), 2);
        for (p, _) in &fp.points {
            assert_eq!(p.affine_coords().unwrap().0, r("2"));
            assert_eq!(map_evaluate(&f, p), Evaluation::Point(p.clone()));
        }
    }

    #[test]
    fn fixed_curve_when_alpha1_is_one() {
        let f = make_family_b(&r("0"), &r("1"), &r("0")).unwrap();
        let fp = fixed_points(&f).unwrap();
        assert!(fp.points.is_empty());
        assert_eq!(fp.curves.len(), 1);
        let c = &fp.curves[0];
        assert!(c.eval(&r("4"), &r("2")).is_zero());
        assert!(c.eval(&r("4"), &r("-2")).is_zero());
    }

    #[test]
    fn extension_reported() {
        // y² − y − 3 has no rational roots
        let f = make_family_b(&r("-3"), &r("2"), &r("1")).unwrap();
        assert!(matches!(fixed_points(&f), Err(Error::ExtensionNeeded { .. })));
    }

    #[test]
    fn linear_growth_member_fixed_points() {
        // ω = 2: α1 = ω², α0 = (ω³−ω²+1)/((ω+1)(ω²−ω+1)²), γ0 = (ω−1)/(ω(ω²−ω+1))
        let f = make_family_a(&r("5/27"), &r("4"), &r("1/6")).unwrap();
        let fp = fixed_points(&f).unwrap();
        assert!(fp.points.contains(&(PPoint::affine(r("1/81"), r("-2/9")), 1)));
        for (p, _) in &fp.points {
            assert_eq!(map_evaluate(&f, p), Evaluation::Point(p.clone()));
        }
        match period_two_points(&f) {
            Ok(two) => {
                for p in two {
                    let q = map_evaluate(&f, &p).point().unwrap();
                    assert_ne!(q, p);
                    assert_eq!(map_evaluate(&f, &q).point().unwrap(), p);
                }
            }
            Err(e) => assert!(matches!(e, Error::ExtensionNeeded { .. }), "{e}"),
        }
    }
}
