use std::sync::Arc;

use crate::arith::{Field, FieldElem, HPoly, NumberField};
use crate::error::{Error, Result};

use super::compose::compose_components;
use super::{make_family_b, BiMap, DEFAULT_TERM_CAP};

/// h(x, y) = (a x + b, c y + d).
#[derive(Clone, Debug, PartialEq)]
pub struct DiagonalAffine {
    pub a: FieldElem,
    pub b: FieldElem,
    pub c: FieldElem,
    pub d: FieldElem,
}

impl DiagonalAffine {
    pub fn apply(&self, x: &FieldElem, y: &FieldElem) -> (FieldElem, FieldElem) {
        (self.a.mul(x).add(&self.b), self.c.mul(y).add(&self.d))
    }

    pub fn inverse(&self) -> Result<DiagonalAffine> {
        let ai = self.a.inv()?;
        let ci = self.c.inv()?;
        Ok(DiagonalAffine { b: self.b.mul(&ai).neg(), a: ai, d: self.d.mul(&ci).neg(), c: ci })
    }

    pub fn is_identity(&self) -> bool {
        self.a.is_one() && self.c.is_one() && self.b.is_zero() && self.d.is_zero()
    }

    /// As a projective map [x0 : a x1 + b x0 : c x2 + d x0].
    pub fn components(&self, k: &Arc<NumberField>) -> [HPoly<FieldElem>; 3] {
        let t = |e, v: &FieldElem| HPoly::monomial(e, v.clone());
        [
            HPoly::var(0, k),
            t([0, 1, 0], &self.a).add(&t([1, 0, 0], &self.b)),
            t([0, 0, 1], &self.c).add(&t([1, 0, 0], &self.d)),
        ]
    }
}

/// Conjugates f(x, y) = (α0 + α1 x, (β0 + β1 x + β2 y)/(γ0 + γ2 y)) into the
/// normal form (α0' + α1 x, (x + β2' y)/y), returning the normal form and h
/// with h⁻¹∘f∘h equal to it. The identity is checked by exact composition.
pub fn normalize_family_b(
    beta0: &FieldElem,
    beta1: &FieldElem,
    beta2: &FieldElem,
    gamma0: &FieldElem,
    gamma2: &FieldElem,
    alpha0: &FieldElem,
    alpha1: &FieldElem,
) -> Result<(BiMap, DiagonalAffine)> {
    for (v, n) in [(beta1, "beta1"), (gamma2, "gamma2"), (alpha1, "alpha1")] {
        if v.is_zero() {
            return Err(Error::InvalidParameter(format!("{n} must be nonzero")));
        }
    }
    let k = alpha1.field().clone();
    let bg = beta1.mul(gamma2);
    let h = DiagonalAffine {
        a: bg.clone(),
        b: beta0.mul(gamma2).sub(&beta2.mul(gamma0)).div(&bg)?.neg(),
        c: beta1.clone(),
        d: gamma0.div(gamma2)?.neg(),
    };
    let num = alpha0
        .mul(&bg)
        .sub(&alpha1.mul(beta0).mul(gamma2))
        .add(&alpha1.mul(beta2).mul(gamma0))
        .add(&beta0.mul(gamma2))
        .sub(&beta2.mul(gamma0));
    let a0n = num.div(&bg.square())?;
    let b2n = beta2.add(gamma0).div(&bg)?;
    let g = make_family_b(&a0n, alpha1, &b2n)?;

    // [x0(γ0x0+γ2x2) : (α0x0+α1x1)(γ0x0+γ2x2) : x0(β0x0+β1x1+β2x2)]
    let lin = |c: [&FieldElem; 3]| {
        HPoly::from_terms(
            [([1, 0, 0], c[0].clone()), ([0, 1, 0], c[1].clone()), ([0, 0, 1], c[2].clone())],
            1,
            &k,
        )
        .expect("linear")
    };
    let zero = FieldElem::zero(&k);
    let den = lin([gamma0, &zero, gamma2]);
    let x0 = HPoly::var(0, &k);
    let f = [x0.mul(&den), lin([alpha0, alpha1, &zero]).mul(&den), x0.mul(&lin([beta0, beta1, beta2]))];
    let fh = compose_components(&f, &h.components(&k), DEFAULT_TERM_CAP)?.comps;
    let conj = compose_components(&h.inverse()?.components(&k), &fh, DEFAULT_TERM_CAP)?.comps;
    let same = conj[0].proportional_to(&g.components()[0]).is_some_and(|s| {
        (1..3).all(|i| conj[i].proportional_to(&g.components()[i]).as_ref() == Some(&s))
    });
    if !same {
        return Err(Error::InvalidParameter("conjugation did not reach the normal form".into()));
    }
    Ok((g, h))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> FieldElem {
        FieldElem::from_i64(&NumberField::rationals(), n)
    }

    #[test]
    fn already_normal() {
        let (g, h) = normalize_family_b(&q(0), &q(1), &q(3), &q(0), &q(1), &q(2), &q(5)).unwrap();
        assert!(h.is_identity());
        let g2 = make_family_b(&q(2), &q(5), &q(3)).unwrap();
        assert_eq!(g.components(), g2.components());
    }

    #[test]
    fn generic_parameters() {
        let (g, h) = normalize_family_b(&q(1), &q(2), &q(3), &q(4), &q(5), &q(6), &q(7)).unwrap();
        // pointwise: h(g(p)) = f(h(p))
        let f = |x: &FieldElem, y: &FieldElem| {
            let num = q(1).add(&q(2).mul(x)).add(&q(3).mul(y));
            let den = q(4).add(&q(5).mul(y));
            (q(6).add(&q(7).mul(x)), num.div(&den).unwrap())
        };
        let (x, y) = (q(3), q(-2));
        let (gx, gy) = g.eval_affine(&x, &y).unwrap();
        let (hx, hy) = h.apply(&x, &y);
        assert_eq!(h.apply(&gx, &gy), f(&hx, &hy));
    }

    #[test]
    fn zero_beta1_rejected() {
        let e = normalize_family_b(&q(1), &q(0), &q(3), &q(4), &q(5), &q(6), &q(7)).unwrap_err();
        assert!(matches!(e, Error::InvalidParameter(_)));
    }
}
