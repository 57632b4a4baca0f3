use crate::arith::linalg::nullspace;
use crate::arith::roots::roots_in_field;
use crate::arith::{Field, FieldElem, HPoly, UPoly};
use crate::error::{Error, Result};

use super::compose::{eval_components, Evaluation};
use super::{BiMap, PPoint};

/// det(∂F_i/∂x_j).
pub fn jacobian(f: &BiMap) -> HPoly<FieldElem> {
    let c = f.components();
    let m: Vec<Vec<HPoly<FieldElem>>> = (0..3).map(|i| (0..3).map(|j| c[i].partial(j)).collect()).collect();
    let minor = |a: usize, b: usize, r: usize, s: usize| m[a][r].mul(&m[b][s]).sub(&m[a][s].mul(&m[b][r]));
    m[0][0]
        .mul(&minor(1, 2, 1, 2))
        .sub(&m[0][1].mul(&minor(1, 2, 0, 2)))
        .add(&m[0][2].mul(&minor(1, 2, 0, 1)))
}

/// Restriction of a form to a line through two coordinate points, as a polynomial in t:
/// `slots` gives, per variable, 0 for "set to zero", 1 for "t", 2 for "1".
fn restrict(h: &HPoly<FieldElem>, slots: [u8; 3]) -> UPoly<FieldElem> {
    let k = h.ctx();
    let mut cs = vec![FieldElem::zero(k); h.degree() as usize + 1];
    'terms: for (e, c) in h.terms() {
        let mut tdeg = 0;
        for i in 0..3 {
            match slots[i] {
                0 if e[i] > 0 => continue 'terms,
                1 => tdeg += e[i] as usize,
                _ => {}
            }
        }
        cs[tdeg] = cs[tdeg].add(c);
    }
    UPoly::new(cs, k)
}

fn roots_of(p: &UPoly<FieldElem>) -> Result<Vec<FieldElem>> {
    if p.deg() < 1 {
        return Ok(vec![]);
    }
    Ok(roots_in_field(p)?.roots)
}

/// The curves collapsed by f, as monic linear forms.
///
/// Family maps return their stored list (S_0, S_1, S_2 in order). Otherwise the
/// Jacobian determinant is split into lines over the coefficient field and
/// every line is checked to collapse.
pub fn exceptional_locus(f: &BiMap) -> Result<Vec<HPoly<FieldElem>>> {
    if let Some(e) = f.exceptional() {
        return Ok(e.to_vec());
    }
    let k = f.field();
    let mut rest = jacobian(f);
    if rest.is_zero() {
        return Err(Error::validation("components", "Jacobian determinant vanishes identically"));
    }
    let mut found = Vec::new();
    for i in 0..3 {
        let v = rest.var_valuation(i);
        if v > 0 {
            rest = rest.div_var_power(i, v);
            found.push(HPoly::var(i, k));
        }
    }
    let one = FieldElem::one(k);
    let mut try_line = |rest: &mut HPoly<FieldElem>, l: HPoly<FieldElem>| -> Result<()> {
        let mut hit = false;
        while rest.degree() > 0 && l.divides(rest) {
            *rest = rest.div_exact(&l)?;
            hit = true;
        }
        if hit {
            found.push(l);
        }
        Ok(())
    };
    if rest.degree() > 0 {
        // x0 + a x1 + b x2 vanishes at (−a, 1, 0) and (−b, 0, 1)
        let ra = roots_of(&restrict(&rest, [1, 2, 0]))?;
        let rb = roots_of(&restrict(&rest, [1, 0, 2]))?;
        for a in &ra {
            for b in &rb {
                let l = HPoly::from_terms(
                    [([1, 0, 0], one.clone()), ([0, 1, 0], a.neg()), ([0, 0, 1], b.neg())],
                    1,
                    k,
                )?;
                try_line(&mut rest, l)?;
            }
        }
    }
    if rest.degree() > 0 {
        // x1 + b x2 vanishes at (0, −b, 1)
        for b in roots_of(&restrict(&rest, [0, 1, 2]))? {
            let l = HPoly::from_terms([([0, 1, 0], one.clone()), ([0, 0, 1], b.neg())], 1, k)?;
            try_line(&mut rest, l)?;
        }
    }
    if rest.degree() > 0 {
        return Err(Error::NonLinearFactor { remainder: rest.monic().to_string() });
    }
    for l in &found {
        collapse_image(f, l)?;
    }
    Ok(found)
}

/// A basis (P, Q) of the line l = 0.
pub fn line_points(l: &HPoly<FieldElem>) -> Result<(PPoint, PPoint)> {
    if l.degree() != 1 || l.is_zero() {
        return Err(Error::InvalidParameter(format!("{l} is not a line")));
    }
    let k = l.ctx();
    let row = vec![l.coeff(&[1, 0, 0]), l.coeff(&[0, 1, 0]), l.coeff(&[0, 0, 1])];
    let ns = nullspace(&vec![row], 3, k);
    let p = PPoint::new([ns[0][0].clone(), ns[0][1].clone(), ns[0][2].clone()])?;
    let q = PPoint::new([ns[1][0].clone(), ns[1][1].clone(), ns[1][2].clone()])?;
    Ok((p, q))
}

/// The point a collapsed line is sent to, from three agreeing sample images.
pub fn collapse_image(f: &BiMap, s: &HPoly<FieldElem>) -> Result<PPoint> {
    let k = f.field();
    let (p, q) = line_points(s)?;
    let mut images: Vec<PPoint> = Vec::new();
    for t in 0..32 {
        let tt = FieldElem::from_i64(k, t);
        let c: [FieldElem; 3] = std::array::from_fn(|i| p.coords()[i].add(&tt.mul(&q.coords()[i])));
        let pt = PPoint::new(c)?;
        if let Evaluation::Point(img) = eval_components(f.components(), &pt) {
            if images.first().is_some_and(|first| *first != img) {
                return Err(Error::NotCollapsed { curve: s.to_string() });
            }
            images.push(img);
            if images.len() == 3 {
                return Ok(images.swap_remove(0));
            }
        }
    }
    Err(Error::NotCollapsed { curve: s.to_string() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::NumberField;
    use crate::maps::{make_family_a, make_family_b, map_inverse, map_evaluate};

    fn q(n: i64) -> FieldElem {
        FieldElem::from_i64(&NumberField::rationals(), n)
    }

    fn raw_of(f: &BiMap) -> BiMap {
        BiMap::raw(f.field(), f.components().clone(), None, None).unwrap()
    }

    #[test]
    fn family_a_locus_recomputed() {
        let f = make_family_a(&q(1), &q(2), &q(3)).unwrap();
        let mut got = exceptional_locus(&raw_of(&f)).unwrap();
        let mut want: Vec<_> = f.exceptional().unwrap().iter().map(|h| h.monic()).collect();
        got.sort_by_key(|h| h.to_string());
        want.sort_by_key(|h| h.to_string());
        assert_eq!(got, want);
        for s in &want {
            assert!(s.divides(&jacobian(&f)));
        }
    }

    #[test]
    fn involution_locus() {
        let k = NumberField::rationals();
        let j = BiMap::involution(&k);
        let got = exceptional_locus(&raw_of(&j)).unwrap();
        assert_eq!(got.len(), 3);
    }

    #[test]
    fn collapse_targets() {
        let f = make_family_a(&q(1), &q(2), &q(3)).unwrap();
        let k = f.field().clone();
        let s = f.exceptional().unwrap();
        assert_eq!(collapse_image(&f, &s[0]).unwrap(), PPoint::from_ints(&k, [0, 1, 0]).unwrap());
        assert_eq!(collapse_image(&f, &s[1]).unwrap(), PPoint::from_ints(&k, [0, 0, 1]).unwrap());
        assert_eq!(&collapse_image(&f, &s[2]).unwrap(), &f.collapse_points().unwrap()[2]);
        let g = make_family_b(&q(1), &q(1), &q(1)).unwrap();
        assert_eq!(collapse_image(&g, &HPoly::var(2, &k)).unwrap(), PPoint::from_ints(&k, [0, 0, 1]).unwrap());
        let inv = map_inverse(&g).unwrap();
        for s in g.exceptional().unwrap() {
            let a = collapse_image(&g, s).unwrap();
            assert_eq!(map_evaluate(&inv, &a), Evaluation::Indeterminate);
        }
    }

    #[test]
    fn non_exceptional_line_rejected() {
        let f = make_family_a(&q(1), &q(2), &q(3)).unwrap();
        let l = HPoly::var(1, f.field());
        assert!(matches!(collapse_image(&f, &l), Err(Error::NotCollapsed { .. })));
    }
}
