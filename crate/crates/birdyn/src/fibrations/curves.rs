use crate::arith::hpoly::Exp3;
use crate::arith::linalg::{det, nullspace, rref, solve, Matrix};
use crate::arith::roots::roots_in_field;
use crate::arith::{Field, FieldElem, HPoly, UPoly};
use crate::error::{Error, Result};
use crate::maps::{exceptional_locus, BiMap};

/// C∘F = ∏ S_i^{mults[i]} · reduced, each multiplicity maximal.
#[derive(Clone, Debug, PartialEq)]
pub struct CurvePullback {
    pub reduced: HPoly<FieldElem>,
    pub mults: Vec<u32>,
}

pub fn curve_pullback(f: &BiMap, c: &HPoly<FieldElem>) -> Result<CurvePullback> {
    let lines = exceptional_locus(f)?;
    let mut h = c.subst(f.components())?;
    let mut mults = vec![0; lines.len()];
    for (s, m) in lines.iter().zip(mults.iter_mut()) {
        while h.degree() > 0 && s.divides(&h) {
            h = h.div_exact(s)?;
            *m += 1;
        }
    }
    Ok(CurvePullback { reduced: h, mults })
}

/// Curves C of one degree with C̄ = λC for the same multiplicity profile.
#[derive(Clone, Debug)]
pub struct InvariantFamily {
    pub mults: Vec<u32>,
    pub eigenvalue: FieldElem,
    /// A basis of the eigenspace; any nonzero combination is invariant.
    pub basis: Vec<HPoly<FieldElem>>,
}

/// Eigenvalues without roots in the base field, kept as a polynomial.
#[derive(Clone, Debug)]
pub struct Unresolved {
    pub mults: Vec<u32>,
    pub minpoly: UPoly<FieldElem>,
}

#[derive(Clone, Debug, Default)]
pub struct CurveSearch {
    pub families: Vec<InvariantFamily>,
    pub needs_extension: Vec<Unresolved>,
}

impl CurveSearch {
    pub fn curves(&self) -> impl Iterator<Item = (&HPoly<FieldElem>, &FieldElem)> {
        self.families.iter().flat_map(|fam| fam.basis.iter().map(move |c| (c, &fam.eigenvalue)))
    }
}

pub const MAX_SEARCH_DEGREE: u32 = 8;

fn monomials(d: u32) -> Vec<Exp3> {
    let mut out = Vec::new();
    for a in (0..=d).rev() {
        for b in (0..=d - a).rev() {
            out.push([a, b, d - a - b]);
        }
    }
    out
}

fn profiles(n: usize, total: u32, cap: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for s in 0..=total.min(cap) {
        for mut rest in profiles(n - 1, total - s, cap) {
            rest.insert(0, s);
            out.push(rest);
        }
    }
    out
}

fn combine(polys: &[HPoly<FieldElem>], coeffs: &[FieldElem], deg: u32, k: &FieldElem) -> HPoly<FieldElem> {
    let mut acc = HPoly::zero(deg, k.field());
    for (p, c) in polys.iter().zip(coeffs) {
        if !c.is_zero() {
            acc = acc.add(&p.scale(c));
        }
    }
    acc
}

/// det(tI − M) by interpolation at t = 0, …, n.
fn char_poly(m: &Matrix<FieldElem>, one: &FieldElem) -> UPoly<FieldElem> {
    let k = one.field();
    let n = m.len();
    let mut result = UPoly::zero(k);
    for j in 0..=n {
        let tj = FieldElem::from_i64(k, j as i64);
        let shifted: Matrix<FieldElem> = (0..n)
            .map(|r| (0..n).map(|c| if r == c { tj.sub(&m[r][c]) } else { m[r][c].neg() }).collect())
            .collect();
        let v = det(&shifted, k);
        // Lagrange basis polynomial for node j
        let mut basis = UPoly::constant(v);
        for i in (0..=n).filter(|&i| i != j) {
            let ti = FieldElem::from_i64(k, i as i64);
            let lin = UPoly::new(vec![ti.neg(), one.clone()], k);
            basis = basis.mul(&lin).scale(&tj.sub(&ti).inv().expect("distinct nodes"));
        }
        result = result.add(&basis);
    }
    result
}

/// Invariant curves of degree `deg` as eigenvectors of C ↦ C̄ on the forms
/// with prescribed divisibility of C∘F by the exceptional lines.
pub fn search_invariant_curves(f: &BiMap, deg: u32) -> Result<CurveSearch> {
    if deg == 0 || deg > MAX_SEARCH_DEGREE {
        return Err(Error::InvalidParameter(format!("search degree must be in 1..={MAX_SEARCH_DEGREE}")));
    }
    let k = f.field();
    let one = FieldElem::one(k);
    let lines = exceptional_locus(f)?;
    let d = f.degree();
    let mons = monomials(deg);
    let n = mons.len();
    let images: Vec<HPoly<FieldElem>> =
        mons.iter().map(|e| HPoly::monomial(*e, one.clone()).subst(f.components())).collect::<Result<_>>()?;
    // coordinates in which S_i becomes x_j
    let mut moved = Vec::new();
    for s in &lines {
        let j = (0..3).find(|&j| !s.coeff(&unit(j)).is_zero()).expect("linear form");
        let cj = s.coeff(&unit(j));
        let mut sub: [HPoly<FieldElem>; 3] = std::array::from_fn(|i| HPoly::var(i, k));
        let mut xj = HPoly::var(j, k);
        for i in (0..3).filter(|&i| i != j) {
            xj = xj.sub(&HPoly::var(i, k).scale(&s.coeff(&unit(i))));
        }
        sub[j] = xj.scale(&cj.inv()?);
        let hs: Vec<HPoly<FieldElem>> = images.iter().map(|h| h.subst(&sub)).collect::<Result<_>>()?;
        moved.push((j, hs));
    }
    let mut out = CurveSearch::default();
    for prof in profiles(lines.len(), (d - 1) * deg, d * deg) {
        let mut rows: Matrix<FieldElem> = Vec::new();
        for ((j, hs), &s) in moved.iter().zip(&prof) {
            let mut keys: Vec<Exp3> = hs.iter().flat_map(|h| h.terms().keys().copied()).filter(|e| e[*j] < s).collect();
            keys.sort();
            keys.dedup();
            rows.extend(keys.iter().map(|e| hs.iter().map(|h| h.coeff(e)).collect::<Vec<_>>()));
        }
        let kernel = if rows.is_empty() {
            (0..n).map(|i| (0..n).map(|j| if i == j { one.clone() } else { FieldElem::zero(k) }).collect()).collect()
        } else {
            nullspace(&rows, n, k)
        };
        if kernel.is_empty() {
            continue;
        }
        let divisor = lines.iter().zip(&prof).fold(HPoly::constant(one.clone()), |acc, (s, &m)| acc.mul(&s.pow(m)));
        let mut bars = Vec::with_capacity(kernel.len());
        for v in &kernel {
            let h = combine(&images, v, d * deg, &one);
            let bar = h.div_exact(&divisor)?;
            bars.push(mons.iter().map(|e| bar.coeff(e)).collect::<Vec<_>>());
        }
        let r = kernel.len();
        // K and K̄ as N×r matrices; pick r rows where K is invertible
        let mut kt: Matrix<FieldElem> = kernel.clone();
        let pivots = rref(&mut kt, n);
        let kr: Matrix<FieldElem> = pivots.iter().map(|&row| kernel.iter().map(|v| v[row].clone()).collect()).collect();
        let mut m: Matrix<FieldElem> = vec![vec![FieldElem::zero(k); r]; r];
        for c in 0..r {
            let rhs: Vec<FieldElem> = pivots.iter().map(|&row| bars[c][row].clone()).collect();
            let col = solve(&kr, &rhs).expect("pivot rows are independent");
            for (i, v) in col.into_iter().enumerate() {
                m[i][c] = v;
            }
        }
        let chi = char_poly(&m, &one);
        let found = roots_in_field(&chi)?;
        if !found.complete() {
            out.needs_extension.push(Unresolved { mults: prof.clone(), minpoly: found.cofactor.clone() });
        }
        for lambda in found.roots {
            let sys: Matrix<FieldElem> = (0..n)
                .map(|row| (0..r).map(|c| bars[c][row].sub(&lambda.mul(&kernel[c][row]))).collect())
                .collect();
            let vecs = nullspace(&sys, r, k);
            let mon_polys: Vec<HPoly<FieldElem>> = mons.iter().map(|e| HPoly::monomial(*e, one.clone())).collect();
            let basis: Vec<HPoly<FieldElem>> = vecs
                .iter()
                .map(|b| {
                    let coeffs: Vec<FieldElem> = (0..n)
                        .map(|row| (0..r).fold(FieldElem::zero(k), |acc, c| acc.add(&b[c].mul(&kernel[c][row]))))
                        .collect();
                    combine(&mon_polys, &coeffs, deg, &one).monic()
                })
                .collect();
            if !basis.is_empty() {
                out.families.push(InvariantFamily { mults: prof.clone(), eigenvalue: lambda, basis });
            }
        }
    }
    Ok(out)
}

fn unit(j: usize) -> Exp3 {
    let mut e = [0; 3];
    e[j] = 1;
    e
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{APoly, NumberField};
    use crate::maps::make_family_a;

    fn r(n: i64) -> FieldElem {
        FieldElem::from_i64(&NumberField::rationals(), n)
    }

    #[test]
    fn invariant_triangle() {
        // f = (x + y, x/(y − 1)) permutes x = 0, y = 0, x + y = 0
        let f = make_family_a(&r(0), &r(1), &r(-1)).unwrap();
        let k = f.field();
        let c = HPoly::var(1, k).mul(&HPoly::var(2, k)).mul(&HPoly::var(1, k).add(&HPoly::var(2, k)));
        let pb = curve_pullback(&f, &c).unwrap();
        assert_eq!(pb.reduced.degree(), 3);
        assert!(pb.reduced.proportional_to(&c).is_some(), "{}", pb.reduced);
        assert_eq!(pb.mults.iter().sum::<u32>(), 3);
    }

    #[test]
    fn exceptional_curve_collapses() {
        let f = make_family_a(&r(1), &r(2), &r(3)).unwrap();
        let s0 = f.exceptional().unwrap()[0].clone();
        let pb = curve_pullback(&f, &s0).unwrap();
        assert_eq!(pb.reduced.degree(), 0);
    }

    #[test]
    fn identity_fixes_everything() {
        let k = NumberField::rationals();
        let id = BiMap::identity(&k);
        let s = search_invariant_curves(&id, 2).unwrap();
        assert_eq!(s.families.len(), 1);
        assert!(s.families[0].eigenvalue.is_one());
        assert_eq!(s.families[0].basis.len(), 6);
    }

    #[test]
    fn finds_prop32_conic_numerator() {
        // Q₁ = 1 − 2x + 3y + 2y² is invariant for (1 + x + y, x/(1 + y))
        let f = make_family_a(&r(1), &r(1), &r(1)).unwrap();
        let q1 = APoly::from_terms([((0, 0), r(1)), ((1, 0), r(-2)), ((0, 1), r(3)), ((0, 2), r(2))], f.field());
        let want = q1.homogenize(2).monic();
        let s = search_invariant_curves(&f, 2).unwrap();
        assert!(s.curves().any(|(c, _)| *c == want), "{:?}", s.families);
        for fam in &s.families {
            let divisor = f.exceptional().unwrap().iter().zip(&fam.mults).fold(HPoly::constant(r(1)), |acc, (l, &m)| acc.mul(&l.pow(m)));
            for c in &fam.basis {
                assert_eq!(c.subst(f.components()).unwrap(), divisor.mul(&c.scale(&fam.eigenvalue)));
            }
        }
    }
}
