//! Roots in F_p, embeddings of number fields into F_p, and exact roots in a
//! number field by p-adic lifting over completely split primes.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::Field;
use super::fp::{random_prime, Fp};
use super::numfield::{FieldElem, NumberField};
use super::rat::{rational_reconstruct, Rat};
use super::upoly::UPoly;
use crate::error::{Error, Result};

/// Distinct roots of f in F_p.
pub fn fp_roots<R: Rng>(f: &UPoly<Fp>, rng: &mut R) -> Vec<Fp> {
    if f.is_constant() {
        return Vec::new();
    }
    let p = *f.ctx();
    let f = f.monic();
    let x = UPoly::x(&p);
    let xp = x.powmod(p as u128, &f).expect("nonzero modulus");
    let g = f.gcd(&xp.sub(&x));
    let mut out = Vec::new();
    split_linear(&g, rng, &mut out);
    out.sort_by_key(|r| r.v);
    out
}

fn split_linear<R: Rng>(g: &UPoly<Fp>, rng: &mut R, out: &mut Vec<Fp>) {
    let p = *g.ctx();
    match g.degree() {
        None | Some(0) => {}
        Some(1) => out.push(g.coeff(0).neg().mul(&g.lc().inv().unwrap())),
        Some(_) => loop {
            let a = Fp::new(rng.gen_range(0..p), p);
            let xa = UPoly::new(vec![a, Fp::one(&p)], &p);
            let w = xa.powmod(((p - 1) / 2) as u128, g).unwrap();
            let d = g.gcd(&w.sub(&UPoly::one(&p)));
            if d.deg() > 0 && d.deg() < g.deg() {
                split_linear(&d, rng, out);
                split_linear(&g.div_exact(&d).unwrap(), rng, out);
                return;
            }
        },
    }
}

/// Reduction of a rational polynomial mod p, or None if p divides a denominator.
pub fn reduce_rat_poly(m: &UPoly<Rat>, p: u64) -> Option<UPoly<Fp>> {
    m.try_map(&p, |c| Fp::from_rat(c, p)).ok()
}

/// A prime p with a simple root r of the modulus; α ↦ r embeds the field into F_p
/// (away from finitely many bad elements).
pub fn embedding_prime<R: Rng>(k: &NumberField, rng: &mut R, bits: u32) -> (u64, Fp) {
    loop {
        let p = random_prime(rng, bits);
        let Some(mp) = reduce_rat_poly(k.modulus(), p) else { continue };
        if mp.degree() != k.modulus().degree() {
            continue;
        }
        let roots = fp_roots(&mp, rng);
        for r in roots {
            if !mp.derivative().eval(&r).is_zero() {
                return (p, r);
            }
        }
    }
}

/// A prime where the modulus splits into distinct linear factors, with the roots.
pub fn split_prime<R: Rng>(k: &NumberField, rng: &mut R, bits: u32, attempts: usize) -> Result<(u64, Vec<Fp>)> {
    let d = k.degree();
    for _ in 0..attempts {
        let p = random_prime(rng, bits);
        let Some(mp) = reduce_rat_poly(k.modulus(), p) else { continue };
        if mp.degree() != Some(d) {
            continue;
        }
        let roots = fp_roots(&mp, rng);
        if roots.len() == d {
            return Ok((p, roots));
        }
    }
    Err(Error::NoPrime(format!("no completely split prime for {:?}", k)))
}

fn modinv(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let g = a.mod_floor(m).extended_gcd(m);
    if g.gcd.is_one() {
        Some(g.x.mod_floor(m))
    } else {
        None
    }
}

fn rat_mod(r: &Rat, m: &BigInt) -> Option<BigInt> {
    Some((r.numer() * modinv(r.denom(), m)?).mod_floor(m))
}

fn eval_mod(cs: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in cs.iter().rev() {
        acc = (acc * x + c).mod_floor(m);
    }
    acc
}

fn deriv(cs: &[BigInt]) -> Vec<BigInt> {
    cs.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect()
}

/// Newton lift of a simple root mod p to a root mod the full modulus p^(2^steps).
fn hensel(cs: &[BigInt], r: u64, p: u64, steps: u32) -> BigInt {
    let dcs = deriv(cs);
    let mut x = BigInt::from(r);
    let mut modk = BigInt::from(p);
    for _ in 0..steps {
        modk = &modk * &modk;
        let fx = eval_mod(cs, &x, &modk);
        let dfx = eval_mod(&dcs, &x, &modk);
        let inv = modinv(&dfx, &modk).expect("simple root");
        x = (x - fx * inv).mod_floor(&modk);
    }
    x
}

/// Inverse of a square matrix mod m (entries reduced, pivots must be units).
fn inverse_mod(a: &[Vec<BigInt>], m: &BigInt) -> Option<Vec<Vec<BigInt>>> {
    let n = a.len();
    let mut aug: Vec<Vec<BigInt>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let pr = (col..n).find(|&r| modinv(&aug[r][col], m).is_some())?;
        aug.swap(pr, col);
        let inv = modinv(&aug[col][col], m)?;
        for v in aug[col].iter_mut() {
            *v = (&*v * &inv).mod_floor(m);
        }
        let prow = aug[col].clone();
        for (r, row) in aug.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (c, v) in row.iter_mut().enumerate() {
                *v = (&*v - &f * &prow[c]).mod_floor(m);
            }
        }
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Roots found in the field, and the monic cofactor of the squarefree part
/// that has no roots there.
#[derive(Clone, Debug)]
pub struct FieldRoots {
    pub roots: Vec<FieldElem>,
    pub cofactor: UPoly<FieldElem>,
}

impl FieldRoots {
    pub fn complete(&self) -> bool {
        self.cofactor.is_constant()
    }
}

const MAX_TUPLES: usize = 50_000;

/// Distinct roots of p in its coefficient field.
pub fn roots_in_field(p: &UPoly<FieldElem>) -> Result<FieldRoots> {
    let k = p.ctx().clone();
    let mut rest = p.squarefree_part();
    let mut roots = Vec::new();
    let take = |rest: &mut UPoly<FieldElem>, roots: &mut Vec<FieldElem>, r: FieldElem| {
        let lin = UPoly::new(vec![r.neg(), FieldElem::one(&k)], &k);
        if let Ok(q) = rest.div_exact(&lin) {
            *rest = q;
            roots.push(r);
        }
    };
    if rest.degree() == Some(1) {
        let r = rest.coeff(0).neg();
        take(&mut rest, &mut roots, r);
    }
    if rest.deg() >= 1 {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
        let found = lift_roots(&rest, &k, &mut rng)?;
        for r in found {
            take(&mut rest, &mut roots, r);
        }
    }
    Ok(FieldRoots { roots, cofactor: rest.monic() })
}

fn lift_roots<R: Rng>(q: &UPoly<FieldElem>, k: &Arc<NumberField>, rng: &mut R) -> Result<Vec<FieldElem>> {
    let n = q.degree().unwrap();
    // a split prime keeping q squarefree of full degree in every embedding
    let mut chosen = None;
    for _ in 0..200 {
        let (p, mroots) = split_prime(k, rng, 31, 5000)?;
        let images: Option<Vec<UPoly<Fp>>> = mroots
            .iter()
            .map(|r| {
                let qj = q.try_map(&p, |c| c.embed(*r)).ok()?;
                (qj.degree() == Some(n) && qj.gcd(&qj.derivative()).is_constant()).then_some(qj)
            })
            .collect();
        if let Some(images) = images {
            chosen = Some((p, mroots, images));
            break;
        }
    }
    let (p, mroots, images) = chosen.ok_or_else(|| Error::NoPrime("no prime keeps the polynomial squarefree".into()))?;
    let root_sets: Vec<Vec<Fp>> = images.iter().map(|f| fp_roots(f, rng)).collect();
    if root_sets.iter().any(|s| s.is_empty()) {
        return Ok(Vec::new());
    }
    let total: usize = root_sets.iter().map(|s| s.len()).product();
    let d = k.degree();
    let mut found: Vec<FieldElem> = Vec::new();
    for steps in [2u32, 4, 6] {
        let m = num_traits::pow(BigInt::from(p), 1usize << steps);
        let mcs: Vec<BigInt> = k.modulus().coeffs().iter().map(|c| rat_mod(c, &m).unwrap()).collect();
        let lifted_m: Vec<BigInt> = mroots.iter().map(|r| hensel(&mcs, r.v, p, steps)).collect();
        let vander: Vec<Vec<BigInt>> = lifted_m
            .iter()
            .map(|r| {
                let mut row = vec![BigInt::one()];
                for i in 1..d {
                    let next = (&row[i - 1] * r).mod_floor(&m);
                    row.push(next);
                }
                row
            })
            .collect();
        let Some(vinv) = inverse_mod(&vander, &m) else { continue };
        let mut lifted_roots = Vec::new();
        for (j, r) in lifted_m.iter().enumerate() {
            let qcs: Vec<BigInt> = q
                .coeffs()
                .iter()
                .map(|c| {
                    let cs: Vec<BigInt> = c.coeffs().iter().map(|x| rat_mod(x, &m).unwrap()).collect();
                    eval_mod(&cs, r, &m)
                })
                .collect();
            lifted_roots.push(root_sets[j].iter().map(|rho| hensel(&qcs, rho.v, p, steps)).collect::<Vec<_>>());
        }
        let mut idx = vec![0usize; d];
        for _ in 0..total.min(MAX_TUPLES) {
            let tuple: Vec<&BigInt> = idx.iter().enumerate().map(|(j, &i)| &lifted_roots[j][i]).collect();
            let mut coeffs = Vec::with_capacity(d);
            for row in &vinv {
                let c = row.iter().zip(&tuple).fold(BigInt::zero(), |acc, (a, b)| acc + a * *b).mod_floor(&m);
                match rational_reconstruct(&c, &m) {
                    Some(r) => coeffs.push(r),
                    None => break,
                }
            }
            if coeffs.len() == d {
                let beta = FieldElem::from_coeffs(k, coeffs)?;
                if !found.contains(&beta) && q.eval(&beta).is_zero() {
                    found.push(beta);
                    if found.len() == n {
                        return Ok(found);
                    }
                }
            }
            // next tuple
            for j in 0..d {
                idx[j] += 1;
                if idx[j] < lifted_roots[j].len() {
                    break;
                }
                idx[j] = 0;
            }
        }
    }
    Ok(found)
}

/// Distinct rational roots.
pub fn rational_roots(p: &UPoly<Rat>) -> Vec<Rat> {
    let q = NumberField::rationals();
    let pk = p.map(&q, |c| FieldElem::from_rat(&q, c.clone()));
    let mut out: Vec<Rat> = roots_in_field(&pk)
        .map(|r| r.roots.iter().map(|x| x.coeffs()[0].clone()).collect())
        .unwrap_or_default();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_mod_p() {
        let p = 1_000_003;
        let f = UPoly::from_i64s(&[-6, 11, -6, 1], &p);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let r: Vec<u64> = fp_roots(&f, &mut rng).iter().map(|x| x.v).collect();
        assert_eq!(r, vec![1, 2, 3]);
    }

    #[test]
    fn rational_roots_found() {
        // (2x - 3)(x + 5)(x^2 + 1)
        let f = UPoly::<Rat>::from_i64s(&[-3, 2], &())
            .mul(&UPoly::from_i64s(&[5, 1], &()))
            .mul(&UPoly::from_i64s(&[1, 0, 1], &()));
        assert_eq!(rational_roots(&f), vec![Rat::int(-5), Rat::new(3, 2)]);
    }

    #[test]
    fn roots_in_cyclotomic_field() {
        // x^2 + x + 1 over Q(ζ9) has roots ζ9^3 and ζ9^6
        let k = NumberField::from_i64s(&[1, 0, 0, 1, 0, 0, 1]).unwrap();
        let f = UPoly::from_i64s(&[1, 1, 1], &k);
        let r = roots_in_field(&f).unwrap();
        assert!(r.complete());
        let a = FieldElem::generator(&k);
        assert!(r.roots.contains(&a.pow(3)) && r.roots.contains(&a.pow(6)));
    }

    #[test]
    fn no_roots_reported_as_cofactor() {
        let k = NumberField::from_i64s(&[1, 0, 1]).unwrap();
        let f = UPoly::from_i64s(&[-2, 0, 1], &k);
        let r = roots_in_field(&f).unwrap();
        assert!(r.roots.is_empty());
        assert_eq!(r.cofactor.degree(), Some(2));
    }
}
