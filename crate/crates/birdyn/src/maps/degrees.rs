//! Degree sequences d_n = deg Fⁿ.
//!
//! The default engine restricts Fⁿ to a random line over a large prime field:
//! iterating binary forms and removing their gcd at each step gives deg Fⁿ
//! exactly unless the line or the prime is unlucky, in which case a degree can
//! only come out too low. Two independent trials are combined by taking the
//! maximum, with a third trial when they disagree.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::roots::embedding_prime;
use crate::arith::{FieldElem, Fp, HPoly, UPoly};
use crate::error::{Error, Result};

use super::compose::compose_components;
use super::{BiMap, DEFAULT_TERM_CAP};

#[derive(Clone, Debug)]
pub struct DegreeOptions {
    pub seed: u64,
    /// Cap on the length of a restricted component (and on terms in the exact engine).
    pub term_cap: usize,
    /// Stop early, after the first degree above this bound.
    pub max_degree: Option<u32>,
}

impl Default for DegreeOptions {
    fn default() -> Self {
        DegreeOptions { seed: 0xd5e9_0001, term_cap: DEFAULT_TERM_CAP, max_degree: None }
    }
}

/// d_1, …, d_{n_max} with default options.
pub fn degree_sequence(f: &BiMap, n_max: usize) -> Result<Vec<u32>> {
    degree_sequence_with(f, n_max, &DegreeOptions::default())
}

pub fn degree_sequence_with(f: &BiMap, n_max: usize, opts: &DegreeOptions) -> Result<Vec<u32>> {
    if n_max == 0 {
        return Err(Error::InvalidParameter("n_max must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let a = trial(f, n_max, opts.term_cap, opts.max_degree, &mut rng)?;
    let b = trial(f, n_max, opts.term_cap, opts.max_degree, &mut rng)?;
    let mut best: Vec<u32> = a.iter().zip(&b).map(|(x, y)| *x.max(y)).collect();
    if a != b {
        let c = trial(f, n_max, opts.term_cap, opts.max_degree, &mut rng)?;
        best = best.iter().zip(&c).map(|(x, y)| *x.max(y)).collect();
    }
    Ok(best)
}

/// Degrees by exact iterated composition; slow, used for cross-checks.
pub fn degree_sequence_exact(f: &BiMap, n_max: usize, cap: usize) -> Result<Vec<u32>> {
    let mut out = Vec::with_capacity(n_max);
    let mut cur = f.components().clone();
    out.push(cur[0].degree());
    for _ in 1..n_max {
        cur = compose_components(f.components(), &cur, cap)?.comps;
        out.push(cur[0].degree());
    }
    Ok(out)
}

fn trial(f: &BiMap, n_max: usize, cap: usize, max_degree: Option<u32>, rng: &mut ChaCha8Rng) -> Result<Vec<u32>> {
    let k = f.field();
    let comps = loop {
        let (p, root) = embedding_prime(k, rng, 62);
        let emb = |c: &FieldElem| c.embed(root);
        let mapped: Result<Vec<HPoly<Fp>>> = f.components().iter().map(|c| c.try_map(&p, emb)).collect();
        if let Ok(m) = mapped {
            if m.iter().all(|c| c.degree() == f.degree()) {
                break m;
            }
        }
    };
    let p = *comps[0].ctx();
    let d = f.degree() as usize;
    let mut cur: [UPoly<Fp>; 3] = std::array::from_fn(|_| {
        UPoly::new(vec![Fp::new(rng.gen_range(0..p), p), Fp::new(rng.gen_range(0..p), p)], &p)
    });
    let mut formal = 1usize;
    let mut out = Vec::with_capacity(n_max);
    for _ in 0..n_max {
        let h: Vec<UPoly<Fp>> = comps.iter().map(|c| eval_forms(c, &cur)).collect();
        let new_formal = d * formal;
        let top = h.iter().map(|x| x.deg()).max().unwrap_or(-1);
        if top < 0 {
            return Err(Error::InvalidParameter("map vanishes on a line".into()));
        }
        let at_infinity = new_formal - top as usize;
        let g = h[0].gcd(&h[1]).gcd(&h[2]);
        let reduced = new_formal - g.deg() as usize - at_infinity;
        if reduced + 1 > cap {
            return Err(Error::ResourceLimit { what: "restricted component length".into(), size: reduced + 1, cap });
        }
        cur = std::array::from_fn(|i| h[i].div_exact(&g).expect("gcd divides"));
        formal = reduced;
        out.push(reduced as u32);
        if over_budget(reduced, max_degree) {
            break;
        }
    }
    Ok(out)
}

fn over_budget(d: usize, max_degree: Option<u32>) -> bool {
    max_degree.is_some_and(|m| d > m as usize)
}

/// c(g0, g1, g2) for binary forms given dehomogenized in one variable.
fn eval_forms(c: &HPoly<Fp>, g: &[UPoly<Fp>; 3]) -> UPoly<Fp> {
    let ctx = *c.ctx();
    let d = c.degree() as usize;
    let mut powers: [Vec<UPoly<Fp>>; 3] = std::array::from_fn(|_| vec![UPoly::one(&ctx)]);
    for (i, pw) in powers.iter_mut().enumerate() {
        for _ in 0..d {
            let next = pw.last().unwrap().mul(&g[i]);
            pw.push(next);
        }
    }
    let mut acc = UPoly::zero(&ctx);
    for (e, coef) in c.terms() {
        let t = powers[0][e[0] as usize].mul(&powers[1][e[1] as usize]).mul(&powers[2][e[2] as usize]);
        acc = acc.add(&t.scale(coef));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::NumberField;
    use crate::maps::{make_family_a, make_family_b};

    fn r(s: &str) -> FieldElem {
        FieldElem::parse(&NumberField::rationals(), s).unwrap()
    }

    #[test]
    fn quadratic_growth_sequence() {
        let f = make_family_a(&r("2"), &r("-1"), &r("-1")).unwrap();
        assert_eq!(degree_sequence(&f, 10).unwrap(), vec![2, 3, 5, 7, 11, 15, 20, 25, 32, 39]);
    }

    #[test]
    fn second_quadratic_sequence() {
        let f = make_family_a(&r("1/4"), &r("1"), &r("-1/2")).unwrap();
        assert_eq!(degree_sequence(&f, 11).unwrap(), vec![2, 3, 5, 8, 12, 16, 22, 28, 35, 43, 52]);
    }

    #[test]
    fn family_b_linear() {
        let f = make_family_b(&r("1"), &r("1"), &r("1")).unwrap();
        assert_eq!(degree_sequence(&f, 6).unwrap(), vec![2, 2, 3, 3, 4, 4]);
    }

    #[test]
    fn modular_matches_exact() {
        let f = make_family_a(&r("1"), &r("2"), &r("3")).unwrap();
        let exact = degree_sequence_exact(&f, 5, DEFAULT_TERM_CAP).unwrap();
        assert_eq!(degree_sequence(&f, 5).unwrap(), exact);
        assert_eq!(exact, vec![2, 3, 5, 8, 13]);
    }
}
