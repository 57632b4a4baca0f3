//! Gcd of homogeneous trivariate polynomials.
//!
//! The common power of x0 is split off, the rest is dehomogenized at x0 = 1
//! and handled as a bivariate problem by primitive pseudo-remainder sequences
//! in one variable over F[other variable].

use super::field::Field;
use super::hpoly::HPoly;
use super::upoly::UPoly;

/// Bivariate polynomial as coefficients in the main variable over F[t].
type Biv<F> = Vec<UPoly<F>>;

fn trim<F: Field>(b: &mut Biv<F>) {
    while b.last().is_some_and(|c| c.is_zero()) {
        b.pop();
    }
}

/// main = 1 uses x1 as the main variable, main = 2 uses x2.
fn to_biv<F: Field>(h: &HPoly<F>, main: usize) -> Biv<F> {
    let other = 3 - main;
    let ctx = h.ctx();
    let mut out: Vec<Vec<F>> = Vec::new();
    for (e, c) in h.terms() {
        let (m, o) = (e[main] as usize, e[other] as usize);
        if out.len() <= m {
            out.resize(m + 1, Vec::new());
        }
        let row = &mut out[m];
        if row.len() <= o {
            row.resize(o + 1, F::zero(ctx));
        }
        row[o] = c.clone();
    }
    let mut b: Biv<F> = out.into_iter().map(|r| UPoly::new(r, ctx)).collect();
    trim(&mut b);
    b
}

fn from_biv<F: Field>(b: &Biv<F>, main: usize, ctx: &F::Ctx) -> HPoly<F> {
    let other = 3 - main;
    let deg = b
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(m, c)| m + c.deg() as usize)
        .max()
        .unwrap_or(0) as u32;
    let mut terms = Vec::new();
    for (m, c) in b.iter().enumerate() {
        for (o, v) in c.coeffs().iter().enumerate() {
            if !v.is_zero() {
                let mut e = [0u32; 3];
                e[main] = m as u32;
                e[other] = o as u32;
                e[0] = deg - m as u32 - o as u32;
                terms.push((e, v.clone()));
            }
        }
    }
    HPoly::from_terms(terms, deg, ctx).expect("consistent degrees")
}

fn content<F: Field>(b: &Biv<F>, ctx: &F::Ctx) -> UPoly<F> {
    let mut g = UPoly::zero(ctx);
    for c in b {
        g = g.gcd(c);
        if g.is_constant() && !g.is_zero() {
            break;
        }
    }
    g
}

fn div_content<F: Field>(b: &Biv<F>, c: &UPoly<F>) -> Biv<F> {
    b.iter().map(|x| x.div_exact(c).expect("content divides")).collect()
}

/// Primitive part, scaled so that the leading coefficient's leading scalar is 1.
fn primitive<F: Field>(b: &Biv<F>, ctx: &F::Ctx) -> Biv<F> {
    let c = content(b, ctx);
    let p = if c.is_constant() { b.clone() } else { div_content(b, &c) };
    let s = p.last().unwrap().lc().inv().expect("nonzero");
    p.iter().map(|x| x.scale(&s)).collect()
}

/// Pseudo-remainder of a by b in the main variable.
fn prem<F: Field>(a: &Biv<F>, b: &Biv<F>) -> Biv<F> {
    let db = b.len() - 1;
    let lb = b[db].clone();
    let mut r = a.clone();
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        // r <- lb*r - lr*y^(dr-db)*b
        let shift = dr - db;
        for x in r.iter_mut() {
            *x = x.mul(&lb);
        }
        for (i, bi) in b.iter().enumerate() {
            r[i + shift] = r[i + shift].sub(&lr.mul(bi));
        }
        trim(&mut r);
    }
    r
}

fn biv_gcd<F: Field>(a: &Biv<F>, b: &Biv<F>, ctx: &F::Ctx) -> Biv<F> {
    let ca = content(a, ctx);
    let cb = content(b, ctx);
    let c = ca.gcd(&cb);
    let mut p = primitive(a, ctx);
    let mut q = primitive(b, ctx);
    if p.len() < q.len() {
        std::mem::swap(&mut p, &mut q);
    }
    let g = loop {
        if q.len() == 1 {
            break vec![UPoly::one(ctx)];
        }
        let r = prem(&p, &q);
        if r.is_empty() {
            break q;
        }
        p = q;
        q = primitive(&r, ctx);
    };
    g.iter().map(|x| x.mul(&c)).collect()
}

/// Gcd normalized to graded-lex leading coefficient 1; gcd(0, 0) = 0.
pub fn gcd<F: Field>(a: &HPoly<F>, b: &HPoly<F>) -> HPoly<F> {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    let ctx = a.ctx().clone();
    let v = a.var_valuation(0).min(b.var_valuation(0));
    let a1 = a.div_var_power(0, a.var_valuation(0));
    let b1 = b.div_var_power(0, b.var_valuation(0));
    // pick the main variable with the smaller degree
    let deg_in = |h: &HPoly<F>, i: usize| h.terms().keys().map(|e| e[i]).max().unwrap_or(0);
    let main = if deg_in(&a1, 1).max(deg_in(&b1, 1)) < deg_in(&a1, 2).max(deg_in(&b1, 2)) { 1 } else { 2 };
    let g = biv_gcd(&to_biv(&a1, main), &to_biv(&b1, main), &ctx);
    let g = from_biv(&g, main, &ctx);
    let xv = HPoly::monomial([v, 0, 0], F::one(&ctx));
    g.mul(&xv).monic()
}

/// Gcd of several forms.
pub fn gcd_many<F: Field>(polys: &[HPoly<F>]) -> HPoly<F> {
    let mut g = polys[0].clone();
    for p in &polys[1..] {
        if g.degree() == 0 && !g.is_zero() {
            break;
        }
        g = gcd(&g, p);
    }
    g.monic()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat::Rat;

    fn x(i: usize) -> HPoly<Rat> {
        HPoly::var(i, &())
    }

    #[test]
    fn small_gcds() {
        assert_eq!(gcd(&x(0).mul(&x(1)), &x(0).mul(&x(2))), x(0));
        let a = x(0).mul(&x(0)).sub(&x(1).mul(&x(1)));
        let b = x(0).add(&x(1)).pow(2);
        assert_eq!(gcd(&a, &b), x(0).add(&x(1)));
    }

    #[test]
    fn gcd_with_cofactors() {
        let l = x(0).scale(&Rat::int(3)).add(&x(2));
        let p = l.mul(&x(1).mul(&x(1)).add(&x(0).mul(&x(2))));
        let q = l.mul(&l).mul(&x(1).sub(&x(2)));
        assert_eq!(gcd(&p, &q), l.monic());
        assert_eq!(gcd(&x(1), &x(2)).degree(), 0);
    }
}
