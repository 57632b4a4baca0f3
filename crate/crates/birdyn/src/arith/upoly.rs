use std::fmt;

use super::field::Field;
use crate::error::{Error, Result};

/// Dense univariate polynomial, lowest degree first, no trailing zeros.
#[derive(Clone, PartialEq)]
pub struct UPoly<F: Field> {
    coeffs: Vec<F>,
    ctx: F::Ctx,
}

impl<F: Field> UPoly<F> {
    pub fn new(mut coeffs: Vec<F>, ctx: &F::Ctx) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs, ctx: ctx.clone() }
    }

    pub fn from_i64s(cs: &[i64], ctx: &F::Ctx) -> Self {
        UPoly::new(cs.iter().map(|&c| F::from_i64(ctx, c)).collect(), ctx)
    }

    pub fn zero(ctx: &F::Ctx) -> Self {
        UPoly { coeffs: Vec::new(), ctx: ctx.clone() }
    }

    pub fn one(ctx: &F::Ctx) -> Self {
        UPoly::constant(F::one(ctx))
    }

    pub fn constant(c: F) -> Self {
        let ctx = c.ctx();
        UPoly::new(vec![c], &ctx)
    }

    pub fn x(ctx: &F::Ctx) -> Self {
        UPoly::monomial(F::one(ctx), 1)
    }

    pub fn monomial(c: F, n: usize) -> Self {
        let ctx = c.ctx();
        let mut v = vec![F::zero(&ctx); n];
        v.push(c);
        UPoly::new(v, &ctx)
    }

    pub fn ctx(&self) -> &F::Ctx {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> F {
        self.coeffs.get(i).cloned().unwrap_or_else(|| F::zero(&self.ctx))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial at -1.
    pub fn deg(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn lc(&self) -> F {
        self.coeffs.last().cloned().unwrap_or_else(|| F::zero(&self.ctx))
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Lowest power of x with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let v = (0..n).map(|i| self.coeff(i).add(&o.coeff(i))).collect();
        UPoly::new(v, &self.ctx)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let v = (0..n).map(|i| self.coeff(i).sub(&o.coeff(i))).collect();
        UPoly::new(v, &self.ctx)
    }

    pub fn neg(&self) -> Self {
        UPoly { coeffs: self.coeffs.iter().map(|c| c.neg()).collect(), ctx: self.ctx.clone() }
    }

    pub fn scale(&self, c: &F) -> Self {
        UPoly::new(self.coeffs.iter().map(|a| a.mul(c)).collect(), &self.ctx)
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero(&self.ctx);
        }
        let mut v = vec![F::zero(&self.ctx); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j].add_assign_ref(&a.mul(b));
            }
        }
        UPoly::new(v, &self.ctx)
    }

    pub fn shift(&self, n: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![F::zero(&self.ctx); n];
        v.extend(self.coeffs.iter().cloned());
        UPoly { coeffs: v, ctx: self.ctx.clone() }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = UPoly::one(&self.ctx);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn divrem(&self, b: &Self) -> Result<(Self, Self)> {
        if b.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let db = b.coeffs.len() - 1;
        if self.coeffs.len() <= db {
            return Ok((UPoly::zero(&self.ctx), self.clone()));
        }
        let inv = b.lc().inv()?;
        let mut r = self.coeffs.clone();
        let mut q = vec![F::zero(&self.ctx); r.len() - db];
        for i in (0..q.len()).rev() {
            let c = r[i + db].mul(&inv);
            if c.is_zero() {
                continue;
            }
            for (j, bj) in b.coeffs.iter().enumerate() {
                r[i + j] = r[i + j].sub(&c.mul(bj));
            }
            q[i] = c;
        }
        r.truncate(db);
        Ok((UPoly::new(q, &self.ctx), UPoly::new(r, &self.ctx)))
    }

    pub fn rem(&self, b: &Self) -> Result<Self> {
        Ok(self.divrem(b)?.1)
    }

    pub fn div_exact(&self, b: &Self) -> Result<Self> {
        let (q, r) = self.divrem(b)?;
        if !r.is_zero() {
            return Err(Error::NotDivisible { witness: r.to_string() });
        }
        Ok(q)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lc().inv().expect("nonzero leading coefficient");
        self.scale(&inv)
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns (g, s, t) with s*self + t*o = g, g monic.
    pub fn ext_gcd(&self, o: &Self) -> Result<(Self, Self, Self)> {
        let ctx = &self.ctx;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (UPoly::one(ctx), UPoly::zero(ctx));
        let (mut t0, mut t1) = (UPoly::zero(ctx), UPoly::one(ctx));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1)?;
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return Ok((r0, s0, t0));
        }
        let inv = r0.lc().inv()?;
        Ok((r0.scale(&inv), s0.scale(&inv), t0.scale(&inv)))
    }

    pub fn derivative(&self) -> Self {
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.mul(&F::from_i64(&self.ctx, i as i64)))
            .collect();
        UPoly::new(v, &self.ctx)
    }

    pub fn eval(&self, x: &F) -> F {
        let mut acc = F::zero(&self.ctx);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// self(g(x)).
    pub fn compose(&self, g: &Self) -> Self {
        let mut acc = UPoly::zero(&self.ctx);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(g).add(&UPoly::constant(c.clone()));
        }
        acc
    }

    /// self^e mod m, for large exponents (root finding over finite fields).
    pub fn powmod(&self, mut e: u128, m: &Self) -> Result<Self> {
        let mut base = self.rem(m)?;
        let mut acc = UPoly::one(&self.ctx).rem(m)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).rem(m)?;
            }
        }
        Ok(acc)
    }

    /// Yun's algorithm: pairwise coprime squarefree factors with multiplicities.
    /// Valid in characteristic zero, and in characteristic p above the degree.
    pub fn squarefree_decomp(&self) -> Vec<(Self, usize)> {
        let mut out = Vec::new();
        if self.is_constant() {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.div_exact(&a0).unwrap();
        let mut c = df.div_exact(&a0).unwrap();
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        while !b.is_constant() {
            let a = b.gcd(&d);
            if !a.is_constant() {
                out.push((a.clone(), i));
            }
            b = b.div_exact(&a).unwrap();
            c = d.div_exact(&a).unwrap();
            d = c.sub(&b.derivative());
            i += 1;
        }
        out
    }

    /// Product of the distinct irreducible factors.
    pub fn squarefree_part(&self) -> Self {
        if self.is_constant() {
            return self.monic();
        }
        self.div_exact(&self.gcd(&self.derivative())).unwrap().monic()
    }

    pub fn map<G: Field>(&self, ctx: &G::Ctx, f: impl Fn(&F) -> G) -> UPoly<G> {
        UPoly::new(self.coeffs.iter().map(f).collect(), ctx)
    }

    pub fn try_map<G: Field>(&self, ctx: &G::Ctx, f: impl Fn(&F) -> Result<G>) -> Result<UPoly<G>> {
        Ok(UPoly::new(self.coeffs.iter().map(f).collect::<Result<_>>()?, ctx))
    }
}

impl<F: Field> fmt::Display for UPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 if c.is_one() => write!(f, "x")?,
                1 => write!(f, "({c})*x")?,
                _ if c.is_one() => write!(f, "x^{i}")?,
                _ => write!(f, "({c})*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for UPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat::Rat;

    fn q(cs: &[i64]) -> UPoly<Rat> {
        UPoly::from_i64s(cs, &())
    }

    #[test]
    fn division() {
        let a = q(&[-1, 0, 0, 1]);
        let b = q(&[-1, 1]);
        let (qq, r) = a.divrem(&b).unwrap();
        assert_eq!(qq, q(&[1, 1, 1]));
        assert!(r.is_zero());
    }

    #[test]
    fn gcd_and_bezout() {
        let a = q(&[-1, 0, 1]);
        let b = q(&[1, 2, 1]);
        assert_eq!(a.gcd(&b), q(&[1, 1]));
        let (g, s, t) = a.ext_gcd(&b).unwrap();
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
    }

    #[test]
    fn yun_groups_by_multiplicity() {
        // x^2 (x+1) (x-1)^2: Yun returns (x+1, 1) and (x^2 - x, 2)
        let p = q(&[0, 0, 1]).mul(&q(&[1, 1])).mul(&q(&[-1, 1]).pow(2));
        let d = p.squarefree_decomp();
        assert_eq!(d, vec![(q(&[1, 1]), 1), (q(&[0, -1, 1]), 2)]);
        assert_eq!(q(&[-1, -1, 1]).squarefree_decomp(), vec![(q(&[-1, -1, 1]), 1)]);
    }

    #[test]
    fn compose_and_eval() {
        let p = q(&[1, 0, 1]);
        let g = q(&[1, 1]);
        assert_eq!(p.compose(&g), q(&[2, 2, 1]));
        assert_eq!(p.eval(&Rat::int(3)), Rat::int(10));
    }
}
