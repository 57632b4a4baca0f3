use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use super::field::Field;
use super::hpoly::HPoly;
use super::mgcd;
use crate::error::Result;

/// Exponent pair (e_x, e_y) ordered graded-lex with x > y.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Mon2(pub u32, pub u32);

impl Ord for Mon2 {
    fn cmp(&self, o: &Self) -> Ordering {
        (self.0 + self.1, self.0).cmp(&(o.0 + o.1, o.0))
    }
}

impl PartialOrd for Mon2 {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Sparse affine polynomial in x, y.
#[derive(Clone, PartialEq)]
pub struct APoly<F: Field> {
    terms: BTreeMap<Mon2, F>,
    ctx: F::Ctx,
}

impl<F: Field> APoly<F> {
    pub fn zero(ctx: &F::Ctx) -> Self {
        APoly { terms: BTreeMap::new(), ctx: ctx.clone() }
    }

    pub fn constant(c: F) -> Self {
        let ctx = c.ctx();
        APoly::from_terms([((0, 0), c)], &ctx)
    }

    pub fn x(ctx: &F::Ctx) -> Self {
        APoly::from_terms([((1, 0), F::one(ctx))], ctx)
    }

    pub fn y(ctx: &F::Ctx) -> Self {
        APoly::from_terms([((0, 1), F::one(ctx))], ctx)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((u32, u32), F)>, ctx: &F::Ctx) -> Self {
        let mut map: BTreeMap<Mon2, F> = BTreeMap::new();
        for ((a, b), c) in terms {
            let k = Mon2(a, b);
            match map.get_mut(&k) {
                Some(v) => *v = v.add(&c),
                None => {
                    map.insert(k, c);
                }
            }
        }
        map.retain(|_, c| !c.is_zero());
        APoly { terms: map, ctx: ctx.clone() }
    }

    pub fn ctx(&self) -> &F::Ctx {
        &self.ctx
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &F)> {
        self.terms.iter().map(|(m, c)| ((m.0, m.1), c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, a: u32, b: u32) -> F {
        self.terms.get(&Mon2(a, b)).cloned().unwrap_or_else(|| F::zero(&self.ctx))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(|m| m.0 + m.1)
    }

    pub fn is_constant(&self) -> bool {
        self.total_degree().unwrap_or(0) == 0
    }

    pub fn leading(&self) -> Option<((u32, u32), &F)> {
        self.terms.iter().next_back().map(|(m, c)| ((m.0, m.1), c))
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inv().expect("nonzero coefficient")),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut t = self.terms.clone();
        for (m, c) in &o.terms {
            match t.get_mut(m) {
                Some(v) => *v = v.add(c),
                None => {
                    t.insert(*m, c.clone());
                }
            }
        }
        t.retain(|_, c| !c.is_zero());
        APoly { terms: t, ctx: self.ctx.clone() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        APoly { terms: self.terms.iter().map(|(m, c)| (*m, c.neg())).collect(), ctx: self.ctx.clone() }
    }

    pub fn scale(&self, c: &F) -> Self {
        let mut t: BTreeMap<Mon2, F> = self.terms.iter().map(|(m, a)| (*m, a.mul(c))).collect();
        t.retain(|_, c| !c.is_zero());
        APoly { terms: t, ctx: self.ctx.clone() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut acc: std::collections::HashMap<Mon2, F> = std::collections::HashMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                let m = Mon2(a.0 + b.0, a.1 + b.1);
                let p = ca.mul(cb);
                match acc.get_mut(&m) {
                    Some(v) => *v = v.add(&p),
                    None => {
                        acc.insert(m, p);
                    }
                }
            }
        }
        let mut t: BTreeMap<Mon2, F> = acc.into_iter().collect();
        t.retain(|_, c| !c.is_zero());
        APoly { terms: t, ctx: self.ctx.clone() }
    }

    pub fn pow(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = APoly::constant(F::one(&self.ctx));
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn eval(&self, x: &F, y: &F) -> F {
        let mut acc = F::zero(&self.ctx);
        for (m, c) in &self.terms {
            acc = acc.add(&c.mul(&x.pow(m.0 as u64)).mul(&y.pow(m.1 as u64)));
        }
        acc
    }

    pub fn dx(&self) -> Self {
        let t = self
            .terms
            .iter()
            .filter(|(m, _)| m.0 > 0)
            .map(|(m, c)| ((m.0 - 1, m.1), c.mul(&F::from_i64(&self.ctx, m.0 as i64))));
        APoly::from_terms(t, &self.ctx)
    }

    pub fn dy(&self) -> Self {
        let t = self
            .terms
            .iter()
            .filter(|(m, _)| m.1 > 0)
            .map(|(m, c)| ((m.0, m.1 - 1), c.mul(&F::from_i64(&self.ctx, m.1 as i64))));
        APoly::from_terms(t, &self.ctx)
    }

    /// Homogenization to degree `deg` ≥ total degree, with x = x1/x0, y = x2/x0.
    pub fn homogenize(&self, deg: u32) -> HPoly<F> {
        let t = self.terms.iter().map(|(m, c)| ([deg - m.0 - m.1, m.0, m.1], c.clone()));
        HPoly::from_terms(t, deg, &self.ctx).expect("degree bounds total degree")
    }

    pub fn homogenize_min(&self) -> HPoly<F> {
        self.homogenize(self.total_degree().unwrap_or(0))
    }

    pub fn div_exact(&self, b: &Self) -> Result<Self> {
        let ha = self.homogenize_min();
        let hb = b.homogenize_min();
        Ok(ha.div_exact(&hb)?.dehomogenize())
    }

    /// Monic gcd, via the homogenized forms.
    pub fn gcd(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.monic();
        }
        if o.is_zero() {
            return self.monic();
        }
        mgcd::gcd(&self.homogenize_min(), &o.homogenize_min()).dehomogenize().monic()
    }

    pub fn map<G: Field>(&self, ctx: &G::Ctx, f: impl Fn(&F) -> G) -> APoly<G> {
        APoly::from_terms(self.terms.iter().map(|(m, c)| ((m.0, m.1), f(c))), ctx)
    }
}

impl<F: Field> fmt::Display for APoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let mono = match (m.0, m.1) {
                (0, 0) => String::new(),
                (a, 0) => pw("x", a),
                (0, b) => pw("y", b),
                (a, b) => format!("{}*{}", pw("x", a), pw("y", b)),
            };
            if mono.is_empty() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "({c})*{mono}")?;
            }
        }
        Ok(())
    }
}

fn pw(v: &str, k: u32) -> String {
    if k == 1 {
        v.to_string()
    } else {
        format!("{v}^{k}")
    }
}

impl<F: Field> fmt::Debug for APoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat::Rat;

    #[test]
    fn graded_lex_order() {
        assert!(Mon2(0, 2) > Mon2(1, 0));
        assert!(Mon2(2, 0) > Mon2(1, 1));
    }

    #[test]
    fn derivative_and_homogenize() {
        let p = APoly::from_terms([((2, 1), Rat::int(3)), ((0, 0), Rat::int(1))], &());
        assert_eq!(p.dx(), APoly::from_terms([((1, 1), Rat::int(6))], &()));
        let h = p.homogenize(4);
        assert_eq!(h.coeff(&[4, 0, 0]), Rat::int(1));
        assert_eq!(h.coeff(&[1, 2, 1]), Rat::int(3));
        assert_eq!(h.dehomogenize(), p);
    }
}
