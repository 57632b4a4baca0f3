use std::collections::{BTreeMap, HashMap};
use std::fmt;

use super::apoly::APoly;
use super::field::Field;
use crate::error::{Error, Result};

pub type Exp3 = [u32; 3];

/// Homogeneous polynomial in x0, x1, x2.
///
/// Keys are ordered lexicographically, which for a fixed total degree is the
/// graded-lex order with x0 > x1 > x2; the leading term is the last key.
/// The zero polynomial keeps a formal degree so that sums stay homogeneous.
#[derive(Clone, PartialEq)]
pub struct HPoly<F: Field> {
    terms: BTreeMap<Exp3, F>,
    degree: u32,
    ctx: F::Ctx,
}

fn deg3(e: &Exp3) -> u32 {
    e[0] + e[1] + e[2]
}

impl<F: Field> HPoly<F> {
    pub fn zero(degree: u32, ctx: &F::Ctx) -> Self {
        HPoly { terms: BTreeMap::new(), degree, ctx: ctx.clone() }
    }

    pub fn constant(c: F) -> Self {
        let ctx = c.ctx();
        HPoly::from_terms(vec![([0, 0, 0], c)], 0, &ctx).unwrap()
    }

    pub fn var(i: usize, ctx: &F::Ctx) -> Self {
        let mut e = [0; 3];
        e[i] = 1;
        HPoly::monomial(e, F::one(ctx))
    }

    pub fn monomial(e: Exp3, c: F) -> Self {
        let ctx = c.ctx();
        HPoly::from_terms(vec![(e, c)], deg3(&e), &ctx).unwrap()
    }

    /// Builds from terms, summing duplicates and dropping zeros.
    pub fn from_terms(terms: impl IntoIterator<Item = (Exp3, F)>, degree: u32, ctx: &F::Ctx) -> Result<Self> {
        let mut map: BTreeMap<Exp3, F> = BTreeMap::new();
        for (e, c) in terms {
            if deg3(&e) != degree {
                return Err(Error::DegreeMismatch(format!(
                    "monomial {:?} in a polynomial of degree {degree}",
                    e
                )));
            }
            match map.get_mut(&e) {
                Some(v) => *v = v.add(&c),
                None => {
                    map.insert(e, c);
                }
            }
        }
        map.retain(|_, c| !c.is_zero());
        Ok(HPoly { terms: map, degree, ctx: ctx.clone() })
    }

    /// Builds from terms whose degrees are known to agree.
    fn from_map(mut terms: BTreeMap<Exp3, F>, degree: u32, ctx: &F::Ctx) -> Self {
        terms.retain(|_, c| !c.is_zero());
        HPoly { terms, degree, ctx: ctx.clone() }
    }

    pub fn ctx(&self) -> &F::Ctx {
        &self.ctx
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Exp3, F> {
        &self.terms
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

    pub fn coeff(&self, e: &Exp3) -> F {
        self.terms.get(e).cloned().unwrap_or_else(|| F::zero(&self.ctx))
    }

    pub fn leading(&self) -> Option<(&Exp3, &F)> {
        self.terms.iter().next_back()
    }

    /// Scaled so the graded-lex leading coefficient is 1.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inv().expect("nonzero coefficient")),
        }
    }

    /// c·self for a scalar c ≠ 0 equal to other? Returns c when so.
    pub fn proportional_to(&self, other: &Self) -> Option<F> {
        if self.degree != other.degree || self.terms.len() != other.terms.len() {
            return None;
        }
        let (e, a) = self.leading()?;
        let b = other.terms.get(e)?;
        let c = a.div(b).ok()?;
        for (e, a) in &self.terms {
            match other.terms.get(e) {
                Some(b) if b.mul(&c) == *a => {}
                _ => return None,
            }
        }
        Some(c)
    }

    fn check_same_degree(&self, o: &Self) {
        assert!(
            self.degree == o.degree || self.is_zero() || o.is_zero(),
            "adding homogeneous polynomials of degrees {} and {}",
            self.degree,
            o.degree
        );
    }

    /// # Panics
    /// If both operands are nonzero and their degrees differ.
    pub fn add(&self, o: &Self) -> Self {
        self.check_same_degree(o);
        if self.is_zero() {
            return o.clone();
        }
        let mut t = self.terms.clone();
        for (e, c) in &o.terms {
            match t.get_mut(e) {
                Some(v) => *v = v.add(c),
                None => {
                    t.insert(*e, c.clone());
                }
            }
        }
        HPoly::from_map(t, self.degree, &self.ctx)
    }

    /// # Panics
    /// If both operands are nonzero and their degrees differ.
    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        let t = self.terms.iter().map(|(e, c)| (*e, c.neg())).collect();
        HPoly { terms: t, degree: self.degree, ctx: self.ctx.clone() }
    }

    pub fn scale(&self, c: &F) -> Self {
        let t = self.terms.iter().map(|(e, a)| (*e, a.mul(c))).collect();
        HPoly::from_map(t, self.degree, &self.ctx)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let degree = self.degree + o.degree;
        if self.is_zero() || o.is_zero() {
            return HPoly::zero(degree, &self.ctx);
        }
        let mut acc: HashMap<Exp3, F> = HashMap::with_capacity(self.len() * o.len());
        for (ea, a) in &self.terms {
            for (eb, b) in &o.terms {
                let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]];
                let p = a.mul(b);
                match acc.get_mut(&e) {
                    Some(v) => *v = v.add(&p),
                    None => {
                        acc.insert(e, p);
                    }
                }
            }
        }
        HPoly::from_map(acc.into_iter().collect(), degree, &self.ctx)
    }

    pub fn mul_monomial(&self, m: Exp3) -> Self {
        let t = self.terms.iter().map(|(e, c)| ([e[0] + m[0], e[1] + m[1], e[2] + m[2]], c.clone())).collect();
        HPoly { terms: t, degree: self.degree + deg3(&m), ctx: self.ctx.clone() }
    }

    pub fn pow(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = HPoly::constant(F::one(&self.ctx));
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

    pub fn eval(&self, p: &[F; 3]) -> F {
        let mut pows: [Vec<F>; 3] = Default::default();
        for i in 0..3 {
            let mut v = vec![F::one(&self.ctx)];
            for k in 0..self.degree as usize {
                let next = v[k].mul(&p[i]);
                v.push(next);
            }
            pows[i] = v;
        }
        let mut acc = F::zero(&self.ctx);
        for (e, c) in &self.terms {
            let t = c.mul(&pows[0][e[0] as usize]).mul(&pows[1][e[1] as usize]).mul(&pows[2][e[2] as usize]);
            acc = acc.add(&t);
        }
        acc
    }

    /// self(f0, f1, f2); the fi must share one degree.
    pub fn subst(&self, f: &[HPoly<F>; 3]) -> Result<Self> {
        let d = f[0].degree;
        if f[1].degree != d || f[2].degree != d {
            return Err(Error::DegreeMismatch(format!(
                "substituting forms of degrees {}, {}, {}",
                f[0].degree, f[1].degree, f[2].degree
            )));
        }
        let n = self.degree;
        let out_deg = n * d;
        if self.is_zero() {
            return Ok(HPoly::zero(out_deg, &self.ctx));
        }
        // powers of f2, built lazily up to n
        let mut zpow = vec![HPoly::constant(F::one(&self.ctx))];
        for k in 1..=n as usize {
            let next = zpow[k - 1].mul(&f[2]);
            zpow.push(next);
        }
        // group coefficients by e0, then e1
        let mut grouped: BTreeMap<u32, BTreeMap<u32, F>> = BTreeMap::new();
        for (e, c) in &self.terms {
            grouped.entry(e[0]).or_default().insert(e[1], c.clone());
        }
        // B_k = Σ_j c_{k,j} f1^j f2^{n-k-j}, by Horner in f1
        let inner = |k: u32| -> HPoly<F> {
            let m = n - k;
            let row = match grouped.get(&k) {
                Some(r) => r,
                None => return HPoly::zero(m * d, &self.ctx),
            };
            let mut acc = match row.get(&m) {
                Some(c) => HPoly::constant(c.clone()),
                None => HPoly::zero(0, &self.ctx),
            };
            for j in (0..m).rev() {
                acc = acc.mul(&f[1]);
                if let Some(c) = row.get(&j) {
                    acc = acc.add(&zpow[(m - j) as usize].scale(c));
                }
            }
            acc
        };
        let mut acc = inner(n);
        for k in (0..n).rev() {
            acc = acc.mul(&f[0]).add(&inner(k));
        }
        acc.degree = out_deg;
        Ok(acc)
    }

    /// Exact quotient; fails with the first non-divisible remainder term.
    pub fn div_exact(&self, b: &Self) -> Result<Self> {
        if b.is_zero() {
            return Err(Error::ZeroInverse);
        }
        if self.is_zero() {
            return Ok(HPoly::zero(self.degree.saturating_sub(b.degree), &self.ctx));
        }
        if b.degree > self.degree {
            let (e, c) = self.leading().unwrap();
            return Err(Error::NotDivisible { witness: format_term(e, c) });
        }
        let (be, bc) = b.leading().map(|(e, c)| (*e, c.clone())).unwrap();
        let binv = bc.inv()?;
        let qdeg = self.degree - b.degree;
        let mut r = self.terms.clone();
        let mut q = BTreeMap::new();
        while let Some((re, rc)) = r.iter().next_back().map(|(e, c)| (*e, c.clone())) {
            if re[0] < be[0] || re[1] < be[1] || re[2] < be[2] {
                return Err(Error::NotDivisible { witness: format_term(&re, &rc) });
            }
            let me = [re[0] - be[0], re[1] - be[1], re[2] - be[2]];
            let mc = rc.mul(&binv);
            for (e, c) in &b.terms {
                let t = [e[0] + me[0], e[1] + me[1], e[2] + me[2]];
                let v = match r.get(&t) {
                    Some(x) => x.sub(&mc.mul(c)),
                    None => mc.mul(c).neg(),
                };
                if v.is_zero() {
                    r.remove(&t);
                } else {
                    r.insert(t, v);
                }
            }
            q.insert(me, mc);
        }
        Ok(HPoly { terms: q, degree: qdeg, ctx: self.ctx.clone() })
    }

    pub fn divides(&self, a: &Self) -> bool {
        a.div_exact(self).is_ok()
    }

    /// Largest k with x_i^k dividing self.
    pub fn var_valuation(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i]).min().unwrap_or(0)
    }

    /// Divides by x_i^k (k at most the valuation).
    pub fn div_var_power(&self, i: usize, k: u32) -> Self {
        let t = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut e2 = *e;
                e2[i] -= k;
                (e2, c.clone())
            })
            .collect();
        HPoly { terms: t, degree: self.degree - k, ctx: self.ctx.clone() }
    }

    /// Partial derivative with respect to x_i.
    pub fn partial(&self, i: usize) -> Self {
        let mut t = BTreeMap::new();
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut e2 = *e;
                e2[i] -= 1;
                t.insert(e2, c.mul(&F::from_i64(&self.ctx, e[i] as i64)));
            }
        }
        HPoly::from_map(t, self.degree.saturating_sub(1), &self.ctx)
    }

    /// Affine polynomial in x = x1/x0, y = x2/x0.
    pub fn dehomogenize(&self) -> APoly<F> {
        APoly::from_terms(self.terms.iter().map(|(e, c)| ((e[1], e[2]), c.clone())), &self.ctx)
    }

    /// Restriction keeping only x_i = 0 terms (sets x_i to zero).
    pub fn set_var_zero(&self, i: usize) -> Self {
        let t = self.terms.iter().filter(|(e, _)| e[i] == 0).map(|(e, c)| (*e, c.clone())).collect();
        HPoly { terms: t, degree: self.degree, ctx: self.ctx.clone() }
    }

    pub fn map<G: Field>(&self, ctx: &G::Ctx, f: impl Fn(&F) -> G) -> HPoly<G> {
        HPoly::from_map(self.terms.iter().map(|(e, c)| (*e, f(c))).collect(), self.degree, ctx)
    }

    pub fn try_map<G: Field>(&self, ctx: &G::Ctx, f: impl Fn(&F) -> Result<G>) -> Result<HPoly<G>> {
        let mut t = BTreeMap::new();
        for (e, c) in &self.terms {
            t.insert(*e, f(c)?);
        }
        Ok(HPoly::from_map(t, self.degree, ctx))
    }
}

fn format_term<F: Field>(e: &Exp3, c: &F) -> String {
    let mut s = format!("{c}");
    for (i, k) in e.iter().enumerate() {
        match k {
            0 => {}
            1 => s.push_str(&format!("*x{i}")),
            _ => s.push_str(&format!("*x{i}^{k}")),
        }
    }
    s
}

impl<F: Field> fmt::Display for HPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if e == &[0, 0, 0] {
                write!(f, "{c}")?;
                continue;
            }
            if !c.is_one() {
                write!(f, "({c})*")?;
            }
            let mut first = true;
            for (j, k) in e.iter().enumerate() {
                if *k == 0 {
                    continue;
                }
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                if *k == 1 {
                    write!(f, "x{j}")?;
                } else {
                    write!(f, "x{j}^{k}")?;
                }
            }
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for HPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat::Rat;

    fn h(terms: &[(Exp3, i64)]) -> HPoly<Rat> {
        let d = deg3(&terms[0].0);
        HPoly::from_terms(terms.iter().map(|(e, c)| (*e, Rat::int(*c))), d, &()).unwrap()
    }

    fn x(i: usize) -> HPoly<Rat> {
        HPoly::var(i, &())
    }

    #[test]
    fn exact_division() {
        let a = h(&[([2, 1, 0], 1)]);
        assert_eq!(a.div_exact(&x(0)).unwrap(), h(&[([1, 1, 0], 1)]));
        let z = HPoly::<Rat>::zero(3, &());
        assert!(z.div_exact(&x(0)).unwrap().is_zero());
        let l = h(&[([1, 0, 0], 3), ([0, 0, 1], 1)]);
        let m = l.mul(&x(0).add(&x(1)));
        assert_eq!(m.div_exact(&l).unwrap(), x(0).add(&x(1)));
        assert!(matches!(x(1).mul(&x(1)).div_exact(&x(0)), Err(Error::NotDivisible { .. })));
    }

    #[test]
    fn substitution() {
        let c = x(0).add(&x(1)).add(&x(2));
        let id = [x(0), x(1), x(2)];
        assert_eq!(c.subst(&id).unwrap(), c);
        let m = x(0).mul(&x(1)).mul(&x(2));
        let j = [x(1).mul(&x(2)), x(0).mul(&x(2)), x(0).mul(&x(1))];
        assert_eq!(m.subst(&j).unwrap(), m.pow(2));
        assert!(matches!(c.subst(&[x(0), x(1), x(2).mul(&x(2))]), Err(Error::DegreeMismatch(_))));
    }

    #[test]
    fn leading_term_is_graded_lex() {
        let p = h(&[([0, 2, 0], 5), ([1, 0, 1], 2)]);
        assert_eq!(p.leading().unwrap().0, &[1, 0, 1]);
        assert_eq!(p.monic().coeff(&[0, 2, 0]), Rat::new(5, 2));
    }
}
