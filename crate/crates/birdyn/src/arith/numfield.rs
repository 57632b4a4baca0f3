use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use super::field::Field;
use super::fp::Fp;
use super::rat::Rat;
use super::upoly::UPoly;
use crate::error::{Error, Result};

/// Q[α]/(m(α)) for a monic m, assumed irreducible. Degree 1 is Q itself.
#[derive(Clone, PartialEq)]
pub struct NumberField {
    modulus: UPoly<Rat>,
    degree: usize,
    // α^(degree + i) reduced to the power basis, i = 0..degree-1
    reduction: Vec<Vec<Rat>>,
}

impl NumberField {
    pub fn new(modulus: UPoly<Rat>) -> Result<Arc<Self>> {
        let degree = modulus
            .degree()
            .filter(|&d| d >= 1)
            .ok_or_else(|| Error::validation("modulus", "degree must be at least 1"))?;
        if !modulus.lc().is_one() {
            return Err(Error::validation("modulus", "must be monic"));
        }
        let mut reduction = Vec::with_capacity(degree);
        // α^d = -(m_0 + m_1 α + ... + m_{d-1} α^{d-1})
        let mut cur: Vec<Rat> = modulus.coeffs()[..degree].iter().map(|c| c.neg()).collect();
        for _ in 0..degree.saturating_sub(1).max(1) {
            reduction.push(cur.clone());
            // multiply by α and reduce
            let top = cur[degree - 1].clone();
            let mut next = vec![Rat::zero(); degree];
            for i in 1..degree {
                next[i] = cur[i - 1].clone();
            }
            if !top.is_zero() {
                for i in 0..degree {
                    next[i] = next[i].add(&top.mul(&reduction[0][i]));
                }
            }
            cur = next;
        }
        Ok(Arc::new(NumberField { modulus, degree, reduction }))
    }

    pub fn from_rats(cs: Vec<Rat>) -> Result<Arc<Self>> {
        NumberField::new(UPoly::new(cs, &()))
    }

    pub fn from_i64s(cs: &[i64]) -> Result<Arc<Self>> {
        NumberField::new(UPoly::from_i64s(cs, &()))
    }

    pub fn rationals() -> Arc<Self> {
        NumberField::from_i64s(&[0, 1]).unwrap()
    }

    pub fn modulus(&self) -> &UPoly<Rat> {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_rational(&self) -> bool {
        self.degree == 1
    }

    pub fn modulus_strings(&self) -> Vec<String> {
        self.modulus.coeffs().iter().map(|c| c.to_string()).collect()
    }
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[a]/({})", self.modulus)
    }
}

/// Element of a number field in the power basis 1, α, …, α^{d-1}.
#[derive(Clone)]
pub struct FieldElem {
    field: Arc<NumberField>,
    coeffs: Vec<Rat>,
}

impl PartialEq for FieldElem {
    fn eq(&self, o: &Self) -> bool {
        self.coeffs == o.coeffs && (Arc::ptr_eq(&self.field, &o.field) || self.field == o.field)
    }
}

impl Eq for FieldElem {}

impl FieldElem {
    pub fn from_coeffs(field: &Arc<NumberField>, mut coeffs: Vec<Rat>) -> Result<Self> {
        if coeffs.len() > field.degree {
            let p = UPoly::new(coeffs, &()).rem(field.modulus())?;
            coeffs = p.into_coeffs();
        }
        coeffs.resize(field.degree, Rat::zero());
        Ok(FieldElem { field: field.clone(), coeffs })
    }

    pub fn from_rat(field: &Arc<NumberField>, r: Rat) -> Self {
        let mut coeffs = vec![Rat::zero(); field.degree];
        coeffs[0] = r;
        FieldElem { field: field.clone(), coeffs }
    }

    /// The generator α (for Q this is the root of the modulus, a rational).
    pub fn generator(field: &Arc<NumberField>) -> Self {
        if field.degree == 1 {
            return FieldElem::from_rat(field, field.modulus.coeff(0).neg());
        }
        let mut coeffs = vec![Rat::zero(); field.degree];
        coeffs[1] = Rat::one();
        FieldElem { field: field.clone(), coeffs }
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn as_rational(&self) -> Option<&Rat> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    pub fn as_upoly(&self) -> UPoly<Rat> {
        UPoly::new(self.coeffs.clone(), &())
    }

    /// Largest bit height over the coefficients.
    pub fn height_bits(&self) -> u64 {
        self.coeffs.iter().map(|c| c.height_bits()).max().unwrap_or(0)
    }

    /// Image under α ↦ root in F_p. Fails if p divides a denominator.
    pub fn embed(&self, root: Fp) -> Result<Fp> {
        let p = root.p;
        let mut acc = Fp::zero(&p);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&root).add(&Fp::from_rat(c, p)?);
        }
        Ok(acc)
    }

    /// Parses "n/d" or "[c0, c1, ...]".
    pub fn parse(field: &Arc<NumberField>, s: &str) -> Result<Self> {
        let t = s.trim();
        if let Some(inner) = t.strip_prefix('[') {
            let inner = inner
                .strip_suffix(']')
                .ok_or_else(|| Error::parse(t.to_string(), "unterminated element list"))?;
            let cs = inner
                .split(',')
                .filter(|p| !p.trim().is_empty())
                .map(Rat::from_str)
                .collect::<Result<Vec<_>>>()?;
            if cs.len() > field.degree {
                return Err(Error::parse(
                    t.to_string(),
                    format!("{} coefficients for a field of degree {}", cs.len(), field.degree),
                ));
            }
            FieldElem::from_coeffs(field, cs)
        } else {
            Ok(FieldElem::from_rat(field, Rat::from_str(t)?))
        }
    }

    fn mul_general(&self, o: &Self) -> Self {
        let d = self.field.degree;
        let mut prod = vec![Rat::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] = prod[i + j].add(&a.mul(b));
                }
            }
        }
        let mut out: Vec<Rat> = prod[..d].to_vec();
        for (k, c) in prod[d..].iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (i, r) in self.field.reduction[k].iter().enumerate() {
                if !r.is_zero() {
                    out[i] = out[i].add(&c.mul(r));
                }
            }
        }
        FieldElem { field: self.field.clone(), coeffs: out }
    }
}

impl Field for FieldElem {
    type Ctx = Arc<NumberField>;

    fn ctx(&self) -> Arc<NumberField> {
        self.field.clone()
    }
    fn zero(k: &Arc<NumberField>) -> Self {
        FieldElem { field: k.clone(), coeffs: vec![Rat::zero(); k.degree] }
    }
    fn one(k: &Arc<NumberField>) -> Self {
        FieldElem::from_rat(k, Rat::one())
    }
    fn from_i64(k: &Arc<NumberField>, n: i64) -> Self {
        FieldElem::from_rat(k, Rat::int(n))
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
    fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }
    fn add(&self, o: &Self) -> Self {
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.add(b)).collect();
        FieldElem { field: self.field.clone(), coeffs }
    }
    fn sub(&self, o: &Self) -> Self {
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.sub(b)).collect();
        FieldElem { field: self.field.clone(), coeffs }
    }
    fn mul(&self, o: &Self) -> Self {
        if self.field.degree == 1 {
            return FieldElem { field: self.field.clone(), coeffs: vec![self.coeffs[0].mul(&o.coeffs[0])] };
        }
        self.mul_general(o)
    }
    fn neg(&self) -> Self {
        FieldElem { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| c.neg()).collect() }
    }
    fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroInverse);
        }
        if self.field.degree == 1 {
            return Ok(FieldElem { field: self.field.clone(), coeffs: vec![self.coeffs[0].inv()?] });
        }
        let (g, s, _) = self.as_upoly().ext_gcd(self.field.modulus())?;
        if g.degree() != Some(0) {
            return Err(Error::ReducibleModulus { factor: g.to_string() });
        }
        FieldElem::from_coeffs(&self.field, s.into_coeffs())
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.degree == 1 {
            return write!(f, "{}", self.coeffs[0]);
        }
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn elem(k: &Arc<NumberField>, cs: &[i64]) -> FieldElem {
        FieldElem::from_coeffs(k, cs.iter().map(|&c| Rat::int(c)).collect()).unwrap()
    }

    #[test]
    fn rational_inverse() {
        let q = NumberField::rationals();
        let a = FieldElem::from_rat(&q, Rat::new(3, 4));
        assert_eq!(a.inv().unwrap(), FieldElem::from_rat(&q, Rat::new(4, 3)));
    }

    #[test]
    fn gaussian_inverse() {
        let k = NumberField::from_i64s(&[1, 0, 1]).unwrap();
        let i = FieldElem::generator(&k);
        assert_eq!(i.inv().unwrap(), i.neg());
    }

    #[test]
    fn ninth_root_inverse() {
        let k = NumberField::from_i64s(&[1, 0, 0, 1, 0, 0, 1]).unwrap();
        let a = FieldElem::generator(&k);
        let expected = elem(&k, &[0, 0, -1, 0, 0, -1]);
        assert_eq!(a.inv().unwrap(), expected);
        assert!(a.mul(&expected).is_one());
    }

    #[test]
    fn reducible_modulus_detected() {
        // x^2 - 1 = (x-1)(x+1)
        let k = NumberField::from_i64s(&[-1, 0, 1]).unwrap();
        let a = elem(&k, &[-1, 1]);
        assert!(matches!(a.inv(), Err(Error::ReducibleModulus { .. })));
    }

    #[test]
    fn parse_print() {
        let k = NumberField::from_i64s(&[1, 0, 1]).unwrap();
        let a = FieldElem::parse(&k, "[1/2, -3]").unwrap();
        assert_eq!(a.to_string(), "[1/2, -3]");
        assert_eq!(FieldElem::parse(&k, "5").unwrap().to_string(), "[5, 0]");
        assert!(FieldElem::parse(&k, "[1, 2, 3]").is_err());
    }

    #[test]
    fn high_powers_reduce() {
        let k = NumberField::from_i64s(&[1, 0, 0, 1, 0, 0, 1]).unwrap();
        let a = FieldElem::generator(&k);
        assert!(a.pow(9).is_one());
        assert!(!a.pow(3).is_one());
    }
}
