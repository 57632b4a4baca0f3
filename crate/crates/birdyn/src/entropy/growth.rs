use std::fmt;

use crate::arith::cyclo::cyclotomic_test;
use crate::arith::factor::squarefree_decomp;
use crate::arith::sturm::{largest_real_root, Sturm};
use crate::arith::{Field, Rat, UPoly};
use crate::error::{Error, Result};

/// Width of δ intervals unless asked otherwise.
pub fn default_tolerance() -> Rat {
    Rat::new(1, 1_000_000_000)
}

#[derive(Clone, Debug, PartialEq)]
pub enum GrowthClass {
    Bounded { period: Option<u64> },
    Linear,
    Quadratic,
    /// δ in [lo, hi]; `poly` is the squarefree factor of the annihilator carrying δ.
    Exponential { lo: Rat, hi: Rat, poly: UPoly<Rat> },
}

impl GrowthClass {
    pub fn name(&self) -> &'static str {
        match self {
            GrowthClass::Bounded { .. } => "Bounded",
            GrowthClass::Linear => "Linear",
            GrowthClass::Quadratic => "Quadratic",
            GrowthClass::Exponential { .. } => "Exponential",
        }
    }

    pub fn period(&self) -> Option<u64> {
        match self {
            GrowthClass::Bounded { period } => *period,
            _ => None,
        }
    }

    /// Same class, ignoring the δ interval width.
    pub fn same_kind(&self, o: &GrowthClass) -> bool {
        match (self, o) {
            (GrowthClass::Exponential { lo: a, hi: b, .. }, GrowthClass::Exponential { lo: c, hi: d, .. }) => a <= d && c <= b,
            _ => self == o,
        }
    }
}

impl fmt::Display for GrowthClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GrowthClass::Bounded { period: Some(n) } => write!(f, "Bounded (period {n})"),
            GrowthClass::Exponential { lo, hi, .. } => {
                write!(f, "Exponential (delta in [{:.10}, {:.10}])", lo.to_f64(), hi.to_f64())
            }
            c => f.write_str(c.name()),
        }
    }
}

pub(crate) fn to_rats(d: &[u64]) -> Vec<Rat> {
    d.iter().map(|&v| Rat::int(v)).collect()
}

/// Whether p, read as a recurrence, kills every window of d that fits.
pub fn annihilates(p: &UPoly<Rat>, d: &[Rat]) -> bool {
    let Some(deg) = p.degree() else { return false };
    let cs = p.coeffs();
    (deg..d.len()).all(|n| {
        let mut acc = Rat::zero();
        for (i, c) in cs.iter().enumerate() {
            acc = acc.add(&c.mul(&d[n - deg + i]));
        }
        acc.is_zero()
    })
}

/// Minimal monic annihilator of d by Berlekamp–Massey.
pub fn fit_recurrence(d: &[u64]) -> Result<UPoly<Rat>> {
    if d.len() < 4 {
        return Err(Error::InvalidParameter(format!("need at least 4 terms, got {}", d.len())));
    }
    let s = to_rats(d);
    let (mut c, mut b) = (vec![Rat::one()], vec![Rat::one()]);
    let (mut l, mut m, mut bd) = (0usize, 1usize, Rat::one());
    for n in 0..s.len() {
        let mut disc = s[n].clone();
        for i in 1..=l.min(c.len() - 1) {
            disc = disc.add(&c[i].mul(&s[n - i]));
        }
        if disc.is_zero() {
            m += 1;
            continue;
        }
        let coef = disc.div(&bd).unwrap();
        let prev = c.clone();
        if c.len() < b.len() + m {
            c.resize(b.len() + m, Rat::zero());
        }
        for (i, bi) in b.iter().enumerate() {
            c[i + m] = c[i + m].sub(&coef.mul(bi));
        }
        if 2 * l <= n {
            l = n + 1 - l;
            b = prev;
            bd = disc;
            m = 1;
        } else {
            m += 1;
        }
    }
    c.resize(l + 1, Rat::zero());
    c.reverse();
    let p = UPoly::new(c, &());
    if 2 * l > d.len() {
        return Err(Error::InsufficientData {
            order: l,
            len: d.len(),
            provisional: p.coeffs().iter().map(|c| c.to_string()).collect(),
        });
    }
    Ok(p)
}

/// Drops factors of p while what remains still annihilates d with at least
/// as many checked windows as its degree.
fn reduce(p: &UPoly<Rat>, d: &[Rat]) -> (Vec<(UPoly<Rat>, usize)>, UPoly<Rat>) {
    let mut parts = squarefree_decomp(p);
    let product = |parts: &[(UPoly<Rat>, usize)]| {
        parts.iter().fold(UPoly::one(&()), |acc, (f, m)| acc.mul(&f.pow(*m as u32)))
    };
    for i in 0..parts.len() {
        while parts[i].1 > 0 {
            parts[i].1 -= 1;
            let q = product(&parts);
            let deg = q.degree().unwrap_or(0);
            if d.len() >= 2 * deg && annihilates(&q, d) {
                continue;
            }
            parts[i].1 += 1;
            break;
        }
    }
    parts.retain(|(_, m)| *m > 0);
    let q = product(&parts);
    (parts, q)
}

/// Growth of d given an annihilator of it; multiplicities the data does not
/// need are removed first.
pub fn classify_growth(p: &UPoly<Rat>, d: &[u64]) -> Result<GrowthClass> {
    let s = to_rats(d);
    if p.is_zero() || !annihilates(p, &s) {
        return Err(Error::validation("annihilator", "does not annihilate the sequence"));
    }
    let (parts, q) = reduce(p, &s);
    let tol = default_tolerance();
    if let Some((lo, hi)) = largest_real_root(&q, &tol) {
        let carrier = parts
            .iter()
            .map(|(f, _)| f.clone())
            .find(|f| Sturm::new(f).count(&lo, &hi) > 0)
            .unwrap_or_else(|| q.squarefree_part());
        return Ok(GrowthClass::Exponential { lo, hi, poly: carrier });
    }
    let mut period = 1u64;
    let mut top = 0usize;
    for (f, m) in &parts {
        // roots at 0 only shift the start of the recurrence
        if *f == UPoly::x(&()) {
            continue;
        }
        let n = cyclotomic_test(f).ok_or_else(|| Error::UnclassifiableSpectrum { factor: f.to_string() })?;
        period = num_integer::lcm(period, n);
        top = top.max(*m);
    }
    match top {
        0 | 1 => Ok(GrowthClass::Bounded { period: (top == 1).then_some(period) }),
        2 => Ok(GrowthClass::Linear),
        3 => Ok(GrowthClass::Quadratic),
        _ => Err(Error::UnclassifiableSpectrum { factor: format!("(x - 1)^{top} growth beyond quadratic") }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(cs: &[i64]) -> UPoly<Rat> {
        UPoly::from_i64s(cs, &())
    }

    #[test]
    fn recurrences() {
        assert_eq!(fit_recurrence(&[1, 2, 2, 3, 3, 4, 4, 5]).unwrap(), q(&[1, -1, -1, 1]));
        assert_eq!(fit_recurrence(&[1, 1, 1, 1]).unwrap(), q(&[-1, 1]));
        assert_eq!(fit_recurrence(&[1, 2, 3, 5, 8, 13]).unwrap(), q(&[-1, -1, 1]));
        assert!(matches!(fit_recurrence(&[1, 0, 0, 0, 0, 1]), Err(Error::InsufficientData { .. })));
    }

    #[test]
    fn linear_family_b() {
        let d = [1, 2, 2, 3, 3, 4, 4, 5, 5, 6];
        assert_eq!(classify_growth(&q(&[1, -1, -1, 1]), &d).unwrap(), GrowthClass::Linear);
    }

    #[test]
    fn spare_multiplicity_is_dropped() {
        // d_n = n² + 1 under (x − 1)⁴ (x + 1)² (x² + 1)(x² + x + 1)
        let d: Vec<u64> = (0..40).map(|n| n * n + 1).collect();
        let p = q(&[-1, 1]).pow(4).mul(&q(&[1, 1]).pow(2)).mul(&q(&[1, 0, 1])).mul(&q(&[1, 1, 1]));
        assert_eq!(classify_growth(&p, &d).unwrap(), GrowthClass::Quadratic);
    }

    #[test]
    fn periodic() {
        // (x⁴ − 1)(x − 1)(x + 1) with period-4 data
        let p = q(&[1, 0, -1, 0, -1, 0, 1]);
        let d: Vec<u64> = (0..24).map(|n| [1, 2, 3, 2][n % 4]).collect();
        assert_eq!(classify_growth(&p, &d).unwrap(), GrowthClass::Bounded { period: Some(4) });
    }

    #[test]
    fn exponential() {
        let d = [1, 2, 3, 5, 8, 13, 21, 34];
        let GrowthClass::Exponential { lo, hi, poly } = classify_growth(&q(&[-1, -1, 1]), &d).unwrap() else {
            panic!()
        };
        assert!(lo.to_f64() < 1.6180339888 && hi.to_f64() > 1.6180339887);
        assert_eq!(poly, q(&[-1, -1, 1]));
    }

    #[test]
    fn wrong_annihilator_rejected() {
        assert!(classify_growth(&q(&[-1, 1]), &[1, 2, 3, 4]).is_err());
    }
}
