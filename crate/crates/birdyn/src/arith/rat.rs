use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::Field;
use crate::error::{Error, Result};

/// Exact rational number, always in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rat(pub BigRational);

impl Rat {
    pub fn new(n: impl Into<BigInt>, d: impl Into<BigInt>) -> Self {
        Rat(BigRational::new(n.into(), d.into()))
    }

    pub fn int(n: impl Into<BigInt>) -> Self {
        Rat(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Rat(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Rat {
        Rat(self.0.abs())
    }

    pub fn signum(&self) -> i32 {
        if self.0.is_zero() {
            0
        } else if self.0.is_positive() {
            1
        } else {
            -1
        }
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Bit length of numerator plus denominator, used as a height budget.
    pub fn height_bits(&self) -> u64 {
        self.numer().bits() + self.denom().bits()
    }

    /// Simplest rational (smallest denominator) in the closed interval.
    pub fn simplest_between(lo: &Rat, hi: &Rat) -> Rat {
        debug_assert!(lo <= hi);
        if lo.signum() <= 0 && hi.signum() >= 0 {
            return Rat::zero();
        }
        if hi.signum() < 0 {
            return Rat::simplest_between(&hi.neg(), &lo.neg()).neg();
        }
        // Stern-Brocot descent on positive intervals.
        let fl = lo.floor();
        let fl_r = Rat::int(fl.clone());
        if fl_r == *lo {
            return fl_r;
        }
        if Rat::int(&fl + 1u32) <= *hi {
            return Rat::int(fl + 1u32);
        }
        let inner = Rat::simplest_between(&hi.sub(&fl_r).inv_unchecked(), &lo.sub(&fl_r).inv_unchecked());
        fl_r.add(&inner.inv_unchecked())
    }

    fn inv_unchecked(&self) -> Rat {
        Rat(self.0.recip())
    }
}

impl Field for Rat {
    type Ctx = ();

    fn ctx(&self) {}
    fn zero(_: &()) -> Self {
        Rat::zero()
    }
    fn one(_: &()) -> Self {
        Rat::one()
    }
    fn from_i64(_: &(), n: i64) -> Self {
        Rat::int(n)
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn is_one(&self) -> bool {
        self.0.is_one()
    }
    fn add(&self, o: &Self) -> Self {
        Rat(&self.0 + &o.0)
    }
    fn sub(&self, o: &Self) -> Self {
        Rat(&self.0 - &o.0)
    }
    fn mul(&self, o: &Self) -> Self {
        Rat(&self.0 * &o.0)
    }
    fn neg(&self) -> Self {
        Rat(-&self.0)
    }
    fn inv(&self) -> Result<Self> {
        if self.0.is_zero() {
            Err(Error::ZeroInverse)
        } else {
            Ok(Rat(self.0.recip()))
        }
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::parse(s.to_string(), "expected an integer or n/d");
        match s.split_once('/') {
            Some((n, d)) => {
                let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
                let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(Error::parse(s.to_string(), "zero denominator"));
                }
                Ok(Rat::new(n, d))
            }
            None => Ok(Rat::int(BigInt::from_str(s).map_err(|_| bad())?)),
        }
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Self {
        Rat::int(n)
    }
}

/// Rational reconstruction of `a` modulo `m`: returns n/d with |n|, d below
/// sqrt(m/2), or `None` when no such fraction exists.
pub fn rational_reconstruct(a: &BigInt, m: &BigInt) -> Option<Rat> {
    let a = a.mod_floor(m);
    let bound = (m / 2u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), a);
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        r0 = std::mem::replace(&mut r1, r2);
        let t2 = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    if !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(Rat::new(r1, t1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_prints() {
        let r: Rat = "6/-8".parse().unwrap();
        assert_eq!(r.to_string(), "-3/4");
        assert_eq!("12".parse::<Rat>().unwrap().to_string(), "12");
        assert!("1/0".parse::<Rat>().is_err());
    }

    #[test]
    fn inverse() {
        assert_eq!(Rat::new(3, 4).inv().unwrap(), Rat::new(4, 3));
        assert_eq!(Rat::zero().inv(), Err(Error::ZeroInverse));
    }

    #[test]
    fn simplest_rational() {
        assert_eq!(Rat::simplest_between(&Rat::new(3, 10), &Rat::new(2, 5)), Rat::new(1, 3));
        assert_eq!(Rat::simplest_between(&Rat::new(-7, 3), &Rat::new(-2, 1)), Rat::int(-2));
        assert_eq!(Rat::simplest_between(&Rat::new(1, 7), &Rat::new(1, 7)), Rat::new(1, 7));
    }

    #[test]
    fn reconstruction() {
        let m = BigInt::from(1_000_000_007u64);
        let x = Rat::new(-22, 7);
        let inv7 = BigInt::from(7).modpow(&(&m - 2u32), &m);
        let a = (BigInt::from(-22) * inv7).mod_floor(&m);
        assert_eq!(rational_reconstruct(&a, &m), Some(x));
    }
}
