use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use rand::Rng;

use super::field::Field;
use super::rat::Rat;
use crate::error::{Error, Result};

/// Element of the prime field F_p, p < 2^63.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    pub v: u64,
    pub p: u64,
}

#[inline]
pub fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % q == 0 {
            return n == q;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Random prime in [2^(bits-1), 2^bits).
pub fn random_prime<R: Rng>(rng: &mut R, bits: u32) -> u64 {
    assert!((8..=62).contains(&bits));
    loop {
        let c = rng.gen_range((1u64 << (bits - 1))..(1u64 << bits)) | 1;
        if is_prime(c) {
            return c;
        }
    }
}

impl Fp {
    pub fn new(v: u64, p: u64) -> Self {
        Fp { v: v % p, p }
    }

    pub fn from_bigint(n: &BigInt, p: u64) -> Self {
        let r = n.mod_floor(&BigInt::from(p));
        Fp { v: r.to_u64().unwrap(), p }
    }

    /// Image of a rational under reduction mod p; fails if p divides the denominator.
    pub fn from_rat(r: &Rat, p: u64) -> Result<Self> {
        let d = Fp::from_bigint(r.denom(), p);
        Fp::from_bigint(r.numer(), p).div(&d)
    }

    /// Symmetric representative in (-p/2, p/2].
    pub fn signed(&self) -> i64 {
        if self.v > self.p / 2 {
            -((self.p - self.v) as i64)
        } else {
            self.v as i64
        }
    }
}

impl Field for Fp {
    type Ctx = u64;

    fn ctx(&self) -> u64 {
        self.p
    }
    fn zero(p: &u64) -> Self {
        Fp { v: 0, p: *p }
    }
    fn one(p: &u64) -> Self {
        Fp { v: 1 % *p, p: *p }
    }
    fn from_i64(p: &u64, n: i64) -> Self {
        let pi = *p as i128;
        Fp { v: (n as i128).rem_euclid(pi) as u64, p: *p }
    }
    fn is_zero(&self) -> bool {
        self.v == 0
    }
    fn is_one(&self) -> bool {
        self.v == 1
    }
    #[inline]
    fn add(&self, o: &Self) -> Self {
        let s = self.v as u128 + o.v as u128;
        Fp { v: (s % self.p as u128) as u64, p: self.p }
    }
    #[inline]
    fn sub(&self, o: &Self) -> Self {
        let v = if self.v >= o.v { self.v - o.v } else { self.p - (o.v - self.v) };
        Fp { v, p: self.p }
    }
    #[inline]
    fn mul(&self, o: &Self) -> Self {
        Fp { v: mulmod(self.v, o.v, self.p), p: self.p }
    }
    fn neg(&self) -> Self {
        Fp { v: if self.v == 0 { 0 } else { self.p - self.v }, p: self.p }
    }
    fn inv(&self) -> Result<Self> {
        if self.v == 0 {
            return Err(Error::ZeroInverse);
        }
        Ok(Fp { v: powmod(self.v, self.p - 2, self.p), p: self.p })
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.v, self.p)
    }
}

/// Chinese remaindering of `a mod m` with `b mod p`, result in [0, m*p).
pub fn crt(a: &BigInt, m: &BigInt, b: u64, p: u64) -> BigInt {
    let am = Fp::from_bigint(a, p);
    let mm = Fp::from_bigint(m, p);
    let t = Fp::new(b, p).sub(&am).mul(&mm.inv().expect("moduli coprime"));
    let r = a + m * BigInt::from(t.v);
    let mp = m * BigInt::from(p);
    if r.is_negative() {
        r.mod_floor(&mp)
    } else {
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn primality() {
        assert!(is_prime(2));
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(1_000_000_007u64 * 3));
        assert!(!is_prime(3_215_031_751));
        assert!(is_prime((1u64 << 61) - 1));
    }

    #[test]
    fn random_primes_are_prime() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let p = random_prime(&mut rng, 62);
            assert!(is_prime(p) && p >= 1 << 61);
        }
    }

    #[test]
    fn field_laws() {
        let p = 1_000_000_007;
        let a = Fp::new(123_456_789, p);
        assert!(a.mul(&a.inv().unwrap()).is_one());
        assert_eq!(Fp::from_i64(&p, -1).v, p - 1);
        assert_eq!(Fp::from_rat(&Rat::new(1, 2), p).unwrap().mul(&Fp::new(2, p)).v, 1);
    }

    #[test]
    fn crt_combines() {
        let r = crt(&BigInt::from(2), &BigInt::from(5), 3, 7);
        assert_eq!(r, BigInt::from(17));
    }
}
