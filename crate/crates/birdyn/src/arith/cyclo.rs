//! Cyclotomic polynomials and the root-of-unity test.

use num_integer::Integer;

use super::rat::Rat;
use super::upoly::UPoly;

pub fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Φ_n over Q.
pub fn cyclotomic(n: u64) -> UPoly<Rat> {
    let mut cache = Vec::new();
    cyclotomic_cached(n, &mut cache)
}

fn cyclotomic_cached(n: u64, cache: &mut Vec<Option<UPoly<Rat>>>) -> UPoly<Rat> {
    if (n as usize) < cache.len() {
        if let Some(p) = &cache[n as usize] {
            return p.clone();
        }
    }
    let mut xn = vec![Rat::zero(); n as usize + 1];
    xn[0] = Rat::int(-1);
    xn[n as usize] = Rat::one();
    let mut p = UPoly::new(xn, &());
    for d in 1..n {
        if n % d == 0 {
            let f = cyclotomic_cached(d, cache);
            p = p.div_exact(&f).expect("cyclotomic factor");
        }
    }
    if cache.len() <= n as usize {
        cache.resize(n as usize + 1, None);
    }
    cache[n as usize] = Some(p.clone());
    p
}

/// Orders d of the cyclotomic factors of a squarefree p, or None when p has
/// a factor that is not cyclotomic.
pub fn cyclotomic_orders(p: &UPoly<Rat>) -> Option<Vec<u64>> {
    let n = p.degree()? as u64;
    let mut rest = p.monic();
    let mut orders = Vec::new();
    let mut cache = Vec::new();
    let bound = (2 * n * n).max(6);
    for d in 1..=bound {
        let deg = rest.degree().unwrap() as u64;
        if deg == 0 {
            break;
        }
        if euler_phi(d) > deg {
            continue;
        }
        let f = cyclotomic_cached(d, &mut cache);
        let (q, r) = rest.divrem(&f).unwrap();
        if r.is_zero() {
            rest = q;
            orders.push(d);
        }
    }
    if rest.degree() == Some(0) {
        Some(orders)
    } else {
        None
    }
}

/// Smallest N with p | x^N - 1 (p squarefree and nonconstant).
pub fn cyclotomic_test(p: &UPoly<Rat>) -> Option<u64> {
    if p.is_constant() {
        return None;
    }
    let orders = cyclotomic_orders(p)?;
    Some(orders.iter().fold(1u64, |acc, d| acc.lcm(d)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(cs: &[i64]) -> UPoly<Rat> {
        UPoly::from_i64s(cs, &())
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic(1), q(&[-1, 1]));
        assert_eq!(cyclotomic(6), q(&[1, -1, 1]));
        assert_eq!(cyclotomic(9), q(&[1, 0, 0, 1, 0, 0, 1]));
        assert_eq!(cyclotomic(10), q(&[1, -1, 1, -1, 1]));
    }

    #[test]
    fn orders() {
        assert_eq!(cyclotomic_test(&q(&[1, 1, 1])), Some(3));
        assert_eq!(cyclotomic_test(&q(&[-1, -1, 1])), None);
        assert_eq!(cyclotomic_test(&q(&[1, 0, 0, 0, 1])), Some(8));
        // (x+1)(x^2+1) has order lcm(2, 4)
        assert_eq!(cyclotomic_test(&q(&[1, 1]).mul(&q(&[1, 0, 1]))), Some(4));
    }
}
