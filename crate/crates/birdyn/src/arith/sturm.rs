//! Real root isolation over Q by Sturm sequences.

use num_traits::Signed;

use super::field::Field;
use super::rat::Rat;
use super::upoly::UPoly;

pub struct Sturm {
    seq: Vec<UPoly<Rat>>,
}

impl Sturm {
    pub fn new(p: &UPoly<Rat>) -> Self {
        let mut seq = vec![p.clone(), p.derivative()];
        while !seq.last().unwrap().is_zero() {
            let n = seq.len();
            let r = seq[n - 2].rem(&seq[n - 1]).expect("nonzero").neg();
            if r.is_zero() {
                break;
            }
            seq.push(r);
        }
        if seq.last().unwrap().is_zero() {
            seq.pop();
        }
        Sturm { seq }
    }

    /// Sign variations at x, zeros skipped.
    pub fn variations(&self, x: &Rat) -> usize {
        let mut count = 0;
        let mut last = 0;
        for q in &self.seq {
            let s = q.eval(x).signum();
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    }

    /// Number of distinct real roots in (a, b].
    pub fn count(&self, a: &Rat, b: &Rat) -> usize {
        self.variations(a).saturating_sub(self.variations(b))
    }
}

/// Bound B with every real root in (-B, B).
pub fn cauchy_bound(p: &UPoly<Rat>) -> Rat {
    let lc = p.lc().abs();
    let mut m = Rat::zero();
    for c in &p.coeffs()[..p.coeffs().len() - 1] {
        let r = Rat(c.0.abs() / &lc.0);
        if r > m {
            m = r;
        }
    }
    m.add(&Rat::one())
}

/// Disjoint intervals (lo_i, hi_i], one per real root of p in (lo, hi],
/// each of width at most `width`. p must be squarefree.
pub fn sturm_isolate(p: &UPoly<Rat>, lo: &Rat, hi: &Rat, width: &Rat) -> Vec<(Rat, Rat)> {
    if p.is_constant() || lo >= hi {
        return Vec::new();
    }
    let s = Sturm::new(p);
    let mut out = Vec::new();
    let mut stack = vec![(lo.clone(), hi.clone(), s.count(lo, hi))];
    while let Some((a, b, n)) = stack.pop() {
        if n == 0 {
            continue;
        }
        if n == 1 && b.sub(&a) <= *width {
            out.push((a, b));
            continue;
        }
        let m = a.add(&b).mul(&Rat::new(1, 2));
        let left = s.count(&a, &m);
        // right half first on the stack so the output comes out ascending
        stack.push((m.clone(), b, n - left));
        stack.push((a, m, left));
    }
    out
}

/// Interval of width ≤ tol around the largest real root greater than 1.
pub fn largest_real_root(p: &UPoly<Rat>, tol: &Rat) -> Option<(Rat, Rat)> {
    if p.is_zero() {
        return None;
    }
    let q = p.squarefree_part();
    let b = cauchy_bound(&q);
    let one = Rat::one();
    if b <= one {
        return None;
    }
    let s = Sturm::new(&q);
    if s.count(&one, &b) == 0 {
        return None;
    }
    // bisect, keeping the rightmost root
    let (mut a, mut hi) = (one, b);
    loop {
        let n = s.count(&a, &hi);
        if n == 1 && hi.sub(&a) <= *tol {
            return Some((a, hi));
        }
        let m = a.add(&hi).mul(&Rat::new(1, 2));
        if s.count(&m, &hi) > 0 {
            a = m;
        } else {
            hi = m;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(cs: &[i64]) -> UPoly<Rat> {
        UPoly::from_i64s(cs, &())
    }

    #[test]
    fn golden_ratio() {
        let w = Rat::new(1, 1_000_000_000);
        let iv = sturm_isolate(&q(&[-1, -1, 1]), &Rat::int(1), &Rat::int(3), &w);
        assert_eq!(iv.len(), 1);
        let (a, b) = &iv[0];
        assert!(a.to_f64() <= 1.618_033_988_8 && b.to_f64() >= 1.618_033_988_7);
    }

    #[test]
    fn no_real_roots() {
        assert!(sturm_isolate(&q(&[1, 0, 1]), &Rat::int(-10), &Rat::int(10), &Rat::new(1, 100)).is_empty());
    }

    #[test]
    fn three_roots() {
        let iv = sturm_isolate(&q(&[0, -1, 0, 1]), &Rat::int(-2), &Rat::int(2), &Rat::new(1, 100));
        assert_eq!(iv.len(), 3);
        for ((a, b), r) in iv.iter().zip([-1.0, 0.0, 1.0]) {
            assert!(a.to_f64() < r + 1e-12 && r <= b.to_f64());
        }
    }

    #[test]
    fn largest_root_above_one() {
        assert!(largest_real_root(&q(&[1, -1, -1, 1]), &Rat::new(1, 1000)).is_none());
        let (a, b) = largest_real_root(&q(&[-1, -1, 1]), &Rat::new(1, 1000)).unwrap();
        assert!(a.to_f64() < 1.6181 && b.to_f64() > 1.618);
    }
}
