//! Squarefree decomposition over Q, refined by splitting off rational linear
//! factors and cyclotomic factors.

use super::cyclo::{cyclotomic, euler_phi};
use super::field::Field;
use super::rat::Rat;
use super::roots::rational_roots;
use super::upoly::UPoly;

/// Pairwise coprime squarefree factors with multiplicities, product equal to
/// the monic input. Rational roots and cyclotomic factors come out as their
/// own entries; what remains of each multiplicity class is one entry.
pub fn squarefree_decomp(p: &UPoly<Rat>) -> Vec<(UPoly<Rat>, usize)> {
    let mut out = Vec::new();
    for (f, m) in p.squarefree_decomp() {
        let mut rest = f;
        for r in rational_roots(&rest) {
            let lin = UPoly::new(vec![r.neg(), Rat::one()], &());
            rest = rest.div_exact(&lin).expect("root divides");
            out.push((lin, m));
        }
        let n = rest.degree().unwrap_or(0) as u64;
        let mut d = 3;
        while rest.degree().unwrap_or(0) >= 2 && d <= (2 * n * n).max(6) {
            if euler_phi(d) <= rest.degree().unwrap() as u64 {
                let c = cyclotomic(d);
                if let Ok(q) = rest.div_exact(&c) {
                    rest = q;
                    out.push((c, m));
                }
            }
            d += 1;
        }
        if !rest.is_constant() {
            out.push((rest, m));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(cs: &[i64]) -> UPoly<Rat> {
        UPoly::from_i64s(cs, &())
    }

    fn sorted(mut v: Vec<(UPoly<Rat>, usize)>) -> Vec<(UPoly<Rat>, usize)> {
        v.sort_by_key(|(f, m)| (f.deg(), f.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(), *m));
        v
    }

    #[test]
    fn splits_linear_factors() {
        let p = q(&[0, 0, 1]).mul(&q(&[1, 1])).mul(&q(&[-1, 1]).pow(2));
        let got = sorted(squarefree_decomp(&p));
        assert_eq!(got, sorted(vec![(q(&[0, 1]), 2), (q(&[1, 1]), 1), (q(&[-1, 1]), 2)]));
    }

    #[test]
    fn irreducible_stays_whole() {
        assert_eq!(squarefree_decomp(&q(&[-1, -1, 1])), vec![(q(&[-1, -1, 1]), 1)]);
    }

    #[test]
    fn cyclotomic_factors_split() {
        let p = q(&[-1, 1]).pow(4).mul(&q(&[1, 1]).pow(2)).mul(&q(&[1, 0, 1])).mul(&q(&[1, 1, 1]));
        let mut mults: Vec<usize> = squarefree_decomp(&p).iter().map(|(_, m)| *m).collect();
        mults.sort_unstable_by(|a, b| b.cmp(a));
        assert_eq!(mults, vec![4, 2, 1, 1]);
    }
}
