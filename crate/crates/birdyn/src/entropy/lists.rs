use crate::arith::{Rat, UPoly};
use crate::error::{Error, Result};
use crate::orbits::SeEntry;

/// One singular elementary orbit inside a list: from A_start to O_end.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ListOrbit {
    pub start: usize,
    pub end: usize,
    pub length: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitList {
    /// In chain order: each orbit ends where the next begins.
    pub orbits: Vec<ListOrbit>,
    pub closed: bool,
}

impl OrbitList {
    pub fn total(&self) -> usize {
        self.orbits.iter().map(|o| o.length).sum()
    }

    pub fn lengths(&self) -> Vec<usize> {
        self.orbits.iter().map(|o| o.length).collect()
    }

    /// The open three-orbit case, whose S polynomial singles out the second orbit.
    pub fn uses_ambiguous_clause(&self) -> bool {
        !self.closed && self.orbits.len() == 3
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OrbitListSet {
    pub lists: Vec<OrbitList>,
}

impl OrbitListSet {
    pub fn closed(&self) -> impl Iterator<Item = &OrbitList> {
        self.lists.iter().filter(|l| l.closed)
    }

    pub fn open(&self) -> impl Iterator<Item = &OrbitList> {
        self.lists.iter().filter(|l| !l.closed)
    }
}

/// Groups the singular elementary orbits into maximal chains.
pub fn build_lists(entries: &[SeEntry]) -> Result<OrbitListSet> {
    let orbits: Vec<ListOrbit> = entries
        .iter()
        .filter_map(|e| e.end.filter(|_| e.se).map(|end| ListOrbit { start: e.start, end, length: e.length }))
        .collect();
    for (i, a) in orbits.iter().enumerate() {
        for b in &orbits[i + 1..] {
            if a.start == b.start {
                return Err(Error::InconsistentChain(a.start));
            }
            if a.end == b.end {
                return Err(Error::InconsistentChain(a.end));
            }
        }
    }
    let next = |o: &ListOrbit| orbits.iter().position(|q| q.start == o.end);
    let has_pred = |o: &ListOrbit| orbits.iter().any(|q| q.end == o.start);
    let mut used = vec![false; orbits.len()];
    let mut lists = Vec::new();
    let follow = |head: usize, used: &mut Vec<bool>| {
        let mut chain = vec![];
        let mut cur = Some(head);
        while let Some(i) = cur {
            if used[i] {
                break;
            }
            used[i] = true;
            chain.push(orbits[i]);
            cur = next(&orbits[i]);
        }
        let closed = chain.first().map(|o| o.start) == chain.last().map(|o| o.end);
        OrbitList { orbits: chain, closed }
    };
    // open chains start at an orbit nothing leads into
    for i in 0..orbits.len() {
        if !used[i] && !has_pred(&orbits[i]) {
            lists.push(follow(i, &mut used));
        }
    }
    for i in 0..orbits.len() {
        if !used[i] {
            lists.push(follow(i, &mut used));
        }
    }
    Ok(OrbitListSet { lists })
}

fn xn(n: usize) -> UPoly<Rat> {
    UPoly::monomial(Rat::one(), n)
}

fn c(v: i64) -> UPoly<Rat> {
    UPoly::constant(Rat::int(v))
}

/// (T_L, S_L) for a list of at most three orbits.
pub fn list_polynomials(l: &OrbitList) -> Result<(UPoly<Rat>, UPoly<Rat>)> {
    let big = l.total();
    let t = if l.closed { xn(big).sub(&c(1)) } else { xn(big) };
    let n = l.lengths();
    let s = match (n.as_slice(), l.closed) {
        ([_], _) => c(1),
        ([a, b], true) => xn(*a).add(&xn(*b)).add(&c(2)),
        ([a, b], false) => xn(*a).add(&xn(*b)).add(&c(1)),
        ([_, _, _], closed) => {
            let mut s = c(if closed { 3 } else { 1 });
            for (i, ni) in n.iter().enumerate() {
                s = s.add(&xn(big - ni));
                if closed || i != 1 {
                    s = s.add(&xn(*ni));
                }
            }
            s
        }
        _ => return Err(Error::UnsupportedListSize(n.len())),
    };
    Ok((t, s))
}

/// (x − 2) ∏ T_L + (x − 1) Σ S_L ∏_{L′ ≠ L} T_{L′}.
pub fn char_poly_bk(set: &OrbitListSet) -> Result<UPoly<Rat>> {
    let ts: Vec<(UPoly<Rat>, UPoly<Rat>)> = set.lists.iter().map(list_polynomials).collect::<Result<_>>()?;
    let x = xn(1);
    let all = ts.iter().fold(c(1), |acc, (t, _)| acc.mul(t));
    let mut sum = UPoly::zero(&());
    for (i, (_, s)) in ts.iter().enumerate() {
        let others = ts.iter().enumerate().filter(|(j, _)| *j != i).fold(c(1), |acc, (_, (t, _))| acc.mul(t));
        sum = sum.add(&s.mul(&others));
    }
    Ok(x.sub(&c(2)).mul(&all).add(&x.sub(&c(1)).mul(&sum)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn se(start: usize, end: usize, length: usize) -> SeEntry {
        SeEntry { start, se: true, length, end: Some(end) }
    }

    fn q(cs: &[i64]) -> UPoly<Rat> {
        UPoly::from_i64s(cs, &())
    }

    #[test]
    fn single_open_orbit() {
        let s = build_lists(&[se(0, 2, 1)]).unwrap();
        assert_eq!(s.lists.len(), 1);
        assert!(!s.lists[0].closed);
        assert_eq!(list_polynomials(&s.lists[0]).unwrap(), (q(&[0, 1]), q(&[1])));
        assert_eq!(char_poly_bk(&s).unwrap(), q(&[-1, -1, 1]));
    }

    #[test]
    fn two_orbit_closed_list() {
        let s = build_lists(&[se(0, 2, 1), se(2, 0, 3)]).unwrap();
        assert_eq!(s.lists.len(), 1);
        assert!(s.lists[0].closed);
        assert_eq!(s.lists[0].lengths(), vec![1, 3]);
        let (t, sl) = list_polynomials(&s.lists[0]).unwrap();
        assert_eq!(t, q(&[-1, 0, 0, 0, 1]));
        assert_eq!(sl, q(&[2, 1, 0, 1]));
    }

    #[test]
    fn three_orbits_two_lists() {
        let s = build_lists(&[se(0, 2, 1), se(1, 1, 3), se(2, 0, 1)]).unwrap();
        assert_eq!(s.lists.len(), 2);
        assert!(s.lists.iter().all(|l| l.closed));
        // (k, p) = (1, 0): (x⁴ − 1)(x − 1)(x + 1)
        assert_eq!(char_poly_bk(&s).unwrap(), q(&[1, 0, -1, 0, -1, 0, 1]));
    }

    #[test]
    fn empty_set() {
        assert_eq!(char_poly_bk(&OrbitListSet::default()).unwrap(), q(&[-2, 1]));
    }

    #[test]
    fn ambiguous_chain() {
        assert_eq!(build_lists(&[se(0, 1, 1), se(2, 1, 2)]), Err(Error::InconsistentChain(1)));
    }

    #[test]
    fn open_triple_flagged() {
        let s = build_lists(&[se(0, 1, 1), se(1, 2, 2), se(2, 1, 3)]);
        // 2 → 1 and 0 → 1 both end at O1
        assert!(s.is_err());
        let l = OrbitList {
            orbits: vec![
                ListOrbit { start: 0, end: 1, length: 1 },
                ListOrbit { start: 1, end: 2, length: 2 },
                ListOrbit { start: 2, end: 0, length: 3 },
            ],
            closed: false,
        };
        assert!(l.uses_ambiguous_clause());
        let (_, s) = list_polynomials(&l).unwrap();
        // x⁵ + x⁴ + x³ + x + x³ + 1
        assert_eq!(s, q(&[1, 1, 0, 2, 1, 1]));
    }
}
