use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::linalg::det;
use crate::arith::{Field, FieldElem};
use crate::error::{Error, Result};
use crate::maps::{compose_components, degree_sequence, is_identity, map_evaluate, BiMap, PPoint, DEFAULT_TERM_CAP};

/// Above this degree of an intermediate iterate, candidates are confirmed on
/// points instead of by expanding the composition.
pub const COMPOSE_DEGREE_LIMIT: u32 = 8;

const POINT_SEED: u64 = 0x5eed_0f_9e7;

/// Points used past `COMPOSE_DEGREE_LIMIT`; for n ≤ 24 a false positive has
/// probability below 2⁻⁴⁸.
pub const POINTS: usize = 8;

const COORD_MAX: i64 = 1 << 30;

/// Smallest n ≤ n_max with Fⁿ the identity.
///
/// The modular degree sequence never overestimates, so only indices where it
/// reports degree 1 are candidates. A candidate is confirmed by exact
/// composition while the iterates stay small. Past that it is confirmed on
/// `POINTS` random points iterated exactly. This is a Monte Carlo test: if
/// Fⁿ ≠ id, some form x_i G_j − x_j G_i of degree at most 2ⁿ + 1 is nonzero,
/// so a random point with coordinates in 1..=2³⁰ is fixed with probability at
/// most (2ⁿ + 1)/2³⁰.
pub fn check_periodicity(f: &BiMap, n_max: usize) -> Result<Option<usize>> {
    if f.is_identity() {
        return Ok(Some(1));
    }
    let d = degree_sequence(f, n_max)?;
    let candidates: Vec<usize> = (1..=n_max).filter(|&n| d[n - 1] == 1).collect();
    if candidates.is_empty() {
        return Ok(None);
    }
    let last = *candidates.last().expect("nonempty");
    if d[..last].iter().all(|&v| v <= COMPOSE_DEGREE_LIMIT) {
        return by_composition(f, &candidates);
    }
    let pts = general_points(f, last)?;
    for n in candidates {
        if pts.iter().all(|orbit| orbit[n] == orbit[0]) {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

fn by_composition(f: &BiMap, candidates: &[usize]) -> Result<Option<usize>> {
    let mut cur = f.components().clone();
    let mut n = 1;
    for &c in candidates {
        while n < c {
            cur = compose_components(f.components(), &cur, DEFAULT_TERM_CAP)?.comps;
            n += 1;
        }
        if is_identity(&cur) {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

/// Orbits of length `steps` + 1 of `POINTS` random points, no three collinear.
fn general_points(f: &BiMap, steps: usize) -> Result<Vec<Vec<PPoint>>> {
    let k = f.field();
    let mut rng = ChaCha8Rng::seed_from_u64(POINT_SEED);
    let mut out: Vec<Vec<PPoint>> = Vec::new();
    for _attempt in 0..400 {
        if out.len() == POINTS {
            return Ok(out);
        }
        let c: [FieldElem; 3] = std::array::from_fn(|_| FieldElem::from_i64(k, rng.gen_range(1..=COORD_MAX)));
        let p = PPoint::new(c)?;
        let collinear = (0..out.len()).any(|i| {
            (i + 1..out.len()).any(|j| {
                let m = vec![out[i][0].coords().to_vec(), out[j][0].coords().to_vec(), p.coords().to_vec()];
                det(&m, k).is_zero()
            })
        });
        if collinear {
            continue;
        }
        let mut orbit = vec![p];
        while orbit.len() <= steps {
            match map_evaluate(f, orbit.last().expect("nonempty")).point() {
                Some(q) => orbit.push(q),
                None => break,
            }
        }
        if orbit.len() > steps {
            out.push(orbit);
        }
    }
    Err(Error::InvalidParameter("no points in general position avoid the indeterminacy".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::NumberField;
    use crate::maps::make_family_a;

    fn r(s: &str) -> FieldElem {
        FieldElem::parse(&NumberField::rationals(), s).unwrap()
    }

    #[test]
    fn four_periodic() {
        // α₀ = γ₀ = 1/α₁ with α₁ = −1
        let f = make_family_a(&r("-1"), &r("-1"), &r("-1")).unwrap();
        assert_eq!(check_periodicity(&f, 12).unwrap(), Some(4));
    }

    #[test]
    fn generic_not_periodic() {
        let f = make_family_a(&r("1"), &r("2"), &r("3")).unwrap();
        assert_eq!(check_periodicity(&f, 8).unwrap(), None);
    }

    #[test]
    fn points_agree_with_composition() {
        let f = make_family_a(&r("-1"), &r("-1"), &r("-1")).unwrap();
        let pts = general_points(&f, 8).unwrap();
        assert!(pts.iter().all(|o| o[4] == o[0] && o[8] == o[0]));
        assert!(pts.iter().any(|o| o[2] != o[0]));
    }
}
