//! Dense linear algebra over a field.

use super::field::Field;

pub type Matrix<F> = Vec<Vec<F>>;

/// In-place reduced row echelon form; returns the pivot columns.
pub fn rref<F: Field>(m: &mut Matrix<F>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == m.len() {
            break;
        }
        let Some(pr) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, pr);
        let inv = m[row][col].inv().expect("nonzero pivot");
        for v in m[row].iter_mut() {
            *v = v.mul(&inv);
        }
        let pivot_row = m[row].clone();
        for (r, other) in m.iter_mut().enumerate() {
            if r == row || other[col].is_zero() {
                continue;
            }
            let f = other[col].clone();
            for (c, v) in other.iter_mut().enumerate() {
                if !pivot_row[c].is_zero() {
                    *v = v.sub(&f.mul(&pivot_row[c]));
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Basis of {v : m v = 0}.
pub fn nullspace<F: Field>(m: &Matrix<F>, ncols: usize, ctx: &F::Ctx) -> Vec<Vec<F>> {
    let mut a = m.clone();
    let pivots = rref(&mut a, ncols);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![F::zero(ctx); ncols];
        v[free] = F::one(ctx);
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = a[r][free].neg();
        }
        basis.push(v);
    }
    basis
}

pub fn rank<F: Field>(m: &Matrix<F>, ncols: usize) -> usize {
    let mut a = m.clone();
    rref(&mut a, ncols).len()
}

/// Determinant of a square matrix by elimination.
pub fn det<F: Field>(m: &Matrix<F>, ctx: &F::Ctx) -> F {
    let n = m.len();
    let mut a = m.clone();
    let mut d = F::one(ctx);
    for col in 0..n {
        let Some(pr) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return F::zero(ctx);
        };
        if pr != col {
            a.swap(pr, col);
            d = d.neg();
        }
        d = d.mul(&a[col][col]);
        let inv = a[col][col].inv().expect("nonzero pivot");
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].mul(&inv);
            for c in col..n {
                let t = f.mul(&a[col][c]);
                a[r][c] = a[r][c].sub(&t);
            }
        }
    }
    d
}

/// Unique solution of a square system, or None when singular.
pub fn solve<F: Field>(m: &Matrix<F>, rhs: &[F]) -> Option<Vec<F>> {
    let n = m.len();
    let mut a: Matrix<F> = m.iter().zip(rhs).map(|(row, b)| {
        let mut r = row.clone();
        r.push(b.clone());
        r
    }).collect();
    let pivots = rref(&mut a, n);
    if pivots.len() < n {
        return None;
    }
    Some(a.iter().map(|r| r[n].clone()).collect())
}

pub fn mat_vec<F: Field>(m: &Matrix<F>, v: &[F], ctx: &F::Ctx) -> Vec<F> {
    m.iter()
        .map(|row| row.iter().zip(v).fold(F::zero(ctx), |acc, (a, b)| acc.add(&a.mul(b))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat::Rat;

    fn m(rows: &[&[i64]]) -> Matrix<Rat> {
        rows.iter().map(|r| r.iter().map(|&c| Rat::int(c)).collect()).collect()
    }

    #[test]
    fn kernel_and_det() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = nullspace(&a, 3, &());
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(mat_vec(&a, v, &()).iter().all(|x| x.is_zero()));
        }
        assert_eq!(det(&m(&[&[2, 1], &[1, 3]]), &()), Rat::int(5));
        assert_eq!(solve(&m(&[&[2, 1], &[1, 3]]), &[Rat::int(3), Rat::int(4)]).unwrap(), vec![Rat::int(1), Rat::int(1)]);
    }
}
