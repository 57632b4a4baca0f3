//! Truncated power series in t over a field, as coefficient vectors (lowest first).

use crate::arith::{Field, HPoly};

pub(crate) type Series<F> = Vec<F>;

pub(crate) fn valuation<F: Field>(s: &[F]) -> Option<usize> {
    s.iter().position(|c| !c.is_zero())
}

pub(crate) fn mul<F: Field>(a: &[F], b: &[F], n: usize, ctx: &F::Ctx) -> Series<F> {
    let mut out = vec![F::zero(ctx); n];
    for (i, x) in a.iter().enumerate().take(n) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n - i) {
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    out
}

/// 1/a for a(0) ≠ 0.
pub(crate) fn inv<F: Field>(a: &[F], n: usize, ctx: &F::Ctx) -> Series<F> {
    let a0i = a[0].inv().expect("unit constant term");
    let mut out = vec![F::zero(ctx); n];
    out[0] = a0i.clone();
    for k in 1..n {
        let mut acc = F::zero(ctx);
        for j in 1..=k.min(a.len() - 1) {
            acc = acc.add(&a[j].mul(&out[k - j]));
        }
        out[k] = acc.mul(&a0i).neg();
    }
    out
}

/// b/a where val(b) ≥ val(a) = v; the result has n − v reliable terms.
pub(crate) fn div<F: Field>(b: &[F], a: &[F], ctx: &F::Ctx) -> Series<F> {
    let v = valuation(a).expect("nonzero divisor");
    let n = a.len().min(b.len()) - v;
    let ai = inv(&a[v..], n, ctx);
    mul(&b[v..], &ai, n, ctx)
}

/// Evaluates a form at a triple of series, truncated to n terms.
pub(crate) fn eval_form<F: Field>(h: &HPoly<F>, x: &[Series<F>; 3], n: usize) -> Series<F> {
    let ctx = h.ctx();
    let d = h.degree() as usize;
    let mut pw: [Vec<Series<F>>; 3] = std::array::from_fn(|_| {
        let mut one = vec![F::zero(ctx); n];
        one[0] = F::one(ctx);
        vec![one]
    });
    for (i, p) in pw.iter_mut().enumerate() {
        for _ in 0..d {
            let next = mul(p.last().unwrap(), &x[i], n, ctx);
            p.push(next);
        }
    }
    let mut acc = vec![F::zero(ctx); n];
    for (e, c) in h.terms() {
        let t = mul(&mul(&pw[0][e[0] as usize], &pw[1][e[1] as usize], n, ctx), &pw[2][e[2] as usize], n, ctx);
        for (a, b) in acc.iter_mut().zip(&t) {
            *a = a.add(&b.mul(c));
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Rat;

    fn s(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| Rat::int(x)).collect()
    }

    #[test]
    fn inverse_of_one_minus_t() {
        let i = inv(&s(&[1, -1]), 5, &());
        assert_eq!(i, s(&[1, 1, 1, 1, 1]));
    }

    #[test]
    fn division_drops_valuation() {
        // (t² + t³) / (t + t²) = t
        let q = div(&s(&[0, 0, 1, 1, 0, 0]), &s(&[0, 1, 1, 0, 0, 0]), &());
        assert_eq!(q, s(&[0, 1, 0, 0, 0]));
    }
}
