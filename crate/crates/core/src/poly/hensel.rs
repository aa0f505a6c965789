//! Linear Hensel lifting of `y`-factorizations modulo powers of `t`.
//!
//! A series is a `Vec<UniPoly>` whose entry `k` is the coefficient of `t^k`,
//! itself a polynomial in `y`.

use super::bivar::BiPoly;
use super::uni::UniPoly;
use crate::ff::{Elem, Field};

pub(crate) type Series = Vec<UniPoly>;

/// Coefficients of `t^0 .. t^(prec-1)` as polynomials in `y`.
pub(crate) fn to_series(f: &BiPoly, prec: usize) -> Series {
    let mut rows = f.swap().to_y_dense();
    rows.resize(prec.max(rows.len()), UniPoly::zero(f.field()));
    rows.truncate(prec);
    rows
}

/// Inverse of `c(t)` modulo `t^prec`; `c(0)` must be nonzero.
pub(crate) fn inverse_series(c: &UniPoly, prec: usize) -> Vec<Elem> {
    let f = c.field();
    let c0inv = f.inv(c.coeff(0)).expect("unit constant term");
    let mut out = vec![Elem::ZERO; prec];
    if prec == 0 {
        return out;
    }
    out[0] = c0inv;
    for k in 1..prec {
        let mut acc = Elem::ZERO;
        for i in 1..=k.min(c.deg()) {
            acc = f.add(acc, f.mul(c.coeff(i), out[k - i]));
        }
        out[k] = f.neg(f.mul(acc, c0inv));
    }
    out
}

/// `f / lc_y(f)` modulo `t^prec`: monic in `y` as a series.
pub(crate) fn monic_series(f: &BiPoly, prec: usize) -> Series {
    let inv = inverse_series(&f.lc_y(), prec);
    let s = to_series(f, prec);
    scalar_series_mul(f.field(), &inv, &s, prec)
}

/// `(sum_i c_i t^i) * s` modulo `t^prec`.
pub(crate) fn scalar_series_mul(f: &Field, c: &[Elem], s: &Series, prec: usize) -> Series {
    let mut out = vec![UniPoly::zero(f); prec];
    for (i, &ci) in c.iter().enumerate().take(prec) {
        if ci.is_zero() {
            continue;
        }
        for (j, sj) in s.iter().enumerate() {
            if i + j >= prec {
                break;
            }
            if !sj.is_zero() {
                out[i + j] = out[i + j].add(&sj.scale(ci));
            }
        }
    }
    out
}

fn coeff_of_product(a: &Series, b: &Series, k: usize) -> UniPoly {
    let f = a[0].field();
    let mut acc = UniPoly::zero(f);
    for i in 0..=k {
        if i < a.len() && k - i < b.len() && !a[i].is_zero() && !b[k - i].is_zero() {
            acc = acc.add(&a[i].mul(&b[k - i]));
        }
    }
    acc
}

pub(crate) fn series_mul(a: &Series, b: &Series, prec: usize) -> Series {
    (0..prec).map(|k| coeff_of_product(a, b, k)).collect()
}

/// Lifts `F ≡ a0 * b0 (mod t)` to `F ≡ A * B (mod t^prec)` with `A`, `B`
/// monic in `y` of the same degrees; `F` is monic and `a0`, `b0` coprime.
fn lift_pair(fs: &Series, a0: &UniPoly, b0: &UniPoly, prec: usize) -> (Series, Series) {
    let fld = a0.field();
    let (g, _sa, tb) = a0.xgcd(b0);
    debug_assert!(g.is_constant() && !g.is_zero());
    let mut a = vec![UniPoly::zero(fld); prec];
    let mut b = vec![UniPoly::zero(fld); prec];
    a[0] = a0.clone();
    b[0] = b0.clone();
    for k in 1..prec {
        let fk = fs.get(k).cloned().unwrap_or_else(|| UniPoly::zero(fld));
        let e = fk.sub(&coeff_of_product(&a, &b, k));
        if e.is_zero() {
            continue;
        }
        // tau = e*tb mod a0 solves sigma*a0 + tau*b0 = e
        let tau = e.mul(&tb).rem(a0);
        let sigma = e
            .sub(&tau.mul(b0))
            .div_exact(a0)
            .expect("Bezout identity makes this exact");
        a[k] = tau;
        b[k] = sigma;
    }
    (a, b)
}

/// Lifts the factorization of a monic series `fs` whose `t^0` coefficient is
/// the product of the pairwise coprime monic `locals`.
pub(crate) fn hensel_lift(fs: &Series, locals: &[UniPoly], prec: usize) -> Vec<Series> {
    let fld = locals[0].field();
    if locals.len() == 1 {
        let mut s = fs.clone();
        s.resize(prec, UniPoly::zero(fld));
        return vec![s];
    }
    let mid = locals.len() / 2;
    let prod = |xs: &[UniPoly]| xs.iter().fold(UniPoly::one(fld), |acc, u| acc.mul(u));
    let a0 = prod(&locals[..mid]);
    let b0 = prod(&locals[mid..]);
    let (a, b) = lift_pair(fs, &a0, &b0, prec);
    let mut out = hensel_lift(&a, &locals[..mid], prec);
    out.extend(hensel_lift(&b, &locals[mid..], prec));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::make_field;

    #[test]
    fn lifted_product_matches() {
        let f = make_field(5, 1, 0).unwrap();
        // (y^2 + t y + 1)(y + 1 + t^2)(y - 1 + 3t)
        let u = BiPoly::from_int_terms(&f, &[(0, 2, 1), (1, 1, 1), (0, 0, 1)]);
        let v = BiPoly::from_int_terms(&f, &[(0, 1, 1), (0, 0, 1), (2, 0, 1)]);
        let w = BiPoly::from_int_terms(&f, &[(0, 1, 1), (0, 0, -1), (1, 0, 3)]);
        let p = u.mul(&v).mul(&w);
        let prec = 6;
        let fs = monic_series(&p, prec);
        let locals = vec![
            u.eval_t(Elem::ZERO),
            v.eval_t(Elem::ZERO),
            w.eval_t(Elem::ZERO),
        ];
        let lifted = hensel_lift(&fs, &locals, prec);
        let prod = lifted
            .iter()
            .skip(1)
            .fold(lifted[0].clone(), |acc, s| series_mul(&acc, s, prec));
        assert_eq!(prod, fs);
        assert_eq!(lifted[0][..2].to_vec(), to_series(&u, 2));
    }
}
