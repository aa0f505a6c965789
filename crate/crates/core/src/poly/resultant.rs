//! Resultants: Sylvester determinants, Euclidean resultants with formal
//! degrees, and `Res_y` of bivariate polynomials by evaluation/interpolation.

use rayon::prelude::*;

use super::bivar::BiPoly;
use super::uni::{interpolate, UniPoly};
use super::PolyError;
use crate::ff::{Elem, Field};

/// Determinant of the Sylvester matrix of `a`, `b` read with formal degrees
/// `m`, `n` (coefficients above the true degree are zero).
pub fn sylvester_det(a: &UniPoly, b: &UniPoly, m: usize, n: usize) -> Elem {
    let f = a.field();
    let size = m + n;
    if size == 0 {
        return Elem::ONE;
    }
    let mut mat = vec![vec![Elem::ZERO; size]; size];
    for (r, row) in mat.iter_mut().enumerate().take(n) {
        for i in 0..=m {
            row[r + i] = a.coeff(m - i);
        }
    }
    for r in 0..m {
        for j in 0..=n {
            mat[n + r][r + j] = b.coeff(n - j);
        }
    }
    determinant(f, mat)
}

pub(crate) fn determinant(f: &Field, mut mat: Vec<Vec<Elem>>) -> Elem {
    let size = mat.len();
    let mut det = Elem::ONE;
    for c in 0..size {
        let Some(piv) = (c..size).find(|&r| !mat[r][c].is_zero()) else {
            return Elem::ZERO;
        };
        if piv != c {
            mat.swap(piv, c);
            det = f.neg(det);
        }
        let pv = mat[c][c];
        det = f.mul(det, pv);
        let inv = f.inv(pv).expect("nonzero pivot");
        for r in c + 1..size {
            let factor = f.mul(mat[r][c], inv);
            if factor.is_zero() {
                continue;
            }
            for k in c..size {
                let v = f.mul(factor, mat[c][k]);
                mat[r][k] = f.sub(mat[r][k], v);
            }
        }
    }
    det
}

/// `Res(a, b)` with respect to the true degrees.
pub fn uni_resultant(a: &UniPoly, b: &UniPoly) -> Elem {
    match (a.degree(), b.degree()) {
        (Some(m), Some(n)) => resultant_formal(a, b, m, n),
        _ => Elem::ZERO,
    }
}

/// `Res_{m,n}(a, b)`, equal to `sylvester_det(a, b, m, n)`, by the
/// Euclidean algorithm.
pub fn resultant_formal(a: &UniPoly, b: &UniPoly, m: usize, n: usize) -> Elem {
    let f = a.field().clone();
    if n == 0 {
        return f.pow(b.coeff(0), m as u128);
    }
    if m == 0 {
        return f.pow(a.coeff(0), n as u128);
    }
    let (ma, nb) = match (a.degree(), b.degree()) {
        (Some(x), Some(y)) => (x, y),
        _ => return Elem::ZERO,
    };
    debug_assert!(ma <= m && nb <= n);
    if ma < m && nb < n {
        return Elem::ZERO;
    }
    let mut out = Elem::ONE;
    if ma < m {
        let mut c = f.pow(b.lc(), (m - ma) as u128);
        if ((m - ma) * n) % 2 == 1 {
            c = f.neg(c);
        }
        out = c;
    } else if nb < n {
        out = f.pow(a.lc(), (n - nb) as u128);
    }
    f.mul(out, euclid(&f, a.clone(), b.clone()))
}

fn euclid(f: &Field, mut a: UniPoly, mut b: UniPoly) -> Elem {
    let mut acc = Elem::ONE;
    loop {
        let m = a.deg();
        let n = b.deg();
        if n == 0 {
            return f.mul(acc, f.pow(b.lc(), m as u128));
        }
        if m == 0 {
            return f.mul(acc, f.pow(a.lc(), n as u128));
        }
        let r = a.rem(&b);
        let Some(k) = r.degree() else {
            return Elem::ZERO;
        };
        let mut c = f.pow(b.lc(), (m - k) as u128);
        if (m * n) % 2 == 1 {
            c = f.neg(c);
        }
        acc = f.mul(acc, c);
        a = b;
        b = r;
    }
}

/// Smallest member of `base`'s tower with at least `points` elements.
pub(crate) fn field_with_points(base: &Field, points: u64) -> Result<Field, PolyError> {
    let mut k = 1usize;
    loop {
        let would = (base.order() as u128).checked_pow(k as u32);
        if would.is_none_or(|w| w >= points as u128) {
            return Ok(base.tower().field(base.degree() * k)?);
        }
        k += 1;
    }
}

/// `Res_y(a, b)` as a polynomial in `t`, using the formal `y`-degrees.
pub fn resultant_y(a: &BiPoly, b: &BiPoly) -> Result<UniPoly, PolyError> {
    if !a.field().same_field(b.field()) {
        return Err(PolyError::FieldMismatch);
    }
    let base = a.field().clone();
    if a.is_zero() || b.is_zero() {
        return Ok(UniPoly::zero(&base));
    }
    let (m, n) = (a.deg_y(), b.deg_y());
    let bound = m * b.deg_t() + n * a.deg_t();
    let work = field_with_points(&base, bound as u64 + 1)?;
    let ae = a.embed(&work)?;
    let be = b.embed(&work)?;
    let xs: Vec<Elem> = work.elements().take(bound + 1).collect();
    let ys: Vec<Elem> = xs
        .par_iter()
        .map(|&t0| resultant_formal(&ae.eval_t(t0), &be.eval_t(t0), m, n))
        .collect();
    let r = interpolate(&work, &xs, &ys);
    r.restrict(&base).ok_or(PolyError::FieldMismatch)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::make_field;

    #[test]
    fn euclid_matches_sylvester() {
        let f = make_field(5, 2, 3).unwrap();
        let g = f.generator();
        let a = UniPoly::from_raw(&f, vec![g, Elem::ONE, f.from_i64(2), g]);
        let b = UniPoly::from_raw(&f, vec![f.from_i64(3), g, Elem::ONE]);
        assert_eq!(uni_resultant(&a, &b), sylvester_det(&a, &b, 3, 2));
        assert_eq!(resultant_formal(&a, &b, 5, 2), sylvester_det(&a, &b, 5, 2));
        assert_eq!(resultant_formal(&a, &b, 3, 4), sylvester_det(&a, &b, 3, 4));
        assert_eq!(resultant_formal(&a, &b, 4, 4), Elem::ZERO);
    }

    #[test]
    fn res_y_linear() {
        let f = make_field(3, 1, 0).unwrap();
        let a = BiPoly::from_int_terms(&f, &[(0, 1, 1), (1, 0, -1)]);
        let b = BiPoly::from_int_terms(&f, &[(0, 1, 1), (0, 0, -1)]);
        let r = resultant_y(&a, &b).unwrap();
        let want = UniPoly::from_ints(&f, &[-1, 1]);
        assert!(r == want || r == want.neg());
        assert!(resultant_y(&a, &a).unwrap().is_zero());
    }

    #[test]
    fn res_y_vanishing_means_common_root() {
        let f = make_field(3, 1, 0).unwrap();
        let a = BiPoly::from_int_terms(&f, &[(0, 2, 1), (1, 0, 1), (1, 1, 1), (0, 0, 2)]);
        let b = BiPoly::from_int_terms(&f, &[(0, 2, 1), (2, 0, 1), (0, 1, 1)]);
        let r = resultant_y(&a, &b).unwrap();
        for t0 in f.elements() {
            let (x, y) = (a.eval_t(t0), b.eval_t(t0));
            let common = !x.gcd(&y).is_constant();
            let lead = x.deg() < a.deg_y() && y.deg() < b.deg_y();
            assert_eq!(r.eval(t0).is_zero(), common || lead);
        }
    }
}
