//! Sparse bivariate polynomials in `(t, y)`.

use std::collections::BTreeMap;
use std::fmt;

use super::uni::UniPoly;
use super::PolyError;
use crate::ff::{embedding, Elem, Field};

/// `sum c_{ij} t^i y^j`, zero coefficients never stored.
#[derive(Clone)]
pub struct BiPoly {
    field: Field,
    terms: BTreeMap<(u32, u32), Elem>,
}

impl PartialEq for BiPoly {
    fn eq(&self, other: &Self) -> bool {
        self.field.same_field(&other.field) && self.terms == other.terms
    }
}
impl Eq for BiPoly {}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_vars("t", "y"))
    }
}

impl BiPoly {
    pub fn zero(field: &Field) -> BiPoly {
        BiPoly {
            field: field.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: &Field, c: Elem) -> BiPoly {
        BiPoly::from_terms(field, [(0, 0, c)])
    }

    pub fn t(field: &Field) -> BiPoly {
        BiPoly::from_terms(field, [(1, 0, Elem::ONE)])
    }

    pub fn y(field: &Field) -> BiPoly {
        BiPoly::from_terms(field, [(0, 1, Elem::ONE)])
    }

    /// Collects terms, summing repeated exponents.
    pub fn from_terms(field: &Field, terms: impl IntoIterator<Item = (u32, u32, Elem)>) -> BiPoly {
        let mut map: BTreeMap<(u32, u32), Elem> = BTreeMap::new();
        for (i, j, c) in terms {
            if c.is_zero() {
                continue;
            }
            let e = map.entry((i, j)).or_insert(Elem::ZERO);
            *e = field.add(*e, c);
        }
        map.retain(|_, c| !c.is_zero());
        BiPoly {
            field: field.clone(),
            terms: map,
        }
    }

    pub fn from_int_terms(field: &Field, terms: &[(u32, u32, i64)]) -> BiPoly {
        BiPoly::from_terms(
            field,
            terms.iter().map(|&(i, j, c)| (i, j, field.from_i64(c))),
        )
    }

    /// Polynomial in `t` only.
    pub fn from_t(p: &UniPoly) -> BiPoly {
        BiPoly::from_terms(
            p.field(),
            p.coeffs()
                .iter()
                .enumerate()
                .map(|(i, &c)| (i as u32, 0, c)),
        )
    }

    /// Polynomial in `y` only.
    pub fn from_y(p: &UniPoly) -> BiPoly {
        BiPoly::from_terms(
            p.field(),
            p.coeffs()
                .iter()
                .enumerate()
                .map(|(j, &c)| (0, j as u32, c)),
        )
    }

    /// From coefficients of `y^j` given as polynomials in `t`.
    pub fn from_y_dense(field: &Field, rows: &[UniPoly]) -> BiPoly {
        BiPoly::from_terms(
            field,
            rows.iter().enumerate().flat_map(|(j, r)| {
                r.coeffs()
                    .iter()
                    .enumerate()
                    .map(move |(i, &c)| (i as u32, j as u32, c))
                    .collect::<Vec<_>>()
            }),
        )
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, Elem)> + '_ {
        self.terms.iter().map(|(&(i, j), &c)| (i, j, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Elem {
        self.terms.get(&(i, j)).copied().unwrap_or(Elem::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&(i, j)| i == 0 && j == 0)
    }

    pub fn deg_t(&self) -> usize {
        self.terms
            .keys()
            .map(|&(i, _)| i as usize)
            .max()
            .unwrap_or(0)
    }

    pub fn deg_y(&self) -> usize {
        self.terms
            .keys()
            .map(|&(_, j)| j as usize)
            .max()
            .unwrap_or(0)
    }

    pub fn total_degree(&self) -> usize {
        self.terms
            .keys()
            .map(|&(i, j)| (i + j) as usize)
            .max()
            .unwrap_or(0)
    }

    /// Coefficients of `y^0 ..= y^deg_y` as polynomials in `t`.
    pub fn to_y_dense(&self) -> Vec<UniPoly> {
        if self.is_zero() {
            return Vec::new();
        }
        let mut rows = vec![vec![Elem::ZERO; self.deg_t() + 1]; self.deg_y() + 1];
        for (&(i, j), &c) in &self.terms {
            rows[j as usize][i as usize] = c;
        }
        rows.into_iter()
            .map(|r| UniPoly::from_raw(&self.field, r))
            .collect()
    }

    /// Leading coefficient in `y`, a polynomial in `t`.
    pub fn lc_y(&self) -> UniPoly {
        let d = self.deg_y() as u32;
        let v: Vec<(usize, Elem)> = self
            .terms
            .iter()
            .filter(|(k, _)| k.1 == d)
            .map(|(k, &c)| (k.0 as usize, c))
            .collect();
        let mut dense = vec![Elem::ZERO; v.iter().map(|x| x.0 + 1).max().unwrap_or(0)];
        for (i, c) in v {
            dense[i] = c;
        }
        UniPoly::from_raw(&self.field, dense)
    }

    /// Exchanges the roles of `t` and `y`.
    pub fn swap(&self) -> BiPoly {
        BiPoly {
            field: self.field.clone(),
            terms: self.terms.iter().map(|(&(i, j), &c)| ((j, i), c)).collect(),
        }
    }

    pub fn add(&self, other: &BiPoly) -> BiPoly {
        let f = &self.field;
        BiPoly::from_terms(f, self.terms().chain(other.terms()))
    }

    pub fn neg(&self) -> BiPoly {
        let f = &self.field;
        BiPoly {
            field: f.clone(),
            terms: self.terms.iter().map(|(&k, &c)| (k, f.neg(c))).collect(),
        }
    }

    pub fn sub(&self, other: &BiPoly) -> BiPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: Elem) -> BiPoly {
        let f = &self.field;
        BiPoly::from_terms(f, self.terms().map(|(i, j, a)| (i, j, f.mul(a, c))))
    }

    pub fn mul(&self, other: &BiPoly) -> BiPoly {
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return BiPoly::zero(f);
        }
        let (dt, dy) = (
            self.deg_t() + other.deg_t() + 1,
            self.deg_y() + other.deg_y() + 1,
        );
        let mut acc = vec![Elem::ZERO; dt * dy];
        for (&(i1, j1), &a) in &self.terms {
            for (&(i2, j2), &b) in &other.terms {
                let idx = (j1 + j2) as usize * dt + (i1 + i2) as usize;
                acc[idx] = f.add(acc[idx], f.mul(a, b));
            }
        }
        BiPoly::from_terms(
            f,
            acc.into_iter()
                .enumerate()
                .map(|(idx, c)| ((idx % dt) as u32, (idx / dt) as u32, c)),
        )
    }

    pub fn pow(&self, mut e: usize) -> BiPoly {
        let mut base = self.clone();
        let mut acc = BiPoly::constant(&self.field, Elem::ONE);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Specializes `t = t0`, giving a polynomial in `y`.
    pub fn eval_t(&self, t0: Elem) -> UniPoly {
        let f = &self.field;
        let mut out = vec![Elem::ZERO; self.deg_y() + 1];
        let pows = powers(f, t0, self.deg_t());
        for (&(i, j), &c) in &self.terms {
            out[j as usize] = f.add(out[j as usize], f.mul(c, pows[i as usize]));
        }
        UniPoly::from_raw(f, out)
    }

    /// Specializes `y = y0`, giving a polynomial in `t`.
    pub fn eval_y(&self, y0: Elem) -> UniPoly {
        self.swap().eval_t(y0)
    }

    pub fn eval(&self, t0: Elem, y0: Elem) -> Elem {
        self.eval_t(t0).eval(y0)
    }

    pub fn derivative_y(&self) -> BiPoly {
        let f = &self.field;
        let p = f.characteristic();
        BiPoly::from_terms(
            f,
            self.terms()
                .filter(|&(_, j, _)| j > 0)
                .map(|(i, j, c)| (i, j - 1, f.mul(c, f.from_i64((j as u64 % p) as i64)))),
        )
    }

    pub fn derivative_t(&self) -> BiPoly {
        self.swap().derivative_y().swap()
    }

    /// Substitutes `t -> t + c`.
    pub fn shift_t(&self, c: Elem) -> BiPoly {
        let rows = self.swap().to_y_dense();
        // rows[i] = coefficient of t^i as polynomial in y
        let f = &self.field;
        let n = rows.len();
        let mut cols: Vec<UniPoly> = rows;
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let add = cols[j + 1].scale(c);
                cols[j] = cols[j].add(&add);
            }
        }
        BiPoly::from_y_dense(f, &cols).swap()
    }

    /// Substitutes `y -> a*y + b(t)`.
    pub fn compose_y_affine(&self, a: Elem, b: &UniPoly) -> BiPoly {
        let f = &self.field;
        let lin = BiPoly::from_t(b).add(&BiPoly::from_terms(f, [(0, 1, a)]));
        let rows = self.to_y_dense();
        let mut acc = BiPoly::zero(f);
        for r in rows.iter().rev() {
            acc = acc.mul(&lin).add(&BiPoly::from_t(r));
        }
        acc
    }

    pub fn map_coeffs(&self, target: &Field, map: impl Fn(Elem) -> Elem) -> BiPoly {
        BiPoly::from_terms(target, self.terms().map(|(i, j, c)| (i, j, map(c))))
    }

    pub fn embed(&self, target: &Field) -> Result<BiPoly, PolyError> {
        if self.field.same_field(target) {
            return Ok(self.clone());
        }
        let e = embedding(&self.field, target)?;
        Ok(self.map_coeffs(target, |c| e.apply(c)))
    }

    pub fn restrict(&self, target: &Field) -> Option<BiPoly> {
        if self.field.same_field(target) {
            return Some(self.clone());
        }
        let e = embedding(target, &self.field).ok()?;
        let mut terms = Vec::with_capacity(self.terms.len());
        for (i, j, c) in self.terms() {
            terms.push((i, j, e.restrict(c)?));
        }
        Some(BiPoly::from_terms(target, terms))
    }

    pub fn frobenius_coeffs(&self, m: usize) -> BiPoly {
        let f = &self.field;
        self.map_coeffs(f, |c| f.frobenius(c, m))
    }

    /// Content with respect to `y`: monic gcd of the `y`-coefficients.
    pub fn content_t(&self) -> UniPoly {
        self.to_y_dense()
            .iter()
            .fold(UniPoly::zero(&self.field), |g, r| g.gcd(r))
    }

    /// Multiplies by a polynomial in `t`.
    pub fn mul_t(&self, c: &UniPoly) -> BiPoly {
        let rows: Vec<UniPoly> = self.to_y_dense().iter().map(|r| r.mul(c)).collect();
        BiPoly::from_y_dense(&self.field, &rows)
    }

    /// Divides every `y`-coefficient exactly by a polynomial in `t`.
    pub fn div_t_exact(&self, c: &UniPoly) -> Option<BiPoly> {
        let rows: Option<Vec<UniPoly>> = self.to_y_dense().iter().map(|r| r.div_exact(c)).collect();
        Some(BiPoly::from_y_dense(&self.field, &rows?))
    }

    pub fn primitive_part(&self) -> BiPoly {
        let c = self.content_t();
        if c.is_constant() {
            return self.clone();
        }
        self.div_t_exact(&c).expect("content divides")
    }

    /// Exact division in `F[t, y]`, `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &BiPoly) -> Option<BiPoly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        let f = &self.field;
        if self.is_zero() {
            return Some(BiPoly::zero(f));
        }
        let dn = d.deg_y();
        let drows = d.to_y_dense();
        let lc = &drows[dn];
        let mut r = self.to_y_dense();
        if r.len() < dn + 1 {
            return None;
        }
        let mut q = vec![UniPoly::zero(f); r.len() - dn];
        for i in (dn..r.len()).rev() {
            if r[i].is_zero() {
                continue;
            }
            let t = r[i].div_exact(lc)?;
            for (j, dj) in drows.iter().enumerate() {
                if !dj.is_zero() {
                    r[i - dn + j] = r[i - dn + j].sub(&t.mul(dj));
                }
            }
            q[i - dn] = t;
        }
        if r.iter().any(|x| !x.is_zero()) {
            return None;
        }
        Some(BiPoly::from_y_dense(f, &q))
    }

    /// Pseudo-remainder in `y`: `lc(d)^(deg a - deg d + 1) * a mod d`.
    pub fn prem_y(&self, d: &BiPoly) -> BiPoly {
        let f = &self.field;
        let dn = d.deg_y();
        let drows = d.to_y_dense();
        let lc = drows[dn].clone();
        let mut r = self.to_y_dense();
        if r.len() <= dn {
            return self.clone();
        }
        let steps = r.len() - dn;
        for i in (dn..r.len()).rev() {
            let c = r[i].clone();
            for row in r.iter_mut().take(i + 1) {
                *row = row.mul(&lc);
            }
            if !c.is_zero() {
                for (j, dj) in drows.iter().enumerate() {
                    r[i - dn + j] = r[i - dn + j].sub(&c.mul(dj));
                }
            }
            debug_assert!(r[i].is_zero());
        }
        let _ = steps;
        r.truncate(dn);
        BiPoly::from_y_dense(f, &r)
    }

    /// Normalizes so the leading `y`-coefficient is monic in `t`; returns the
    /// scalar removed.
    pub fn normalize(&self) -> (Elem, BiPoly) {
        let f = &self.field;
        if self.is_zero() {
            return (Elem::ZERO, self.clone());
        }
        let lc = self.lc_y().lc();
        let inv = f.inv(lc).expect("nonzero");
        (lc, self.scale(inv))
    }

    pub fn to_string_vars(&self, tv: &str, yv: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let f = &self.field;
        let mut parts = Vec::new();
        for (&(i, j), &c) in self.terms.iter().rev() {
            let mut mono = Vec::new();
            if c != Elem::ONE || (i == 0 && j == 0) {
                mono.push(f.format(c));
            }
            match i {
                0 => {}
                1 => mono.push(tv.to_string()),
                _ => mono.push(format!("{tv}^{i}")),
            }
            match j {
                0 => {}
                1 => mono.push(yv.to_string()),
                _ => mono.push(format!("{yv}^{j}")),
            }
            parts.push(mono.join("*"));
        }
        parts.join(" + ")
    }
}

pub(crate) fn powers(f: &Field, x: Elem, n: usize) -> Vec<Elem> {
    let mut v = Vec::with_capacity(n + 1);
    let mut cur = Elem::ONE;
    for _ in 0..=n {
        v.push(cur);
        cur = f.mul(cur, x);
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::make_field;

    #[test]
    fn division_and_shift() {
        let f = make_field(5, 1, 0).unwrap();
        let a = BiPoly::from_int_terms(&f, &[(1, 0, 1), (0, 1, 1), (2, 2, 3)]);
        let b = BiPoly::from_int_terms(&f, &[(0, 1, 2), (3, 0, 1), (1, 1, 1)]);
        let p = a.mul(&b);
        assert_eq!(p.div_exact(&a), Some(b.clone()));
        assert_eq!(p.add(&BiPoly::t(&f)).div_exact(&a), None);
        let c = f.from_i64(3);
        let s = p.shift_t(c);
        for t0 in 0..5 {
            let t0 = f.from_i64(t0);
            assert_eq!(s.eval_t(t0), p.eval_t(f.add(t0, c)));
        }
    }

    #[test]
    fn prem_is_multiple_remainder() {
        let f = make_field(7, 1, 0).unwrap();
        let a = BiPoly::from_int_terms(&f, &[(0, 3, 1), (1, 1, 2), (2, 0, 5)]);
        let d = BiPoly::from_int_terms(&f, &[(1, 2, 1), (0, 0, 1)]);
        let r = a.prem_y(&d);
        assert!(r.deg_y() < 2);
        // lc^2 * a - r is divisible by d
        let lc = d.lc_y();
        let lhs = a.mul_t(&lc.pow(2)).sub(&r);
        assert!(lhs.div_exact(&d).is_some());
    }
}
