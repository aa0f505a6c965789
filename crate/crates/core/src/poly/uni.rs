//! Dense univariate polynomials over a [`FieldCtx`](crate::ff::FieldCtx).

use std::fmt;

use crate::ff::{Elem, Field};

/// Dense polynomial, `coeffs[i]` is the coefficient of `x^i`. No trailing zeros.
#[derive(Clone)]
pub struct UniPoly {
    field: Field,
    coeffs: Vec<Elem>,
}

impl PartialEq for UniPoly {
    fn eq(&self, other: &Self) -> bool {
        self.field.same_field(&other.field) && self.coeffs == other.coeffs
    }
}
impl Eq for UniPoly {}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_var("x"))
    }
}

impl UniPoly {
    pub fn from_raw(field: &Field, mut coeffs: Vec<Elem>) -> UniPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly {
            field: field.clone(),
            coeffs,
        }
    }

    /// Coefficients from small integers reduced into the prime field.
    pub fn from_ints(field: &Field, coeffs: &[i64]) -> UniPoly {
        UniPoly::from_raw(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn zero(field: &Field) -> UniPoly {
        UniPoly::from_raw(field, Vec::new())
    }

    pub fn constant(field: &Field, c: Elem) -> UniPoly {
        UniPoly::from_raw(field, vec![c])
    }

    pub fn one(field: &Field) -> UniPoly {
        UniPoly::constant(field, Elem::ONE)
    }

    /// `x`.
    pub fn x(field: &Field) -> UniPoly {
        UniPoly::from_raw(field, vec![Elem::ZERO, Elem::ONE])
    }

    /// `c * x^n`.
    pub fn monomial(field: &Field, c: Elem, n: usize) -> UniPoly {
        let mut v = vec![Elem::ZERO; n + 1];
        v[n] = c;
        UniPoly::from_raw(field, v)
    }

    /// `x - r`.
    pub fn linear_root(field: &Field, r: Elem) -> UniPoly {
        UniPoly::from_raw(field, vec![field.neg(r), Elem::ONE])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Elem> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(Elem::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lc(&self) -> Elem {
        self.coeffs.last().copied().unwrap_or(Elem::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.lc() == Elem::ONE
    }

    /// Trailing zero count (order of vanishing at 0); `None` for zero.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn eval(&self, x: Elem) -> Elem {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(Elem::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n)
            .map(|i| f.add(self.coeff(i), other.coeff(i)))
            .collect();
        UniPoly::from_raw(f, v)
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n)
            .map(|i| f.sub(self.coeff(i), other.coeff(i)))
            .collect();
        UniPoly::from_raw(f, v)
    }

    pub fn neg(&self) -> UniPoly {
        let f = &self.field;
        UniPoly::from_raw(f, self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }

    pub fn scale(&self, c: Elem) -> UniPoly {
        let f = &self.field;
        UniPoly::from_raw(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// Multiplies by `x^n`.
    pub fn shift(&self, n: usize) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![Elem::ZERO; n];
        v.extend_from_slice(&self.coeffs);
        UniPoly::from_raw(&self.field, v)
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero(&self.field);
        }
        let f = &self.field;
        let mut v = vec![Elem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    v[i + j] = f.add(v[i + j], f.mul(a, b));
                }
            }
        }
        UniPoly::from_raw(f, v)
    }

    /// Truncated product modulo `x^n`.
    pub fn mul_trunc(&self, other: &UniPoly, n: usize) -> UniPoly {
        let f = &self.field;
        let mut v = vec![Elem::ZERO; n];
        for (i, &a) in self.coeffs.iter().enumerate().take(n) {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate().take(n - i) {
                if !b.is_zero() {
                    v[i + j] = f.add(v[i + j], f.mul(a, b));
                }
            }
        }
        UniPoly::from_raw(f, v)
    }

    pub fn truncate(&self, n: usize) -> UniPoly {
        UniPoly::from_raw(&self.field, self.coeffs.iter().take(n).copied().collect())
    }

    pub fn pow(&self, mut e: usize) -> UniPoly {
        let mut base = self.clone();
        let mut acc = UniPoly::one(&self.field);
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

    /// Quotient and remainder; panics on a zero divisor.
    pub fn divrem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let f = &self.field;
        let dn = d.deg();
        if self.coeffs.len() <= dn {
            return (UniPoly::zero(f), self.clone());
        }
        let inv = f.inv(d.lc()).expect("nonzero leading coefficient");
        let mut r = self.coeffs.clone();
        let mut q = vec![Elem::ZERO; r.len() - dn];
        for i in (dn..r.len()).rev() {
            let c = r[i];
            if c.is_zero() {
                continue;
            }
            let t = f.mul(c, inv);
            q[i - dn] = t;
            for j in 0..=dn {
                let dj = d.coeffs[j];
                if !dj.is_zero() {
                    r[i - dn + j] = f.sub(r[i - dn + j], f.mul(t, dj));
                }
            }
        }
        r.truncate(dn);
        (UniPoly::from_raw(f, q), UniPoly::from_raw(f, r))
    }

    pub fn rem(&self, d: &UniPoly) -> UniPoly {
        self.divrem(d).1
    }

    /// Exact quotient, `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &UniPoly) -> Option<UniPoly> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    pub fn monic(&self) -> UniPoly {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        let inv = self.field.inv(self.lc()).expect("nonzero");
        self.scale(inv)
    }

    pub fn derivative(&self) -> UniPoly {
        let f = &self.field;
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(c, f.from_i64((i as u64 % f.characteristic()) as i64)))
            .collect();
        UniPoly::from_raw(f, v)
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `s*self + t*other = g` monic.
    pub fn xgcd(&self, other: &UniPoly) -> (UniPoly, UniPoly, UniPoly) {
        let f = &self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (UniPoly::one(f), UniPoly::zero(f));
        let (mut t0, mut t1) = (UniPoly::zero(f), UniPoly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = r1;
            r1 = r;
            let s = s0.sub(&q.mul(&s1));
            s0 = s1;
            s1 = s;
            let t = t0.sub(&q.mul(&t1));
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = f.inv(r0.lc()).expect("nonzero");
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    pub fn mul_mod(&self, other: &UniPoly, m: &UniPoly) -> UniPoly {
        self.mul(other).rem(m)
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u128, m: &UniPoly) -> UniPoly {
        let mut base = self.rem(m);
        let mut acc = UniPoly::one(&self.field).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(&base, m);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_mod(&base, m);
            }
        }
        acc
    }

    /// `self^q mod m` where `q` is the field order, via `k` successive `p`-th powers.
    pub fn frobenius_mod(&self, m: &UniPoly) -> UniPoly {
        let f = &self.field;
        let mut cur = self.rem(m);
        for _ in 0..f.degree() {
            cur = cur.pow_mod(f.characteristic() as u128, m);
        }
        cur
    }

    /// `self(g(x))`.
    pub fn compose(&self, g: &UniPoly) -> UniPoly {
        let f = &self.field;
        let mut acc = UniPoly::zero(f);
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(g).add(&UniPoly::constant(f, c));
        }
        acc
    }

    /// `self(x + c)`.
    pub fn taylor_shift(&self, c: Elem) -> UniPoly {
        let f = &self.field;
        let mut v = self.coeffs.clone();
        let n = v.len();
        if c.is_zero() || n < 2 {
            return self.clone();
        }
        for i in 0..n {
            for j in (i..n - 1).rev() {
                v[j] = f.add(v[j], f.mul(c, v[j + 1]));
            }
        }
        UniPoly::from_raw(f, v)
    }

    /// Maps every coefficient through `map`, possibly into another field.
    pub fn map_coeffs(&self, target: &Field, map: impl Fn(Elem) -> Elem) -> UniPoly {
        UniPoly::from_raw(target, self.coeffs.iter().map(|&c| map(c)).collect())
    }

    /// Applies the field Frobenius `a -> a^(p^m)` to each coefficient.
    pub fn frobenius_coeffs(&self, m: usize) -> UniPoly {
        let f = &self.field;
        UniPoly::from_raw(f, self.coeffs.iter().map(|&c| f.frobenius(c, m)).collect())
    }

    /// Multiplicity of `r` as a root.
    pub fn root_multiplicity(&self, r: Elem) -> usize {
        if self.is_zero() {
            return usize::MAX;
        }
        let lin = UniPoly::linear_root(&self.field, r);
        let mut cur = self.clone();
        let mut m = 0;
        while let Some(q) = cur.div_exact(&lin) {
            cur = q;
            m += 1;
        }
        m
    }

    pub fn to_string_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let f = &self.field;
        let mut parts = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = f.format(c);
            let term = match i {
                0 => cs,
                1 if c == Elem::ONE => var.to_string(),
                1 => format!("{cs}*{var}"),
                _ if c == Elem::ONE => format!("{var}^{i}"),
                _ => format!("{cs}*{var}^{i}"),
            };
            parts.push(term);
        }
        parts.join(" + ")
    }
}

/// Lagrange-free interpolation through `(xs[i], ys[i])` with distinct `xs`
/// (Newton divided differences).
pub fn interpolate(field: &Field, xs: &[Elem], ys: &[Elem]) -> UniPoly {
    let f = field;
    let n = xs.len();
    let mut coef = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = f.sub(coef[i], coef[i - 1]);
            let den = f.sub(xs[i], xs[i - j]);
            coef[i] = f.mul(num, f.inv(den).expect("distinct interpolation nodes"));
        }
    }
    let mut acc = UniPoly::zero(f);
    for i in (0..n).rev() {
        acc = acc
            .mul(&UniPoly::linear_root(f, xs[i]))
            .add(&UniPoly::constant(f, coef[i]));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::make_field;

    #[test]
    fn gcd_examples() {
        let f = make_field(3, 1, 0).unwrap();
        let a = UniPoly::from_ints(&f, &[-1, 0, 1]);
        let b = UniPoly::from_ints(&f, &[-1, 1]);
        assert_eq!(a.gcd(&b), b);
        let c = UniPoly::from_ints(&f, &[0, -1, 0, 1]);
        let d = UniPoly::from_ints(&f, &[0, 0, 1]);
        assert_eq!(c.gcd(&d), UniPoly::x(&f));
        let e = UniPoly::from_ints(&f, &[1, 0, 2]);
        assert_eq!(e.gcd(&UniPoly::zero(&f)), e.monic());
    }

    #[test]
    fn xgcd_bezout() {
        let f = make_field(7, 1, 0).unwrap();
        let a = UniPoly::from_ints(&f, &[3, 1, 4, 1, 5]);
        let b = UniPoly::from_ints(&f, &[2, 6, 5]);
        let (g, s, t) = a.xgcd(&b);
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let f = make_field(5, 2, 0).unwrap();
        let p = UniPoly::from_ints(&f, &[1, 2, 3, 4]);
        let xs: Vec<Elem> = f.elements().take(6).collect();
        let ys: Vec<Elem> = xs.iter().map(|&x| p.eval(x)).collect();
        assert_eq!(interpolate(&f, &xs, &ys), p);
    }

    #[test]
    fn taylor_shift_matches_compose() {
        let f = make_field(3, 2, 0).unwrap();
        let p = UniPoly::from_ints(&f, &[1, 0, 2, 1, 1]);
        let c = f.generator();
        let lin = UniPoly::from_raw(&f, vec![c, Elem::ONE]);
        assert_eq!(p.taylor_shift(c), p.compose(&lin));
    }
}
