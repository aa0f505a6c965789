use std::collections::BTreeMap;
use std::fmt;

use crate::ff::{embedding, Elem, Field, FieldError};
use crate::poly::{BiPoly, UniPoly};

/// Sparse polynomial in `X, Y, Z`.
#[derive(Clone)]
pub struct TriPoly {
    field: Field,
    terms: BTreeMap<[u32; 3], Elem>,
}

impl PartialEq for TriPoly {
    fn eq(&self, other: &Self) -> bool {
        self.field.same_field(&other.field) && self.terms == other.terms
    }
}
impl Eq for TriPoly {}

impl fmt::Debug for TriPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for TriPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (e, &c) in self.terms.iter().rev() {
            let mut mono = Vec::new();
            if c != Elem::ONE || e == &[0, 0, 0] {
                mono.push(self.field.format(c));
            }
            for (k, v) in ["X", "Y", "Z"].iter().enumerate() {
                match e[k] {
                    0 => {}
                    1 => mono.push(v.to_string()),
                    n => mono.push(format!("{v}^{n}")),
                }
            }
            parts.push(mono.join("*"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl TriPoly {
    pub fn zero(field: &Field) -> TriPoly {
        TriPoly {
            field: field.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(field: &Field, terms: impl IntoIterator<Item = ([u32; 3], Elem)>) -> TriPoly {
        let mut map: BTreeMap<[u32; 3], Elem> = BTreeMap::new();
        for (e, c) in terms {
            if c.is_zero() {
                continue;
            }
            let slot = map.entry(e).or_insert(Elem::ZERO);
            *slot = field.add(*slot, c);
        }
        map.retain(|_, c| !c.is_zero());
        TriPoly {
            field: field.clone(),
            terms: map,
        }
    }

    /// `X`, `Y` or `Z` for `var = 0, 1, 2`.
    pub fn var(field: &Field, var: usize) -> TriPoly {
        let mut e = [0; 3];
        e[var] = 1;
        TriPoly::from_terms(field, [(e, Elem::ONE)])
    }

    /// `a X + b Y + c Z`.
    pub fn linear(field: &Field, coeffs: [Elem; 3]) -> TriPoly {
        TriPoly::from_terms(
            field,
            (0..3).map(|k| {
                let mut e = [0; 3];
                e[k] = 1;
                (e, coeffs[k])
            }),
        )
    }

    pub fn constant(field: &Field, c: Elem) -> TriPoly {
        TriPoly::from_terms(field, [([0, 0, 0], c)])
    }

    /// `Z^d f(X/Z, Y/Z)` with `t` read as `x`.
    pub fn homogenize(f: &BiPoly, d: usize) -> TriPoly {
        TriPoly::from_terms(
            f.field(),
            f.terms().map(|(i, j, c)| ([i, j, d as u32 - i - j], c)),
        )
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn terms(&self) -> impl Iterator<Item = ([u32; 3], Elem)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: [u32; 3]) -> Elem {
        self.terms.get(&e).copied().unwrap_or(Elem::ZERO)
    }

    /// Total degree of the highest monomial.
    pub fn degree(&self) -> usize {
        self.terms
            .keys()
            .map(|e| (e[0] + e[1] + e[2]) as usize)
            .max()
            .unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let d = self.degree() as u32;
        self.terms.keys().all(|e| e[0] + e[1] + e[2] == d)
    }

    pub fn add(&self, other: &TriPoly) -> TriPoly {
        TriPoly::from_terms(&self.field, self.terms().chain(other.terms()))
    }

    pub fn neg(&self) -> TriPoly {
        let f = &self.field;
        TriPoly::from_terms(f, self.terms().map(|(e, c)| (e, f.neg(c))))
    }

    pub fn sub(&self, other: &TriPoly) -> TriPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: Elem) -> TriPoly {
        let f = &self.field;
        TriPoly::from_terms(f, self.terms().map(|(e, a)| (e, f.mul(a, c))))
    }

    pub fn mul(&self, other: &TriPoly) -> TriPoly {
        let f = &self.field;
        let mut acc: BTreeMap<[u32; 3], Elem> = BTreeMap::new();
        for (&e1, &a) in &self.terms {
            for (&e2, &b) in &other.terms {
                let e = [e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]];
                let slot = acc.entry(e).or_insert(Elem::ZERO);
                *slot = f.add(*slot, f.mul(a, b));
            }
        }
        TriPoly::from_terms(f, acc)
    }

    pub fn pow(&self, mut e: usize) -> TriPoly {
        let mut base = self.clone();
        let mut acc = TriPoly::constant(&self.field, Elem::ONE);
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

    pub fn eval(&self, p: [Elem; 3]) -> Elem {
        let f = &self.field;
        let mut acc = Elem::ZERO;
        for (e, c) in self.terms() {
            let mut v = c;
            for k in 0..3 {
                v = f.mul(v, f.pow(p[k], e[k] as u128));
            }
            acc = f.add(acc, v);
        }
        acc
    }

    /// Formal partial derivative in `X`, `Y` or `Z`.
    pub fn partial(&self, var: usize) -> TriPoly {
        let f = &self.field;
        let p = f.characteristic();
        TriPoly::from_terms(
            f,
            self.terms().filter(|(e, _)| e[var] > 0).map(|(mut e, c)| {
                let k = e[var] as u64 % p;
                e[var] -= 1;
                (e, f.mul(c, f.from_i64(k as i64)))
            }),
        )
    }

    /// Sets the variable `var` to 1; the other two (in order) become `(t, y)`.
    pub fn dehomogenize(&self, var: usize) -> BiPoly {
        let (a, b) = other_vars(var);
        BiPoly::from_terms(&self.field, self.terms().map(|(e, c)| (e[a], e[b], c)))
    }

    /// `F(M (X, Y, Z)^T)`: substitutes each variable by the corresponding
    /// row of `m` read as a linear form.
    pub fn linear_change(&self, m: &[[Elem; 3]; 3]) -> TriPoly {
        let f = &self.field;
        let d = self.degree();
        let forms: Vec<TriPoly> = (0..3).map(|r| TriPoly::linear(f, m[r])).collect();
        let powers: Vec<Vec<TriPoly>> = forms
            .iter()
            .map(|l| {
                let mut v = vec![TriPoly::constant(f, Elem::ONE)];
                for k in 1..=d {
                    let next = v[k - 1].mul(l);
                    v.push(next);
                }
                v
            })
            .collect();
        let mut acc = TriPoly::zero(f);
        for (e, c) in self.terms() {
            let mono = powers[0][e[0] as usize]
                .mul(&powers[1][e[1] as usize])
                .mul(&powers[2][e[2] as usize]);
            acc = acc.add(&mono.scale(c));
        }
        acc
    }

    /// Restricts to the line `u * a + v * b`, giving `F(u a + b)` as a
    /// polynomial in `u` (the point `a` itself is the root at infinity).
    pub fn on_line(&self, a: [Elem; 3], b: [Elem; 3]) -> UniPoly {
        let f = &self.field;
        let d = self.degree();
        let coord = |k: usize| UniPoly::from_raw(f, vec![b[k], a[k]]);
        let powers: Vec<Vec<UniPoly>> = (0..3)
            .map(|k| {
                let l = coord(k);
                let mut v = vec![UniPoly::one(f)];
                for i in 1..=d {
                    let next = v[i - 1].mul(&l);
                    v.push(next);
                }
                v
            })
            .collect();
        let mut acc = UniPoly::zero(f);
        for (e, c) in self.terms() {
            let mono = powers[0][e[0] as usize]
                .mul(&powers[1][e[1] as usize])
                .mul(&powers[2][e[2] as usize]);
            acc = acc.add(&mono.scale(c));
        }
        acc
    }

    pub fn embed(&self, target: &Field) -> Result<TriPoly, FieldError> {
        if self.field.same_field(target) {
            return Ok(self.clone());
        }
        let e = embedding(&self.field, target)?;
        Ok(TriPoly::from_terms(
            target,
            self.terms().map(|(x, c)| (x, e.apply(c))),
        ))
    }

    pub fn restrict(&self, target: &Field) -> Option<TriPoly> {
        if self.field.same_field(target) {
            return Some(self.clone());
        }
        let e = embedding(target, &self.field).ok()?;
        let mut out = Vec::new();
        for (x, c) in self.terms() {
            out.push((x, e.restrict(c)?));
        }
        Some(TriPoly::from_terms(target, out))
    }
}

/// The two variables kept when `var` is set to 1, in increasing order.
pub(crate) fn other_vars(var: usize) -> (usize, usize) {
    match var {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    }
}
