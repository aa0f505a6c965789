//! Finite fields `F_{p^k}` presented over the prime field, with a lazily
//! grown single-step tower and on-demand embeddings between its members.
//!
//! Elements are plain `Copy` values ([`Elem`]) that pack the power-basis
//! coordinates of the element as a base-`p` integer: coordinate `i` is the
//! `i`-th base-`p` digit. Arithmetic always goes through the owning
//! [`FieldCtx`]. [`FqElem`] bundles an element with its field for the checked
//! public surface.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::UniPoly;

/// Largest field order for which log/exp tables are built.
const TABLE_LIMIT: u64 = 1 << 20;
/// Largest field order for which a full addition table is built.
const ADD_TABLE_LIMIT: u64 = 729;
/// Attempts allowed when searching for an irreducible defining polynomial.
const SEARCH_RETRY_LIMIT: usize = 100_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("F_{p}^{k} is too large for packed elements")]
    TooLarge { p: u64, k: usize },
    #[error("no irreducible polynomial of degree {k} over F_{p} found in {tries} tries")]
    RetryLimit { p: u64, k: usize, tries: usize },
    #[error("operands live in different fields ({0} vs {1})")]
    Mismatch(String, String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("subfield degree {sub} does not divide field degree {deg}")]
    NotDivisor { sub: usize, deg: usize },
    #[error("cannot embed a degree-{from} field into a degree-{to} field")]
    Incompatible { from: usize, to: usize },
    #[error("fields belong to different towers")]
    ForeignTower,
    #[error("embedding data missing: the defining polynomial has no root in the target")]
    MissingEmbedding,
    #[error("element does not lie in the requested subfield")]
    NotInSubfield,
    #[error("defining polynomial is not monic irreducible of degree {0}")]
    BadModulus(usize),
    #[error("coordinate vector has the wrong length or an entry out of range")]
    BadCoordinates,
}

/// A field element in packed power-basis form. Meaningless without its field.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Elem(pub(crate) u64);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    /// Packed base-`p` representation.
    pub fn raw(self) -> u64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

pub type Field = Arc<FieldCtx>;

/// Identifies a tower: a family of fields over the same prime whose
/// defining polynomials are chosen reproducibly.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TowerKey {
    /// Every degree found by seeded random search.
    Seeded { p: u64, seed: u64 },
    /// One degree pinned to an explicit modulus; the rest seeded with `seed`.
    Pinned {
        p: u64,
        seed: u64,
        degree: usize,
        modulus: Vec<u64>,
    },
}

impl TowerKey {
    pub fn prime(&self) -> u64 {
        match self {
            TowerKey::Seeded { p, .. } | TowerKey::Pinned { p, .. } => *p,
        }
    }

    pub fn seed(&self) -> u64 {
        match self {
            TowerKey::Seeded { seed, .. } | TowerKey::Pinned { seed, .. } => *seed,
        }
    }
}

struct Tables {
    exp: Vec<u32>,
    log: Vec<u32>,
    add: Option<Vec<u32>>,
}

pub struct FieldCtx {
    p: u64,
    k: usize,
    q: u64,
    key: TowerKey,
    /// Monic defining polynomial, low degree first, length `k + 1`.
    modulus: Vec<u64>,
    pow_p: Vec<u64>,
    /// `x^(i*p)` reduced, used for the generic Frobenius.
    frob_basis: Vec<Elem>,
    tables: Option<Tables>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{} {:?}", self.p, self.k, self.modulus)
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.k == other.k && self.key == other.key
    }
}
impl Eq for FieldCtx {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn checked_order(p: u64, k: usize) -> Option<u64> {
    let mut q: u64 = 1;
    for _ in 0..k {
        q = q.checked_mul(p)?;
    }
    if q >= 1 << 62 {
        None
    } else {
        Some(q)
    }
}

impl FieldCtx {
    fn build(key: TowerKey, k: usize, modulus: Vec<u64>) -> Result<FieldCtx, FieldError> {
        let p = key.prime();
        let q = checked_order(p, k).ok_or(FieldError::TooLarge { p, k })?;
        let mut pow_p = Vec::with_capacity(k);
        let mut acc = 1u64;
        for _ in 0..k {
            pow_p.push(acc);
            acc = acc.wrapping_mul(p);
        }
        let mut ctx = FieldCtx {
            p,
            k,
            q,
            key,
            modulus,
            pow_p,
            frob_basis: Vec::new(),
            tables: None,
        };
        let x = if k == 1 { Elem(0) } else { Elem(p) };
        let xp = ctx.pow_generic(x, p as u128);
        let mut basis = Vec::with_capacity(k);
        let mut cur = Elem::ONE;
        for _ in 0..k {
            basis.push(cur);
            cur = ctx.mul_generic(cur, xp);
        }
        ctx.frob_basis = basis;
        if k > 1 && q <= TABLE_LIMIT {
            ctx.tables = Some(ctx.build_tables());
        }
        Ok(ctx)
    }

    fn build_tables(&self) -> Tables {
        let n = self.q - 1;
        let primes = prime_factors(n);
        let mut g = 2u64;
        let gen = loop {
            let cand = Elem(g);
            if primes
                .iter()
                .all(|&r| self.pow_generic(cand, (n / r) as u128) != Elem::ONE)
            {
                break cand;
            }
            g += 1;
        };
        let mut exp = vec![0u32; n as usize];
        let mut log = vec![0u32; self.q as usize];
        let mut cur = Elem::ONE;
        for i in 0..n as usize {
            exp[i] = cur.0 as u32;
            log[cur.0 as usize] = i as u32;
            cur = self.mul_generic(cur, gen);
        }
        let add = if self.q <= ADD_TABLE_LIMIT {
            let q = self.q as usize;
            let mut t = vec![0u32; q * q];
            for a in 0..q {
                for b in 0..q {
                    t[a * q + b] = self.add_generic(Elem(a as u64), Elem(b as u64)).0 as u32;
                }
            }
            Some(t)
        } else {
            None
        };
        Tables { exp, log, add }
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    /// Number of elements.
    pub fn order(&self) -> u64 {
        self.q
    }

    pub fn tower_key(&self) -> &TowerKey {
        &self.key
    }

    /// The tower this field belongs to.
    pub fn tower(&self) -> Arc<Tower> {
        Tower::lookup(&self.key)
    }

    /// Defining polynomial coefficients, low degree first (monic).
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn same_field(&self, other: &FieldCtx) -> bool {
        self == other
    }

    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    pub fn one(&self) -> Elem {
        Elem::ONE
    }

    /// Image of an integer in the prime subfield.
    pub fn from_i64(&self, v: i64) -> Elem {
        Elem(v.rem_euclid(self.p as i64) as u64)
    }

    /// The class of `X` modulo the defining polynomial.
    pub fn generator(&self) -> Elem {
        if self.k == 1 {
            Elem(0)
        } else {
            Elem(self.p)
        }
    }

    pub fn from_coords(&self, coords: &[u64]) -> Result<Elem, FieldError> {
        if coords.len() > self.k || coords.iter().any(|&c| c >= self.p) {
            return Err(FieldError::BadCoordinates);
        }
        Ok(Elem(
            coords
                .iter()
                .enumerate()
                .map(|(i, &c)| c * self.pow_p[i])
                .sum(),
        ))
    }

    /// Coordinates reduced modulo `p`, accepting negative inputs.
    pub fn from_signed_coords(&self, coords: &[i64]) -> Result<Elem, FieldError> {
        let c: Vec<u64> = coords
            .iter()
            .map(|&v| v.rem_euclid(self.p as i64) as u64)
            .collect();
        self.from_coords(&c)
    }

    pub fn coords(&self, a: Elem) -> Vec<u64> {
        let mut v = a.0;
        (0..self.k)
            .map(|_| {
                let d = v % self.p;
                v /= self.p;
                d
            })
            .collect()
    }

    /// Iterates over all elements in packed order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.q).map(Elem)
    }

    pub fn format(&self, a: Elem) -> String {
        if self.k == 1 {
            a.0.to_string()
        } else {
            let c = self.coords(a);
            let parts: Vec<String> = c.iter().map(|d| d.to_string()).collect();
            format!("[{}]", parts.join(","))
        }
    }

    fn add_generic(&self, a: Elem, b: Elem) -> Elem {
        let p = self.p;
        if p == 2 {
            return Elem(a.0 ^ b.0);
        }
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0u64;
        let mut place = 1u64;
        while x > 0 || y > 0 {
            let d = (x % p + y % p) % p;
            out += d * place;
            x /= p;
            y /= p;
            place = place.wrapping_mul(p);
        }
        Elem(out)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.k == 1 {
            let s = a.0 + b.0;
            return Elem(if s >= self.p { s - self.p } else { s });
        }
        if let Some(t) = &self.tables {
            if let Some(add) = &t.add {
                return Elem(add[(a.0 * self.q + b.0) as usize] as u64);
            }
        }
        self.add_generic(a, b)
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        if a.0 == 0 {
            return a;
        }
        if self.k == 1 {
            return Elem(self.p - a.0);
        }
        let p = self.p;
        let mut x = a.0;
        let mut out = 0u64;
        let mut place = 1u64;
        while x > 0 {
            let d = x % p;
            out += ((p - d) % p) * place;
            x /= p;
            place = place.wrapping_mul(p);
        }
        Elem(out)
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    fn mul_generic(&self, a: Elem, b: Elem) -> Elem {
        let p = self.p;
        let k = self.k;
        if k == 1 {
            return Elem(a.0 * b.0 % p);
        }
        let mut da = [0u64; 64];
        let mut db = [0u64; 64];
        let (mut x, mut y) = (a.0, b.0);
        for i in 0..k {
            da[i] = x % p;
            db[i] = y % p;
            x /= p;
            y /= p;
        }
        let mut prod = [0u64; 128];
        for i in 0..k {
            if da[i] == 0 {
                continue;
            }
            for j in 0..k {
                prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
            }
        }
        for i in (k..2 * k - 1).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for j in 0..k {
                let m = self.modulus[j];
                if m != 0 {
                    prod[i - k + j] = (prod[i - k + j] + (p - c) * m) % p;
                }
            }
        }
        let mut out = 0u64;
        for i in (0..k).rev() {
            out = out * p + prod[i];
        }
        Elem(out)
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        if self.k == 1 {
            return Elem(a.0 * b.0 % self.p);
        }
        if let Some(t) = &self.tables {
            let n = self.q - 1;
            let e = (t.log[a.0 as usize] as u64 + t.log[b.0 as usize] as u64) % n;
            return Elem(t.exp[e as usize] as u64);
        }
        self.mul_generic(a, b)
    }

    fn pow_generic(&self, a: Elem, mut e: u128) -> Elem {
        let mut base = a;
        let mut acc = Elem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_generic(acc, base);
            }
            base = self.mul_generic(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn pow(&self, a: Elem, e: u128) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        if a.0 == 0 {
            return Elem::ZERO;
        }
        if let Some(t) = &self.tables {
            let n = (self.q - 1) as u128;
            let l = (t.log[a.0 as usize] as u128 * (e % n)) % n;
            return Elem(t.exp[l as usize] as u64);
        }
        self.pow_generic(a, e)
    }

    pub fn inv(&self, a: Elem) -> Option<Elem> {
        if a.0 == 0 {
            return None;
        }
        if let Some(t) = &self.tables {
            let n = self.q - 1;
            let l = t.log[a.0 as usize] as u64;
            return Some(Elem(t.exp[((n - l) % n) as usize] as u64));
        }
        Some(self.pow(a, (self.q - 2) as u128))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem, FieldError> {
        let bi = self.inv(b).ok_or(FieldError::DivisionByZero)?;
        Ok(self.mul(a, bi))
    }

    /// `a^(p^m)`, by `m` successive `p`-th powerings.
    pub fn frobenius(&self, a: Elem, m: usize) -> Elem {
        let m = m % self.k;
        if m == 0 || a.0 == 0 {
            return a;
        }
        if let Some(t) = &self.tables {
            let n = self.q - 1;
            let mut l = t.log[a.0 as usize] as u64;
            for _ in 0..m {
                l = l * self.p % n;
            }
            return Elem(t.exp[l as usize] as u64);
        }
        let mut cur = a;
        for _ in 0..m {
            let c = self.coords(cur);
            let mut out = Elem::ZERO;
            for (i, &d) in c.iter().enumerate() {
                if d != 0 {
                    out = self.add(out, self.mul(Elem(d), self.frob_basis[i]));
                }
            }
            cur = out;
        }
        cur
    }

    /// Whether `a` lies in the subfield of degree `sub`.
    pub fn in_subfield(&self, a: Elem, sub: usize) -> Result<bool, FieldError> {
        if sub == 0 || !self.k.is_multiple_of(sub) {
            return Err(FieldError::NotDivisor { sub, deg: self.k });
        }
        Ok(self.frobenius(a, sub) == a)
    }

    /// Smallest subfield degree containing `a`.
    pub fn min_subfield(&self, a: Elem) -> usize {
        (1..=self.k)
            .filter(|d| self.k.is_multiple_of(*d))
            .find(|&d| self.frobenius(a, d) == a)
            .unwrap_or(self.k)
    }

    /// A primitive `n`-th root of unity, if `n | q - 1`. Deterministic.
    pub fn primitive_root_of_unity(&self, n: u64) -> Option<Elem> {
        if n == 0 || !(self.q - 1).is_multiple_of(n) {
            return None;
        }
        if n == 1 {
            return Some(Elem::ONE);
        }
        let primes = prime_factors(n);
        let cof = (self.q - 1) / n;
        for raw in 1..self.q {
            let z = self.pow(Elem(raw), cof as u128);
            if primes
                .iter()
                .all(|&r| self.pow(z, (n / r) as u128) != Elem::ONE)
            {
                return Some(z);
            }
        }
        None
    }
}

/// An element together with its field, for checked arithmetic.
#[derive(Clone)]
pub struct FqElem {
    field: Field,
    value: Elem,
}

impl fmt::Debug for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.field.format(self.value))
    }
}

impl PartialEq for FqElem {
    fn eq(&self, other: &Self) -> bool {
        self.field.same_field(&other.field) && self.value == other.value
    }
}
impl Eq for FqElem {}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl FqElem {
    pub fn new(field: &Field, value: Elem) -> FqElem {
        FqElem {
            field: field.clone(),
            value,
        }
    }

    pub fn from_coords(field: &Field, coords: &[u64]) -> Result<FqElem, FieldError> {
        Ok(FqElem::new(field, field.from_coords(coords)?))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn value(&self) -> Elem {
        self.value
    }

    pub fn coords(&self) -> Vec<u64> {
        self.field.coords(self.value)
    }

    pub fn arith(&self, other: &FqElem, op: ArithOp) -> Result<FqElem, FieldError> {
        field_arith(self, other, op)
    }

    pub fn frobenius(&self, m: usize) -> FqElem {
        FqElem::new(&self.field, self.field.frobenius(self.value, m))
    }

    pub fn in_subfield(&self, sub: usize) -> Result<bool, FieldError> {
        self.field.in_subfield(self.value, sub)
    }

    pub fn embed(&self, target: &Field) -> Result<FqElem, FieldError> {
        let e = embedding(&self.field, target)?;
        Ok(FqElem::new(target, e.apply(self.value)))
    }
}

pub fn field_arith(a: &FqElem, b: &FqElem, op: ArithOp) -> Result<FqElem, FieldError> {
    if !a.field.same_field(&b.field) {
        return Err(FieldError::Mismatch(
            format!("{:?}", a.field),
            format!("{:?}", b.field),
        ));
    }
    let f = &a.field;
    let v = match op {
        ArithOp::Add => f.add(a.value, b.value),
        ArithOp::Sub => f.sub(a.value, b.value),
        ArithOp::Mul => f.mul(a.value, b.value),
        ArithOp::Div => f.div(a.value, b.value)?,
    };
    Ok(FqElem::new(f, v))
}

/// Field-homomorphic map `F_{p^a} -> F_{p^b}` determined by the image of the
/// source generator.
pub struct Embedding {
    from: Field,
    to: Field,
    /// Images of the source power basis `1, r, r^2, ...`.
    images: Vec<Elem>,
    /// Target coordinate rows used to invert the map.
    pivots: Vec<usize>,
    /// Inverse of the `a × a` pivot submatrix, over `F_p`.
    inverse: Vec<Vec<u64>>,
}

impl Embedding {
    pub fn source(&self) -> &Field {
        &self.from
    }

    pub fn target(&self) -> &Field {
        &self.to
    }

    pub fn apply(&self, a: Elem) -> Elem {
        if self.from.k == 1 {
            return a;
        }
        let c = self.from.coords(a);
        let mut out = Elem::ZERO;
        for (i, &d) in c.iter().enumerate() {
            if d != 0 {
                out = self.to.add(out, self.to.mul(Elem(d), self.images[i]));
            }
        }
        out
    }

    /// Preimage of `b`, if `b` lies in the image.
    pub fn restrict(&self, b: Elem) -> Option<Elem> {
        let p = self.from.p;
        if self.from.k == 1 {
            return if b.0 < p { Some(b) } else { None };
        }
        let y = self.to.coords(b);
        let a = self.from.k;
        let mut x = vec![0u64; a];
        for i in 0..a {
            let mut s = 0u64;
            for j in 0..a {
                s = (s + self.inverse[i][j] * y[self.pivots[j]]) % p;
            }
            x[i] = s;
        }
        let cand = self.from.from_coords(&x).ok()?;
        if self.apply(cand) == b {
            Some(cand)
        } else {
            None
        }
    }
}

/// Reproducible family of fields over one prime.
pub struct Tower {
    key: TowerKey,
    fields: Mutex<BTreeMap<usize, Field>>,
    embeddings: Mutex<HashMap<(usize, usize), Arc<Embedding>>>,
}

fn registry() -> &'static Mutex<HashMap<TowerKey, Arc<Tower>>> {
    static REG: OnceLock<Mutex<HashMap<TowerKey, Arc<Tower>>>> = OnceLock::new();
    REG.get_or_init(|| Mutex::new(HashMap::new()))
}

impl Tower {
    /// The seeded tower over `p`.
    pub fn seeded(p: u64, seed: u64) -> Result<Arc<Tower>, FieldError> {
        if !is_prime(p) || p >= 1 << 31 {
            return Err(FieldError::NotPrime(p));
        }
        Ok(Tower::lookup(&TowerKey::Seeded { p, seed }))
    }

    /// A tower whose degree-`modulus.len()-1` member uses the given modulus.
    pub fn pinned(p: u64, seed: u64, modulus: Vec<u64>) -> Result<Arc<Tower>, FieldError> {
        if !is_prime(p) || p >= 1 << 31 {
            return Err(FieldError::NotPrime(p));
        }
        let degree = modulus.len().saturating_sub(1);
        if degree == 0 || modulus[degree] != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(FieldError::BadModulus(degree));
        }
        if degree == 1 {
            return Tower::seeded(p, seed);
        }
        let key = TowerKey::Pinned {
            p,
            seed,
            degree,
            modulus: modulus.clone(),
        };
        let tower = Tower::lookup(&key);
        let prime = tower.field(1)?;
        let poly = UniPoly::from_raw(&prime, modulus.iter().map(|&c| Elem(c)).collect());
        if !poly.is_irreducible() {
            return Err(FieldError::BadModulus(degree));
        }
        Ok(tower)
    }

    fn lookup(key: &TowerKey) -> Arc<Tower> {
        let mut reg = registry().lock().expect("tower registry poisoned");
        reg.entry(key.clone())
            .or_insert_with(|| {
                Arc::new(Tower {
                    key: key.clone(),
                    fields: Mutex::new(BTreeMap::new()),
                    embeddings: Mutex::new(HashMap::new()),
                })
            })
            .clone()
    }

    pub fn key(&self) -> &TowerKey {
        &self.key
    }

    pub fn prime(&self) -> u64 {
        self.key.prime()
    }

    /// The member of degree `k`, constructing it on first use.
    pub fn field(&self, k: usize) -> Result<Field, FieldError> {
        if k == 0 {
            return Err(FieldError::ZeroDegree);
        }
        if let Some(f) = self.fields.lock().expect("poisoned").get(&k) {
            return Ok(f.clone());
        }
        let p = self.prime();
        let modulus = if k == 1 {
            vec![0, 1]
        } else {
            match &self.key {
                TowerKey::Pinned {
                    degree, modulus, ..
                } if *degree == k => modulus.clone(),
                _ => self.search_modulus(k)?,
            }
        };
        checked_order(p, k).ok_or(FieldError::TooLarge { p, k })?;
        let ctx = Arc::new(FieldCtx::build(self.key.clone(), k, modulus)?);
        let mut fields = self.fields.lock().expect("poisoned");
        Ok(fields.entry(k).or_insert(ctx).clone())
    }

    fn search_modulus(&self, k: usize) -> Result<Vec<u64>, FieldError> {
        let p = self.prime();
        checked_order(p, k).ok_or(FieldError::TooLarge { p, k })?;
        let prime = self.field(1)?;
        let mut rng = ChaCha8Rng::seed_from_u64(
            self.key
                .seed()
                .wrapping_mul(0x9E37_79B9_7F4A_7C15)
                .wrapping_add((p << 20) ^ k as u64),
        );
        for _ in 0..SEARCH_RETRY_LIMIT {
            let mut c: Vec<u64> = (0..k).map(|_| rng.gen_range(0..p)).collect();
            if c[0] == 0 {
                continue;
            }
            c.push(1);
            let poly = UniPoly::from_raw(&prime, c.iter().map(|&v| Elem(v)).collect());
            if poly.is_irreducible() {
                return Ok(c);
            }
        }
        Err(FieldError::RetryLimit {
            p,
            k,
            tries: SEARCH_RETRY_LIMIT,
        })
    }

    /// Embedding between members; `from.degree()` must divide `to.degree()`.
    pub fn embedding(&self, from: usize, to: usize) -> Result<Arc<Embedding>, FieldError> {
        if from == 0 || !to.is_multiple_of(from) {
            return Err(FieldError::Incompatible { from, to });
        }
        if let Some(e) = self.embeddings.lock().expect("poisoned").get(&(from, to)) {
            return Ok(e.clone());
        }
        let src = self.field(from)?;
        let dst = self.field(to)?;
        let images = if from == 1 {
            vec![Elem::ONE]
        } else if from == to {
            let mut v = Vec::with_capacity(from);
            let mut cur = Elem::ONE;
            for _ in 0..from {
                v.push(cur);
                cur = dst.mul(cur, dst.generator());
            }
            v
        } else {
            let m = UniPoly::from_raw(&dst, src.modulus.iter().map(|&c| Elem(c)).collect());
            let roots = m.roots();
            let r = *roots.iter().min().ok_or(FieldError::MissingEmbedding)?;
            let mut v = Vec::with_capacity(from);
            let mut cur = Elem::ONE;
            for _ in 0..from {
                v.push(cur);
                cur = dst.mul(cur, r);
            }
            v
        };
        let (pivots, inverse) = invert_basis(&dst, &images, src.p);
        let emb = Arc::new(Embedding {
            from: src,
            to: dst,
            images,
            pivots,
            inverse,
        });
        let mut map = self.embeddings.lock().expect("poisoned");
        Ok(map.entry((from, to)).or_insert(emb).clone())
    }
}

/// Chooses `a` independent coordinate rows of the image basis and inverts
/// that submatrix over `F_p`.
fn invert_basis(dst: &FieldCtx, images: &[Elem], p: u64) -> (Vec<usize>, Vec<Vec<u64>>) {
    let a = images.len();
    let b = dst.k;
    // cols[j] = coordinates of images[j]; matrix M (b × a), M[r][j].
    let cols: Vec<Vec<u64>> = images.iter().map(|&e| dst.coords(e)).collect();
    let inv_mod = |x: u64| -> u64 {
        let mut r = 1u64;
        let mut base = x % p;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        r
    };
    // Greedy row selection by elimination on rows of M.
    let mut pivots = Vec::new();
    let mut basis: Vec<Vec<u64>> = Vec::new();
    let mut lead: Vec<usize> = Vec::new();
    for r in 0..b {
        if pivots.len() == a {
            break;
        }
        let mut row: Vec<u64> = (0..a).map(|j| cols[j][r]).collect();
        for (bi, brow) in basis.iter().enumerate() {
            let l = lead[bi];
            let c = row[l];
            if c != 0 {
                for j in 0..a {
                    row[j] = (row[j] + (p - c) * brow[j]) % p;
                }
            }
        }
        if let Some(l) = row.iter().position(|&c| c != 0) {
            let s = inv_mod(row[l]);
            for v in row.iter_mut() {
                *v = *v * s % p;
            }
            for (bi, brow) in basis.iter_mut().enumerate() {
                let c = brow[l];
                if c != 0 {
                    for j in 0..a {
                        brow[j] = (brow[j] + (p - c) * row[j]) % p;
                    }
                }
                let _ = bi;
            }
            basis.push(row);
            lead.push(l);
            pivots.push(r);
        }
    }
    // Square matrix S[i][j] = M[pivots[i]][j]; invert by Gauss-Jordan.
    let n = pivots.len();
    let mut aug: Vec<Vec<u64>> = (0..n)
        .map(|i| {
            let mut row: Vec<u64> = (0..a).map(|j| cols[j][pivots[i]]).collect();
            row.extend((0..n).map(|j| u64::from(i == j)));
            row
        })
        .collect();
    for c in 0..a.min(n) {
        let Some(piv) = (c..n).find(|&r| aug[r][c] != 0) else {
            continue;
        };
        aug.swap(c, piv);
        let s = inv_mod(aug[c][c]);
        for v in aug[c].iter_mut() {
            *v = *v * s % p;
        }
        for r in 0..n {
            if r != c && aug[r][c] != 0 {
                let f = aug[r][c];
                let src = aug[c].clone();
                for (v, sv) in aug[r].iter_mut().zip(src) {
                    *v = (*v + (p - f) * sv) % p;
                }
            }
        }
    }
    // x = S^{-1} y_pivots, so inverse[i][j] = aug[i][a + j].
    let inverse = (0..a)
        .map(|i| {
            if i < n {
                aug[i][a..].to_vec()
            } else {
                vec![0; n]
            }
        })
        .collect();
    (pivots, inverse)
}

/// `F_p` or `F_{p^k}` from the seeded tower, deterministic for a fixed seed.
pub fn make_field(p: u64, k: usize, seed: u64) -> Result<Field, FieldError> {
    if k == 0 {
        return Err(FieldError::ZeroDegree);
    }
    Tower::seeded(p, seed)?.field(k)
}

/// The embedding between two fields of the same tower.
pub fn embedding(from: &Field, to: &Field) -> Result<Arc<Embedding>, FieldError> {
    if from.key != to.key {
        return Err(FieldError::ForeignTower);
    }
    from.tower().embedding(from.k, to.k)
}

/// The member of `f`'s tower of degree `lcm(f.degree(), m)`.
pub fn extend_to_multiple(f: &Field, m: usize) -> Result<Field, FieldError> {
    f.tower().field(lcm(f.k, m.max(1)))
}

/// The smallest member of the shared tower containing both fields.
pub fn common_field(a: &Field, b: &Field) -> Result<Field, FieldError> {
    if a.key != b.key {
        return Err(FieldError::ForeignTower);
    }
    if b.k.is_multiple_of(a.k) {
        return Ok(b.clone());
    }
    if a.k.is_multiple_of(b.k) {
        return Ok(a.clone());
    }
    a.tower().field(lcm(a.k, b.k))
}

pub fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_basics() {
        let f = make_field(3, 1, 7).unwrap();
        assert_eq!(f.order(), 3);
        assert_eq!(f.modulus(), &[0, 1]);
        assert_eq!(f.add(Elem(2), Elem(2)), Elem(1));
        assert_eq!(f.frobenius(Elem(2), 1), Elem(2));
        assert!(make_field(2, 1, 0).is_ok());
        assert_eq!(make_field(9, 1, 0).unwrap_err(), FieldError::NotPrime(9));
        assert_eq!(make_field(3, 0, 0).unwrap_err(), FieldError::ZeroDegree);
    }

    #[test]
    fn quadratic_extension_is_irreducible_by_exhaustion() {
        let f = make_field(3, 2, 11).unwrap();
        let m = f.modulus().to_vec();
        assert_eq!(m.len(), 3);
        assert_eq!(m[2], 1);
        for x in 0..3u64 {
            assert_ne!((m[0] + m[1] * x + x * x) % 3, 0);
        }
        let a = f.make_root_of_x2_plus_1();
        assert_eq!(f.mul(a, a), f.from_i64(-1));
        assert_eq!(f.frobenius(a, 1), f.neg(a));
        assert!(!f.in_subfield(a, 1).unwrap());
        assert!(f.in_subfield(a, 2).unwrap());
        assert!(f.in_subfield(f.from_i64(2), 1).unwrap());
        assert!(f.in_subfield(a, 3).is_err());
    }

    impl FieldCtx {
        fn make_root_of_x2_plus_1(&self) -> Elem {
            self.elements()
                .find(|&e| self.add(self.mul(e, e), Elem::ONE).is_zero())
                .unwrap()
        }
    }

    #[test]
    fn checked_arith_errors() {
        let f3 = make_field(3, 1, 0).unwrap();
        let f9 = make_field(3, 2, 0).unwrap();
        let a = FqElem::new(&f3, Elem(1));
        let b = FqElem::new(&f9, Elem(1));
        assert!(matches!(
            field_arith(&a, &b, ArithOp::Add),
            Err(FieldError::Mismatch(..))
        ));
        let z = FqElem::new(&f3, Elem(0));
        assert_eq!(
            field_arith(&a, &z, ArithOp::Div).unwrap_err(),
            FieldError::DivisionByZero
        );
    }

    #[test]
    fn tables_agree_with_generic() {
        let f = make_field(5, 3, 1).unwrap();
        for a in f.elements().step_by(7) {
            for b in f.elements().step_by(11) {
                assert_eq!(f.mul(a, b), f.mul_generic(a, b));
                assert_eq!(f.add(a, b), f.add_generic(a, b));
            }
        }
    }

    #[test]
    fn embedding_roundtrip() {
        let f9 = make_field(3, 2, 0).unwrap();
        let f81 = make_field(3, 4, 0).unwrap();
        let e = embedding(&f9, &f81).unwrap();
        let g = e.apply(f9.generator());
        let m = f9.modulus();
        let mut acc = Elem::ZERO;
        for (i, &c) in m.iter().enumerate() {
            acc = f81.add(acc, f81.mul(Elem(c), f81.pow(g, i as u128)));
        }
        assert!(acc.is_zero());
        for a in f9.elements() {
            let b = e.apply(a);
            assert!(f81.in_subfield(b, 2).unwrap());
            assert_eq!(e.restrict(b), Some(a));
        }
        assert!(embedding(&f81, &f9).is_err());
    }

    #[test]
    fn pinned_modulus_and_large_generic_field() {
        let t = Tower::pinned(3, 0, vec![1, 0, 1]).unwrap();
        let f = t.field(2).unwrap();
        let i = f.generator();
        assert_eq!(f.mul(i, i), f.from_i64(2));
        assert!(Tower::pinned(3, 0, vec![2, 0, 1]).is_err());
        let big = make_field(3, 14, 0).unwrap();
        let a = big.from_coords(&[1, 2, 0, 1]).unwrap();
        let ai = big.inv(a).unwrap();
        assert_eq!(big.mul(a, ai), Elem::ONE);
        assert_eq!(big.pow(a, (big.order() - 1) as u128), Elem::ONE);
    }
}
