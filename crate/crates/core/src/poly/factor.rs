//! Univariate factorization over finite fields: squarefree decomposition,
//! distinct-degree and Cantor–Zassenhaus equal-degree splitting.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::uni::UniPoly;
use super::PolyError;
use crate::ff::{embedding, prime_factors, Elem, Field};

/// `unit * prod(factor^mult)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorList<P> {
    pub unit: Elem,
    pub factors: Vec<(P, u32)>,
}

impl<P> FactorList<P> {
    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Number of irreducible factors counted with multiplicity.
    pub fn count_with_multiplicity(&self) -> usize {
        self.factors.iter().map(|(_, m)| *m as usize).sum()
    }
}

impl FactorList<UniPoly> {
    pub fn product(&self, field: &Field) -> UniPoly {
        self.factors
            .iter()
            .fold(UniPoly::constant(field, self.unit), |acc, (f, m)| {
                acc.mul(&f.pow(*m as usize))
            })
    }

    /// Sorted degrees, one entry per factor counted with multiplicity.
    pub fn degree_pattern(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self
            .factors
            .iter()
            .flat_map(|(f, m)| std::iter::repeat_n(f.deg(), *m as usize))
            .collect();
        v.sort_unstable();
        v
    }
}

fn pth_root(f: &UniPoly) -> UniPoly {
    let field = f.field();
    let p = field.characteristic() as usize;
    let k = field.degree();
    let v = f
        .coeffs()
        .iter()
        .step_by(p)
        .map(|&c| field.frobenius(c, k - 1))
        .collect();
    UniPoly::from_raw(field, v)
}

/// Squarefree decomposition of a nonzero polynomial: pairwise coprime monic
/// parts with their multiplicities (constant parts omitted).
pub fn squarefree_decomposition(f: &UniPoly) -> Vec<(UniPoly, u32)> {
    let mut out = Vec::new();
    if f.is_constant() {
        return out;
    }
    let f = f.monic();
    let d = f.derivative();
    if d.is_zero() {
        for (g, m) in squarefree_decomposition(&pth_root(&f)) {
            out.push((g, m * f.field().characteristic() as u32));
        }
        return out;
    }
    let mut c = f.gcd(&d);
    let mut w = f.div_exact(&c).expect("gcd divides");
    let mut i = 1u32;
    while !w.is_constant() {
        let y = w.gcd(&c);
        let fac = w.div_exact(&y).expect("gcd divides");
        if !fac.is_constant() {
            out.push((fac, i));
        }
        c = c.div_exact(&y).expect("gcd divides");
        w = y;
        i += 1;
    }
    if !c.is_constant() {
        let p = f.field().characteristic() as u32;
        for (g, m) in squarefree_decomposition(&pth_root(&c)) {
            out.push((g, m * p));
        }
    }
    out
}

/// Distinct-degree factorization of a monic squarefree polynomial.
pub fn distinct_degree(f: &UniPoly) -> Vec<(UniPoly, usize)> {
    let field = f.field().clone();
    let x = UniPoly::x(&field);
    let mut out = Vec::new();
    let mut rest = f.monic();
    let mut h = x.rem(&rest);
    let mut d = 0;
    while rest.deg() >= 2 * (d + 1) {
        d += 1;
        h = h.frobenius_mod(&rest);
        let g = h.sub(&x).gcd(&rest);
        if !g.is_constant() {
            rest = rest.div_exact(&g).expect("gcd divides");
            h = h.rem(&rest);
            out.push((g, d));
        }
    }
    if !rest.is_constant() {
        let n = rest.deg();
        out.push((rest, n));
    }
    out
}

fn random_poly(field: &Field, deg_bound: usize, rng: &mut ChaCha8Rng) -> UniPoly {
    let q = field.order();
    let v = (0..deg_bound).map(|_| Elem(rng.gen_range(0..q))).collect();
    UniPoly::from_raw(field, v)
}

/// Splits a monic squarefree product of degree-`d` irreducibles.
pub fn equal_degree(f: &UniPoly, d: usize, rng: &mut ChaCha8Rng) -> Vec<UniPoly> {
    let n = f.deg();
    if n == d {
        return vec![f.monic()];
    }
    let field = f.field().clone();
    let p = field.characteristic();
    loop {
        let a = random_poly(&field, n, rng);
        if a.is_constant() {
            continue;
        }
        let b = if p == 2 {
            // Absolute trace a + a^2 + ... + a^(2^(k d - 1)).
            let mut t = a.rem(f);
            let mut acc = t.clone();
            for _ in 1..field.degree() * d {
                t = t.mul_mod(&t, f);
                acc = acc.add(&t);
            }
            acc
        } else {
            // a^((q^d - 1)/2) = (a^(1 + q + ... + q^(d-1)))^((q-1)/2).
            let mut t = a.rem(f);
            let mut acc = t.clone();
            for _ in 1..d {
                t = t.frobenius_mod(f);
                acc = acc.mul_mod(&t, f);
            }
            acc.pow_mod(((field.order() - 1) / 2) as u128, f)
                .sub(&UniPoly::one(&field))
        };
        let g = b.gcd(f);
        if !g.is_constant() && g.deg() < n {
            let h = f.div_exact(&g).expect("gcd divides");
            let mut out = equal_degree(&g, d, rng);
            out.extend(equal_degree(&h, d, rng));
            return out;
        }
    }
}

fn sort_factors(v: &mut [(UniPoly, u32)]) {
    v.sort_by(|a, b| {
        a.0.deg()
            .cmp(&b.0.deg())
            .then_with(|| a.0.coeffs().cmp(b.0.coeffs()))
            .then(a.1.cmp(&b.1))
    });
}

/// Complete factorization into monic irreducibles, deterministic in `seed`.
pub fn uni_factor(f: &UniPoly, seed: u64) -> Result<FactorList<UniPoly>, PolyError> {
    if f.is_constant() {
        return Err(PolyError::Constant);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(factor_with(f, &mut rng))
}

pub(crate) fn factor_with(f: &UniPoly, rng: &mut ChaCha8Rng) -> FactorList<UniPoly> {
    let mut factors = Vec::new();
    for (part, m) in squarefree_decomposition(f) {
        for (g, d) in distinct_degree(&part) {
            for h in equal_degree(&g, d, rng) {
                factors.push((h, m));
            }
        }
    }
    sort_factors(&mut factors);
    FactorList {
        unit: f.lc(),
        factors,
    }
}

impl UniPoly {
    /// Rabin's irreducibility test.
    pub fn is_irreducible(&self) -> bool {
        let Some(n) = self.degree() else {
            return false;
        };
        if n == 0 {
            return false;
        }
        if n == 1 {
            return true;
        }
        let f = self.monic();
        let x = UniPoly::x(self.field());
        let mut powers = Vec::with_capacity(n + 1);
        let mut h = x.clone();
        powers.push(h.clone());
        for _ in 0..n {
            h = h.frobenius_mod(&f);
            powers.push(h.clone());
        }
        if powers[n] != x.rem(&f) {
            return false;
        }
        prime_factors(n as u64).into_iter().all(|r| {
            let m = n / r as usize;
            powers[m].sub(&x).gcd(&f).is_constant()
        })
    }

    /// Squarefree iff `gcd(f, f') = 1`.
    pub fn is_separable(&self) -> Result<bool, PolyError> {
        if self.is_zero() {
            return Err(PolyError::Zero);
        }
        Ok(self.gcd(&self.derivative()).is_constant())
    }

    /// Distinct roots in the coefficient field, ascending.
    pub fn roots(&self) -> Vec<Elem> {
        if self.is_constant() {
            return Vec::new();
        }
        let x = UniPoly::x(self.field());
        let f = self.monic();
        let g = x.frobenius_mod(&f).sub(&x).gcd(&f);
        if g.is_constant() {
            return Vec::new();
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let mut out: Vec<Elem> = equal_degree(&g, 1, &mut rng)
            .into_iter()
            .map(|l| self.field().neg(l.coeff(0)))
            .collect();
        out.sort();
        out
    }

    /// One root in the coefficient field, if any (the smallest).
    pub fn any_root(&self) -> Option<Elem> {
        self.roots().into_iter().next()
    }

    /// `(root, multiplicity)` pairs in the coefficient field.
    pub fn roots_with_multiplicity(&self) -> Vec<(Elem, usize)> {
        let mut out = Vec::new();
        for (part, m) in squarefree_decomposition(self) {
            for r in part.roots() {
                out.push((r, m as usize));
            }
        }
        out.sort();
        out
    }

    /// Re-expresses the polynomial over a larger field of the same tower.
    pub fn embed(&self, target: &Field) -> Result<UniPoly, PolyError> {
        if self.field().same_field(target) {
            return Ok(self.clone());
        }
        let e = embedding(self.field(), target)?;
        Ok(self.map_coeffs(target, |c| e.apply(c)))
    }

    /// Re-expresses the polynomial over a subfield if every coefficient lies in it.
    pub fn restrict(&self, target: &Field) -> Option<UniPoly> {
        if self.field().same_field(target) {
            return Some(self.clone());
        }
        let e = embedding(target, self.field()).ok()?;
        let v: Option<Vec<Elem>> = self.coeffs().iter().map(|&c| e.restrict(c)).collect();
        Some(UniPoly::from_raw(target, v?))
    }
}

/// All roots of `f` in `target` with multiplicities.
pub fn roots_in_field(f: &UniPoly, target: &Field) -> Result<Vec<(Elem, usize)>, PolyError> {
    if f.is_zero() {
        return Err(PolyError::Zero);
    }
    Ok(f.embed(target)?.roots_with_multiplicity())
}

/// Smallest extension degree (over the coefficient field) that splits `f`.
pub fn splitting_degree(f: &UniPoly) -> usize {
    let mut d = 1;
    for (part, _) in squarefree_decomposition(f) {
        for (_, k) in distinct_degree(&part) {
            d = crate::ff::lcm(d, k);
        }
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::make_field;

    #[test]
    fn factor_examples() {
        let f3 = make_field(3, 1, 0).unwrap();
        let c = UniPoly::from_ints(&f3, &[0, -1, 0, 1]);
        let fl = uni_factor(&c, 1).unwrap();
        assert_eq!(fl.degree_pattern(), vec![1, 1, 1]);
        assert_eq!(fl.product(&f3), c);
        let i2 = UniPoly::from_ints(&f3, &[1, 0, 1]);
        assert_eq!(uni_factor(&i2, 1).unwrap().degree_pattern(), vec![2]);
        let f9 = make_field(3, 2, 0).unwrap();
        let i2_9 = i2.embed(&f9).unwrap();
        let fl9 = uni_factor(&i2_9, 1).unwrap();
        assert_eq!(fl9.degree_pattern(), vec![1, 1]);
        assert!(uni_factor(&UniPoly::one(&f3), 0).is_err());
    }

    #[test]
    fn squarefree_in_characteristic_p() {
        let f = make_field(3, 1, 0).unwrap();
        // (x+1)^3 (x^2+1)^2 x
        let a = UniPoly::from_ints(&f, &[1, 1]).pow(3);
        let b = UniPoly::from_ints(&f, &[1, 0, 1]).pow(2);
        let p = a.mul(&b).mul(&UniPoly::x(&f));
        let fl = uni_factor(&p, 3).unwrap();
        assert_eq!(fl.product(&f), p);
        let mults: Vec<u32> = fl.factors.iter().map(|x| x.1).collect();
        assert_eq!(mults, vec![1, 3, 2]);
    }

    #[test]
    fn separability_examples() {
        let f = make_field(3, 1, 0).unwrap();
        // h = -(y^3 - y)^2 - 1
        let g = UniPoly::from_ints(&f, &[0, -1, 0, 1]);
        let h = g.mul(&g).neg().sub(&UniPoly::one(&f));
        assert!(h.is_separable().unwrap());
        assert!(!UniPoly::monomial(&f, Elem::ONE, 3).is_separable().unwrap());
        assert!(UniPoly::from_ints(&f, &[-2, 0, 1]).is_separable().unwrap());
        assert!(UniPoly::zero(&f).is_separable().is_err());
    }

    #[test]
    fn roots_of_unity_examples() {
        let f3 = make_field(3, 1, 0).unwrap();
        let f9 = make_field(3, 2, 0).unwrap();
        let r = roots_in_field(&UniPoly::from_ints(&f3, &[1, 0, 1]), &f9).unwrap();
        assert_eq!(r.len(), 2);
        // alpha^6 + 2 over F_3
        let a = UniPoly::from_ints(&f3, &[2, 0, 0, 0, 0, 0, 1]);
        let r3 = roots_in_field(&a, &f3).unwrap();
        assert_eq!(r3, vec![(Elem(1), 3), (Elem(2), 3)]);
        assert!(roots_in_field(&UniPoly::zero(&f3), &f3).is_err());
    }

    #[test]
    fn rabin_agrees_with_root_search_for_quadratics() {
        let f = make_field(5, 1, 0).unwrap();
        for b in 0..5 {
            for c in 0..5 {
                let p = UniPoly::from_ints(&f, &[c, b, 1]);
                let has_root = (0..5).any(|x| (x * x + b * x + c) % 5 == 0);
                assert_eq!(p.is_irreducible(), !has_root);
            }
        }
    }

    #[test]
    fn p2_equal_degree_splitting() {
        let f = make_field(2, 3, 0).unwrap();
        let x = UniPoly::x(&f);
        let p = x.pow(8).sub(&x);
        let fl = uni_factor(&p, 5).unwrap();
        assert_eq!(fl.degree_pattern(), vec![1; 8]);
    }
}
