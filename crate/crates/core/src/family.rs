//! The curves `g1(x)^l + lambda*g2(y)^l + mu = 0` with additive `g1`, `g2`.

use std::fmt;

use thiserror::Error;

use crate::curve::{verify_group, CurveError, GroupCertificate, PlaneCurve, ProjPoint, TriPoly};
use crate::ff::{common_field, gcd, lcm, Elem, Field, FieldError};
use crate::poly::{splitting_degree, BiPoly, PolyError, UniPoly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("invalid family parameters: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<SpecViolation>),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("certificate check failed: {0}")]
    Certificate(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Curve(#[from] CurveError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpecViolation {
    EllTooSmall(usize),
    PDividesEll {
        p: u64,
        ell: usize,
    },
    EllNotDividingQMinusOne {
        ell: usize,
        q: u64,
    },
    EllNotDividingPiMinusOne {
        ell: usize,
        i: usize,
        which: &'static str,
    },
    ZeroLinearCoefficient(&'static str),
    ZeroParameter(&'static str),
    Mismatch(String),
}

impl fmt::Display for SpecViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecViolation::EllTooSmall(l) => write!(f, "ell = {l} must be at least 2"),
            SpecViolation::PDividesEll { p, ell } => write!(f, "p = {p} divides ell = {ell}"),
            SpecViolation::EllNotDividingQMinusOne { ell, q } => {
                write!(f, "ell = {ell} does not divide q - 1 = {}", q - 1)
            }
            SpecViolation::EllNotDividingPiMinusOne { ell, i, which } => {
                write!(
                    f,
                    "ell = {ell} does not divide p^{i} - 1 although {which}_{i} != 0"
                )
            }
            SpecViolation::ZeroLinearCoefficient(w) => write!(f, "{w}_0 must be nonzero"),
            SpecViolation::ZeroParameter(w) => write!(f, "{w} must be nonzero"),
            SpecViolation::Mismatch(m) => write!(f, "{m}"),
        }
    }
}

/// `x^(p^e) + a_(e-1) x^(p^(e-1)) + ... + a_0 x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdditivePoly {
    field: Field,
    e: usize,
    /// `a_0 .. a_(e-1)`.
    coeffs: Vec<Elem>,
}

impl AdditivePoly {
    pub fn new(field: &Field, coeffs: Vec<Elem>) -> AdditivePoly {
        AdditivePoly {
            field: field.clone(),
            e: coeffs.len(),
            coeffs,
        }
    }

    /// `x^q - x` with `q = p^e`.
    pub fn frobenius_minus_identity(field: &Field, e: usize) -> AdditivePoly {
        let mut c = vec![Elem::ZERO; e];
        c[0] = field.from_i64(-1);
        AdditivePoly::new(field, c)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn e(&self) -> usize {
        self.e
    }

    pub fn q(&self) -> u64 {
        self.field.characteristic().pow(self.e as u32)
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    /// Coefficient of `x^(p^i)`, with the leading one for `i = e`.
    pub fn coeff(&self, i: usize) -> Elem {
        if i == self.e {
            Elem::ONE
        } else {
            self.coeffs[i]
        }
    }

    pub fn to_uni(&self) -> UniPoly {
        let f = &self.field;
        let p = f.characteristic() as usize;
        let q = p.pow(self.e as u32);
        let mut dense = vec![Elem::ZERO; q + 1];
        let mut pi = 1usize;
        for i in 0..=self.e {
            dense[pi] = f.add(dense[pi], self.coeff(i));
            pi *= p;
        }
        UniPoly::from_raw(f, dense)
    }

    pub fn eval(&self, x: Elem) -> Elem {
        let f = &self.field;
        let mut acc = Elem::ZERO;
        let mut xp = x;
        for i in 0..=self.e {
            acc = f.add(acc, f.mul(self.coeff(i), xp));
            xp = f.frobenius(xp, 1);
        }
        acc
    }

    pub fn embed(&self, target: &Field) -> Result<AdditivePoly, FieldError> {
        let e = crate::ff::embedding(&self.field, target)?;
        Ok(AdditivePoly::new(
            target,
            self.coeffs.iter().map(|&c| e.apply(c)).collect(),
        ))
    }
}

#[derive(Clone, Debug)]
pub struct FamilySpec {
    pub field: Field,
    pub ell: usize,
    pub g1: AdditivePoly,
    pub g2: AdditivePoly,
    pub lambda: Elem,
    pub mu: Elem,
}

impl FamilySpec {
    pub fn p(&self) -> u64 {
        self.field.characteristic()
    }

    pub fn e(&self) -> usize {
        self.g1.e()
    }

    pub fn q(&self) -> u64 {
        self.g1.q()
    }

    pub fn degree(&self) -> usize {
        self.q() as usize * self.ell
    }

    /// The desk family `(x^q - x)^l + lambda (y^q - y)^l + mu` over `F_p`.
    pub fn standard(
        p: u64,
        e: usize,
        ell: usize,
        lambda: i64,
        mu: i64,
        seed: u64,
    ) -> Result<FamilySpec, FamilyError> {
        let field = crate::ff::make_field(p, 1, seed)?;
        let g = AdditivePoly::frobenius_minus_identity(&field, e);
        Ok(FamilySpec {
            ell,
            g1: g.clone(),
            g2: g,
            lambda: field.from_i64(lambda),
            mu: field.from_i64(mu),
            field,
        })
    }

    /// Affine equation in `(x, y)`, with `x` stored as the `t` variable.
    pub fn affine_equation(&self) -> BiPoly {
        let f = &self.field;
        let g1 = BiPoly::from_t(&self.g1.to_uni());
        let g2 = BiPoly::from_y(&self.g2.to_uni());
        g1.pow(self.ell)
            .add(&g2.pow(self.ell).scale(self.lambda))
            .add(&BiPoly::constant(f, self.mu))
    }

    pub fn embed(&self, target: &Field) -> Result<FamilySpec, FamilyError> {
        let e = crate::ff::embedding(&self.field, target)?;
        Ok(FamilySpec {
            field: target.clone(),
            ell: self.ell,
            g1: self.g1.embed(target)?,
            g2: self.g2.embed(target)?,
            lambda: e.apply(self.lambda),
            mu: e.apply(self.mu),
        })
    }
}

/// Every violated assumption; empty means valid.
pub fn validate_spec(s: &FamilySpec) -> Result<(), Vec<SpecViolation>> {
    let mut v = Vec::new();
    let p = s.p();
    let f = &s.field;
    if !s.g1.field().same_field(f) || !s.g2.field().same_field(f) {
        v.push(SpecViolation::Mismatch(
            "g1, g2 must live over the spec field".into(),
        ));
        return Err(v);
    }
    if s.g1.e() != s.g2.e() || s.g1.e() == 0 {
        v.push(SpecViolation::Mismatch(format!(
            "g1 and g2 need the same positive e (got {} and {})",
            s.g1.e(),
            s.g2.e()
        )));
        return Err(v);
    }
    let e = s.e();
    let q = s.q();
    if s.ell < 2 {
        v.push(SpecViolation::EllTooSmall(s.ell));
    }
    if (s.ell as u64).is_multiple_of(p) {
        v.push(SpecViolation::PDividesEll { p, ell: s.ell });
    }
    if s.ell > 0 && !(q - 1).is_multiple_of(s.ell as u64) {
        v.push(SpecViolation::EllNotDividingQMinusOne { ell: s.ell, q });
    }
    for i in 1..e {
        for (which, g) in [("alpha", &s.g1), ("beta", &s.g2)] {
            if !g.coeff(i).is_zero()
                && s.ell > 0
                && !(p.pow(i as u32) - 1).is_multiple_of(s.ell as u64)
            {
                v.push(SpecViolation::EllNotDividingPiMinusOne {
                    ell: s.ell,
                    i,
                    which,
                });
            }
        }
    }
    if s.g1.coeff(0).is_zero() {
        v.push(SpecViolation::ZeroLinearCoefficient("alpha"));
    }
    if s.g2.coeff(0).is_zero() {
        v.push(SpecViolation::ZeroLinearCoefficient("beta"));
    }
    if s.lambda.is_zero() {
        v.push(SpecViolation::ZeroParameter("lambda"));
    }
    if s.mu.is_zero() {
        v.push(SpecViolation::ZeroParameter("mu"));
    }
    if v.is_empty() {
        Ok(())
    } else {
        Err(v)
    }
}

fn checked(s: &FamilySpec) -> Result<(), FamilyError> {
    validate_spec(s).map_err(FamilyError::Invalid)
}

pub fn build_curve(s: &FamilySpec) -> Result<PlaneCurve, FamilyError> {
    checked(s)?;
    Ok(PlaneCurve::new(TriPoly::homogenize(
        &s.affine_equation(),
        s.degree(),
    ))?)
}

#[derive(Clone, Debug)]
pub struct FamilyConstants {
    pub q: u64,
    /// `q0 = p^e0`.
    pub q0: u64,
    pub e0: usize,
    /// Field holding the spec, `F_q`, and `alpha`.
    pub field: Field,
    pub zeta: Elem,
    pub alpha: Elem,
    /// Degree of the smallest field containing `alpha`.
    pub alpha_degree: usize,
    pub alpha_in_fq0: bool,
    pub equality_case: bool,
}

pub fn family_constants(s: &FamilySpec) -> Result<FamilyConstants, FamilyError> {
    checked(s)?;
    family_constants_with_root(s, 0)
}

/// As `family_constants`, taking the `index`-th root `alpha` in ascending
/// order (the classification does not depend on this choice).
pub fn family_constants_with_root(
    s: &FamilySpec,
    index: usize,
) -> Result<FamilyConstants, FamilyError> {
    let p = s.p();
    let e = s.e();
    let mut e0 = e;
    for i in 1..e {
        if !s.g1.coeff(i).is_zero() || !s.g2.coeff(i).is_zero() {
            e0 = gcd(e0, i);
        }
    }
    let base = &s.field;
    let q = s.q();
    // X^(q l) + lambda
    let mut dense = vec![Elem::ZERO; q as usize * s.ell + 1];
    dense[0] = s.lambda;
    dense[q as usize * s.ell] = Elem::ONE;
    let alpha_poly = UniPoly::from_raw(base, dense);
    let k = lcm(
        lcm(base.degree(), e),
        base.degree() * splitting_degree(&alpha_poly),
    );
    let w = base.tower().field(k)?;
    let ap = alpha_poly.embed(&w)?;
    let roots = ap.roots();
    let alpha = *roots
        .get(index % roots.len().max(1))
        .ok_or_else(|| FamilyError::NotApplicable("X^(ql) + lambda has no root".into()))?;
    let zeta = w
        .primitive_root_of_unity(s.ell as u64)
        .ok_or_else(|| FamilyError::NotApplicable("no primitive root of unity".into()))?;
    let alpha_degree = w.min_subfield(alpha);
    let sw = s.embed(&w)?;
    let aq = w.pow(alpha, q as u128);
    let mut equality = true;
    let mut ap_i = alpha;
    for i in 0..e {
        let lhs = w.mul(sw.g1.coeff(i), ap_i);
        let rhs = w.mul(aq, sw.g2.coeff(i));
        if lhs != rhs {
            equality = false;
        }
        ap_i = w.frobenius(ap_i, 1);
    }
    Ok(FamilyConstants {
        q,
        q0: p.pow(e0 as u32),
        e0,
        field: w,
        zeta,
        alpha,
        alpha_degree,
        alpha_in_fq0: e0.is_multiple_of(alpha_degree),
        equality_case: equality,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GenusPrediction {
    Exact(i64),
    AtLeast(i64),
}

impl GenusPrediction {
    pub fn value(&self) -> i64 {
        match self {
            GenusPrediction::Exact(g) | GenusPrediction::AtLeast(g) => *g,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TheoremCase {
    /// Only the universal statements (a)-(c).
    Universal,
    D,
    E {
        q0_equals_q: bool,
    },
}

#[derive(Clone, Debug)]
pub struct Prediction {
    pub singular_points: Vec<ProjPoint>,
    pub genus: GenusPrediction,
    pub case: TheoremCase,
    /// Lower bound on the number of outer Galois points.
    pub delta_prime_at_least: usize,
    pub delta_prime_exact: bool,
    /// The exact outer Galois set when it is predicted.
    pub galois_set: Option<Vec<ProjPoint>>,
    /// Scale `c` with `c^(q-1) = -alpha_0` used to reach `alpha_0 = -1`.
    pub rescaling: Option<Elem>,
}

pub fn predicted_profile(s: &FamilySpec) -> Result<Prediction, FamilyError> {
    let k = family_constants(s)?;
    let w = &k.field;
    let q = k.q as i64;
    let l = s.ell as i64;
    let mut sing = Vec::new();
    let mut z = k.alpha;
    for _ in 0..s.ell {
        sing.push(ProjPoint::new(w, [z, Elem::ONE, Elem::ZERO])?);
        z = w.mul(z, k.zeta);
    }
    sing.sort_by_key(|p| p.sort_key());
    let genus = if k.equality_case {
        GenusPrediction::Exact(q * l * (q * (l - 1) - 2) / 2 + 1)
    } else {
        GenusPrediction::AtLeast(q * l * (q * (l - 1) - 1) / 2 + 1)
    };
    let p = s.p();
    let case_d = s.ell % 2 == 1 && !(s.ell as u64 - 1).is_multiple_of(p) && k.equality_case;
    let lambda_in_fq0 = k.e0 % s.field.min_subfield(s.lambda) == 0
        && s.field
            .degree()
            .is_multiple_of(s.field.min_subfield(s.lambda));
    let case_e = s.ell == 2 && s.g1 == s.g2 && lambda_in_fq0;
    let mut out = Prediction {
        singular_points: sing,
        genus,
        case: TheoremCase::Universal,
        delta_prime_at_least: 2,
        delta_prime_exact: false,
        galois_set: None,
        rescaling: None,
    };
    if case_d {
        out.case = TheoremCase::D;
        out.delta_prime_exact = true;
        let f = &s.field;
        out.galois_set = Some(vec![
            ProjPoint::from_ints(f, [0, 1, 0])?,
            ProjPoint::from_ints(f, [1, 0, 0])?,
        ]);
    } else if case_e {
        let q0_eq = k.q0 == k.q;
        out.case = TheoremCase::E { q0_equals_q: q0_eq };
        let q0 = k.q0 as usize;
        out.delta_prime_at_least = if k.alpha_in_fq0 { q0 - 1 } else { q0 + 1 }.max(2);
        if q0_eq {
            out.delta_prime_exact = true;
            out.rescaling = alpha0_rescaling(s)?;
            out.galois_set = Some(case_e_galois_set(s)?);
        }
    }
    Ok(out)
}

/// `{(gamma : 1 : 0) : gamma in F_q, gamma^2 + lambda != 0} ∪ {(1 : 0 : 0)}`.
fn case_e_galois_set(s: &FamilySpec) -> Result<Vec<ProjPoint>, FamilyError> {
    let fq = common_field(&s.field, &s.field.tower().field(s.e())?)?;
    let sq = s.embed(&fq)?;
    let mut pts = vec![ProjPoint::from_ints(&fq, [1, 0, 0])?];
    for g in fq.elements() {
        if fq.min_subfield(g) > s.e() || !s.e().is_multiple_of(fq.min_subfield(g)) {
            continue;
        }
        if !fq.add(fq.mul(g, g), sq.lambda).is_zero() {
            pts.push(ProjPoint::new(&fq, [g, Elem::ONE, Elem::ZERO])?);
        }
    }
    pts.sort_by_key(|p| p.sort_key());
    Ok(pts)
}

/// For `g1 = g2 = x^q + a0 x` with `a0 != -1`: a scale `c` with
/// `c^(q-1) = -a0`, so that `x -> c x`, `y -> c y` gives `a0 = -1`.
pub fn alpha0_rescaling(s: &FamilySpec) -> Result<Option<Elem>, FamilyError> {
    let a0 = s.g1.coeff(0);
    if a0 == s.field.from_i64(-1) || (1..s.e()).any(|i| !s.g1.coeff(i).is_zero()) {
        return Ok(None);
    }
    let q = s.q() as usize;
    let mut dense = vec![Elem::ZERO; q];
    dense[0] = a0;
    dense[q - 1] = Elem::ONE;
    let poly = UniPoly::from_raw(&s.field, dense);
    Ok(poly.any_root())
}

/// The spec after `x -> c x`, `y -> c y` (then dividing by `c^(q l)`):
/// `g1 = g2 = x^q - x` and `mu' = mu / c^(q l)`.
pub fn rescale_alpha0(s: &FamilySpec, c: Elem) -> Result<FamilySpec, FamilyError> {
    let f = &s.field;
    let q = s.q() as u128;
    let cq = f.pow(c, q);
    let a0 = s.g1.coeff(0);
    if f.mul(f.pow(c, q - 1), f.from_i64(-1)) != a0 {
        return Err(FamilyError::NotApplicable("c^(q-1) != -alpha_0".into()));
    }
    let g = AdditivePoly::frobenius_minus_identity(f, s.e());
    let scale = f.pow(cq, s.ell as u128);
    Ok(FamilySpec {
        field: f.clone(),
        ell: s.ell,
        g1: g.clone(),
        g2: g,
        lambda: s.lambda,
        mu: f.div(s.mu, scale)?,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
}

/// `{sigma_a tau^j}`: translations by roots of `g` composed with
/// `zeta`-scalings of the axis coordinate.
pub fn axis_galois_group(s: &FamilySpec, axis: Axis) -> Result<GroupCertificate, FamilyError> {
    let k = family_constants(s)?;
    let g = match axis {
        Axis::X => &s.g1,
        Axis::Y => &s.g2,
    };
    let gu = g.to_uni();
    let need = k.field.degree() * splitting_degree(&gu.embed(&k.field)?);
    let w = k.field.tower().field(lcm(k.field.degree(), need))?;
    let zeta = crate::ff::embedding(&k.field, &w)?.apply(k.zeta);
    let roots = gu.embed(&w)?.roots();
    let (z, o) = (Elem::ZERO, Elem::ONE);
    let mut mats = Vec::new();
    let mut zj = o;
    for _ in 0..s.ell {
        for &a in &roots {
            mats.push(match axis {
                Axis::X => [[zj, z, a], [z, o, z], [z, z, o]],
                Axis::Y => [[o, z, z], [z, zj, a], [z, z, o]],
            });
        }
        zj = w.mul(zj, zeta);
    }
    mats.sort_by_key(|m| m.map(|r| r.map(|c| c.raw())));
    let center = match axis {
        Axis::X => ProjPoint::from_ints(&w, [1, 0, 0])?,
        Axis::Y => ProjPoint::from_ints(&w, [0, 1, 0])?,
    };
    let cert = GroupCertificate {
        center,
        field: w,
        order: mats.len(),
        matrices: mats,
    };
    verify_group(&cert, &build_curve(s)?).map_err(FamilyError::Certificate)?;
    Ok(cert)
}

/// An affine root `y -> a y + b t + c` of `f̂(t, y)` over `K(t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineRoot {
    pub a: Elem,
    pub b: Elem,
    pub c: Elem,
}

/// `f(t + gamma y, y)` for the projection from `(gamma : 1 : 0)`.
pub fn fhat_at_infinity_point(s: &FamilySpec, gamma: Elem) -> BiPoly {
    let (z, o) = (Elem::ZERO, Elem::ONE);
    let m = [[o, gamma, z], [z, o, z], [z, z, o]];
    TriPoly::homogenize(&s.affine_equation(), s.degree())
        .linear_change(&m)
        .dehomogenize(2)
}

/// The `2q` roots `{y + beta} ∪ {-y - eta t + beta}` (`g(beta) = 0`,
/// `eta = 2 gamma / (gamma^2 + lambda)`), each checked by
/// `f̂(t, r) = a^(2q) f̂(t, y)`.
pub fn split_lemma_roots(s: &FamilySpec, gamma: Elem) -> Result<Vec<AffineRoot>, FamilyError> {
    checked(s)?;
    let f = &s.field;
    if s.ell != 2 || s.g1 != s.g2 {
        return Err(FamilyError::NotApplicable(
            "needs ell = 2 and g1 = g2".into(),
        ));
    }
    let k = family_constants(s)?;
    let in_fq0 =
        |x: Elem| k.e0 % f.min_subfield(x) == 0 && f.degree().is_multiple_of(f.min_subfield(x));
    if !in_fq0(s.lambda) || !in_fq0(gamma) {
        return Err(FamilyError::NotApplicable(
            "lambda and gamma must lie in F_q0".into(),
        ));
    }
    let denom = f.add(f.mul(gamma, gamma), s.lambda);
    if denom.is_zero() {
        return Err(FamilyError::NotApplicable("gamma^2 + lambda = 0".into()));
    }
    let eta = f.div(f.mul(f.from_i64(2), gamma), denom)?;
    let gu = s.g1.to_uni();
    let w = f.tower().field(f.degree() * splitting_degree(&gu))?;
    let emb = crate::ff::embedding(f, &w)?;
    let fhat = fhat_at_infinity_point(s, gamma).embed(&w)?;
    let (eta_w, one) = (emb.apply(eta), Elem::ONE);
    let mut out = Vec::new();
    for beta in gu.embed(&w)?.roots() {
        out.push(AffineRoot {
            a: one,
            b: Elem::ZERO,
            c: beta,
        });
        out.push(AffineRoot {
            a: w.neg(one),
            b: w.neg(eta_w),
            c: beta,
        });
    }
    for r in &out {
        if !is_affine_root(&fhat, r) {
            return Err(FamilyError::Certificate(
                "a splitting root fails substitution".into(),
            ));
        }
    }
    Ok(out)
}

/// `f̂(t, a y + b t + c) = a^n f̂(t, y)`.
pub fn is_affine_root(fhat: &BiPoly, r: &AffineRoot) -> bool {
    let f = fhat.field();
    let lin = UniPoly::from_raw(f, vec![r.c, r.b]);
    let moved = fhat.compose_y_affine(r.a, &lin);
    moved == fhat.scale(f.pow(r.a, fhat.deg_y() as u128))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::make_field;

    #[test]
    fn validation_examples() {
        let s = FamilySpec::standard(3, 1, 2, 2, 1, 0).unwrap();
        assert!(validate_spec(&s).is_ok());
        let f = make_field(3, 1, 0).unwrap();
        let g = AdditivePoly::new(&f, vec![Elem::ONE, Elem::ONE]);
        let bad = FamilySpec {
            field: f.clone(),
            ell: 4,
            g1: g.clone(),
            g2: g,
            lambda: Elem::ONE,
            mu: Elem::ONE,
        };
        let v = validate_spec(&bad).unwrap_err();
        assert!(!v.contains(&SpecViolation::EllNotDividingQMinusOne { ell: 4, q: 9 }));
        assert!(v
            .iter()
            .any(|x| matches!(x, SpecViolation::EllNotDividingPiMinusOne { i: 1, .. })));
        let s3 = FamilySpec::standard(3, 1, 3, 1, 1, 0).unwrap();
        assert!(validate_spec(&s3)
            .unwrap_err()
            .contains(&SpecViolation::PDividesEll { p: 3, ell: 3 }));
    }

    #[test]
    fn additive_and_semilinear() {
        let f = make_field(3, 4, 0).unwrap();
        let g = AdditivePoly::new(&f, vec![f.from_i64(2), Elem::ZERO]);
        let u = f.generator();
        let v = f.add(f.mul(u, u), Elem::ONE);
        assert_eq!(g.eval(f.add(u, v)), f.add(g.eval(u), g.eval(v)));
        assert_eq!(g.to_uni().eval(u), g.eval(u));
    }

    #[test]
    fn constants_of_the_desk_curves() {
        let s2 = FamilySpec::standard(3, 1, 2, 2, 1, 0).unwrap();
        let k = family_constants(&s2).unwrap();
        assert_eq!((k.q, k.q0, k.alpha_degree), (3, 3, 1));
        assert_eq!(k.alpha, Elem::ONE);
        assert!(k.equality_case && k.alpha_in_fq0);
        let s1 = FamilySpec::standard(3, 1, 2, 1, 1, 0).unwrap();
        let k = family_constants(&s1).unwrap();
        assert_eq!(k.alpha_degree, 2);
        assert_eq!(k.field.mul(k.alpha, k.alpha), k.field.from_i64(-1));
        assert!(!k.equality_case && !k.alpha_in_fq0);
        let s7 = FamilySpec::standard(7, 1, 3, -1, 1, 0).unwrap();
        assert_eq!(s7.degree(), 21);
        let pr = predicted_profile(&s7).unwrap();
        assert_eq!(pr.genus, GenusPrediction::Exact(127));
        assert_eq!(pr.case, TheoremCase::D);
        assert_eq!(pr.singular_points.len(), 3);
    }

    #[test]
    fn case_e_prediction() {
        let s2 = FamilySpec::standard(3, 1, 2, 2, 1, 0).unwrap();
        let pr = predicted_profile(&s2).unwrap();
        assert_eq!(pr.genus, GenusPrediction::Exact(4));
        assert_eq!(pr.delta_prime_at_least, 2);
        let set: Vec<String> = pr
            .galois_set
            .unwrap()
            .iter()
            .map(|p| p.to_string())
            .collect();
        assert_eq!(set.len(), 2);
        let s1 = FamilySpec::standard(3, 1, 2, 1, 1, 0).unwrap();
        let pr = predicted_profile(&s1).unwrap();
        assert_eq!(pr.delta_prime_at_least, 4);
        assert_eq!(pr.galois_set.unwrap().len(), 4);
        assert!(matches!(pr.genus, GenusPrediction::AtLeast(7)));
    }

    #[test]
    fn axis_groups_certify() {
        let s = FamilySpec::standard(3, 1, 2, 1, 1, 0).unwrap();
        for axis in [Axis::X, Axis::Y] {
            let g = axis_galois_group(&s, axis).unwrap();
            assert_eq!(g.order, 6);
        }
        let s7 = FamilySpec::standard(7, 1, 3, -1, 1, 0).unwrap();
        assert_eq!(axis_galois_group(&s7, Axis::X).unwrap().order, 21);
    }

    #[test]
    fn split_roots() {
        let s = FamilySpec::standard(3, 1, 2, 1, 1, 0).unwrap();
        let f = &s.field;
        for g in 0..3 {
            let r = split_lemma_roots(&s, f.from_i64(g)).unwrap();
            assert_eq!(r.len(), 6);
        }
        let s2 = FamilySpec::standard(3, 1, 2, 2, 1, 0).unwrap();
        assert!(split_lemma_roots(&s2, Elem::ONE).is_err());
    }

    #[test]
    fn rescaling_reaches_minus_one() {
        let f = make_field(5, 2, 0).unwrap();
        let u = f.generator();
        let g = AdditivePoly::new(&f, vec![f.neg(f.pow(u, 4))]);
        let s = FamilySpec {
            field: f.clone(),
            ell: 2,
            g1: g.clone(),
            g2: g,
            lambda: Elem::ONE,
            mu: Elem::ONE,
        };
        let c = alpha0_rescaling(&s).unwrap().unwrap();
        let t = rescale_alpha0(&s, c).unwrap();
        assert_eq!(t.g1.coeff(0), f.from_i64(-1));
        let a = s.affine_equation();
        let b = t.affine_equation();
        let (x, y) = (f.from_i64(2), f.from_i64(3));
        let scale = f.pow(c, 10);
        assert_eq!(a.eval(f.mul(c, x), f.mul(c, y)), f.mul(scale, b.eval(x, y)));
    }
}
