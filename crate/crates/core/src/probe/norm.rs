//! The decisive test: `f̂` splits into linear factors over its own function
//! field iff every irreducible factor of the shifted norm
//! `N(t, Y) = Res_y(f̂(t, y), f̂(t, Y - s y))` has `Y`-degree `n`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{ProbeError, ProjectionModel};
use crate::ff::{Elem, Field};
use crate::poly::{
    absolutely_irreducible, bi_factor_with, field_with_points, interpolate, random_elem,
    resultant_formal, BiFactorOptions, BiPoly, PolyError, UniPoly,
};

#[derive(Clone, Debug)]
pub struct NormOptions {
    pub seed: u64,
    /// Recombination budget handed to the bivariate factorizer.
    pub budget: usize,
    /// Largest `Y`-degree `n^2` attempted.
    pub max_norm_degree: usize,
    /// How often the constant field is doubled before giving up.
    pub max_doublings: usize,
}

impl Default for NormOptions {
    fn default() -> Self {
        NormOptions {
            seed: 0,
            budget: 12,
            max_norm_degree: 100,
            max_doublings: 3,
        }
    }
}

#[derive(Clone, Debug)]
pub struct NormCertificate {
    pub shift: Elem,
    pub shift_field: Field,
    /// Absolute degree of the constant field of the final factorization.
    pub constants_degree: usize,
    pub norm: BiPoly,
    pub factors: Vec<BiPoly>,
    pub y_degrees: Vec<usize>,
    /// Index of an absolutely irreducible factor of improper degree.
    pub witness: Option<usize>,
}

impl NormCertificate {
    /// The factors multiply back to the norm up to a constant.
    pub fn reconstructs(&self) -> bool {
        let Some(w) = self.factors.first().map(|g| g.field().clone()) else {
            return false;
        };
        let Ok(target) = self.norm.embed(&w) else {
            return false;
        };
        let prod = self
            .factors
            .iter()
            .fold(BiPoly::constant(&w, Elem::ONE), |acc, g| acc.mul(g));
        let (_, a) = target.normalize();
        let (_, b) = prod.normalize();
        a == b
    }
}

#[derive(Clone, Debug)]
pub enum NormOutcome {
    Galois(NormCertificate),
    NotGalois(NormCertificate),
    Undecided(String),
}

/// `N(t, Y)` over the field of `fhat`, or `None` when no specialization
/// shows it squarefree.
fn shifted_norm(fhat: &BiPoly, s: Elem) -> Result<Option<BiPoly>, ProbeError> {
    let k = fhat.field().clone();
    let n = fhat.deg_y();
    let tot = fhat.total_degree();
    let deg_t = (2 * n * fhat.deg_t()).min(tot * tot);
    let deg_y = n * n;
    let w = field_with_points(&k, (deg_t.max(deg_y) + 1) as u64)?;
    let fe = fhat.embed(&w)?;
    let s = crate::ff::embedding(&k, &w)?.apply(s);
    let pts: Vec<Elem> = w.elements().take(deg_t.max(deg_y) + 1).collect();
    let ys = &pts[..=deg_y];
    let rows: Vec<(UniPoly, bool)> = pts[..=deg_t]
        .par_iter()
        .map(|&t0| {
            let a = fe.eval_t(t0);
            let vals: Vec<Elem> = ys
                .iter()
                .map(|&y0| {
                    let lin = UniPoly::from_raw(&w, vec![y0, w.neg(s)]);
                    resultant_formal(&a, &a.compose(&lin), n, n)
                })
                .collect();
            let r = interpolate(&w, ys, &vals);
            let good = r.degree() == Some(deg_y) && r.is_separable().unwrap_or(false);
            (r, good)
        })
        .collect();
    if !rows.iter().any(|(_, g)| *g) {
        return Ok(None);
    }
    let ts = &pts[..=deg_t];
    let mut terms = Vec::new();
    for j in 0..=deg_y {
        let vals: Vec<Elem> = rows.iter().map(|(r, _)| r.coeff(j)).collect();
        let c = interpolate(&w, ts, &vals);
        for (i, &v) in c.coeffs().iter().enumerate() {
            terms.push((i as u32, j as u32, v));
        }
    }
    let big = BiPoly::from_terms(&w, terms);
    Ok(Some(big.restrict(&k).ok_or(PolyError::FieldMismatch)?))
}

pub fn norm_split_test(
    model: &ProjectionModel,
    opts: &NormOptions,
) -> Result<NormOutcome, ProbeError> {
    let n = model.degree();
    if n * n > opts.max_norm_degree {
        return Ok(NormOutcome::Undecided(format!(
            "norm degree {} exceeds the limit {}",
            n * n,
            opts.max_norm_degree
        )));
    }
    let fhat = model.fhat();
    if !absolutely_irreducible(fhat)? {
        return Err(ProbeError::Degenerate(
            "f̂ is not absolutely irreducible".into(),
        ));
    }
    let k = model.field();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let plan = [1usize, 1, 2, 2, 2, 4, 4, 4];
    for &m in &plan {
        if m == 1 && (k.order() as usize) < 2 * n {
            continue;
        }
        let ks = k.tower().field(k.degree() * m)?;
        let minus_one = ks.from_i64(-1);
        let s = loop {
            let s = random_elem(&ks, &mut rng);
            if !s.is_zero() && s != minus_one {
                break s;
            }
        };
        let f = fhat.embed(&ks)?;
        let Some(norm) = shifted_norm(&f, s)? else {
            continue;
        };
        return factor_norm(norm, &ks, s, n, opts);
    }
    Ok(NormOutcome::Undecided(
        "no shift gave a squarefree norm".into(),
    ))
}

fn factor_norm(
    norm: BiPoly,
    ks: &Field,
    s: Elem,
    n: usize,
    opts: &NormOptions,
) -> Result<NormOutcome, ProbeError> {
    let mut field = ks.clone();
    for round in 0..=opts.max_doublings {
        let ne = norm.embed(&field)?;
        let bo = BiFactorOptions {
            seed: opts.seed.wrapping_add(round as u64),
            budget: opts.budget,
            degree_multiple: n,
        };
        let fl = match bi_factor_with(&ne, &bo) {
            Ok(fl) => fl,
            Err(PolyError::BudgetExceeded { needed, budget }) => {
                return Ok(NormOutcome::Undecided(format!(
                    "recombination needs {needed} local factors, budget {budget}"
                )))
            }
            Err(e) => return Err(e.into()),
        };
        let factors: Vec<BiPoly> = fl
            .factors
            .iter()
            .flat_map(|(g, m)| std::iter::repeat_n(g.clone(), *m as usize))
            .collect();
        let y_degrees: Vec<usize> = factors
            .iter()
            .map(|g| g.deg_y())
            .filter(|&d| d > 0)
            .collect();
        let mut cert = NormCertificate {
            shift: s,
            shift_field: ks.clone(),
            constants_degree: field.degree(),
            norm: norm.clone(),
            factors,
            y_degrees,
            witness: None,
        };
        if cert.y_degrees.iter().all(|&d| d == n) {
            return Ok(NormOutcome::Galois(cert));
        }
        for (i, g) in cert.factors.iter().enumerate() {
            if g.deg_y() > n && absolutely_irreducible(g)? {
                cert.witness = Some(i);
                return Ok(NormOutcome::NotGalois(cert));
            }
        }
        field = field.tower().field(field.degree() * 2)?;
    }
    Ok(NormOutcome::Undecided(format!(
        "factor pattern not settled after {} doublings of the constant field",
        opts.max_doublings
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::ProjPoint;
    use crate::family::{build_curve, FamilySpec};
    use crate::probe::make_projection;

    #[test]
    fn norm_rejects_an_origin_projection() {
        let c = build_curve(&FamilySpec::standard(3, 1, 2, 2, 1, 0).unwrap()).unwrap();
        let f = c.field().clone();
        let m = make_projection(&c, &ProjPoint::from_ints(&f, [0, 0, 1]).unwrap()).unwrap();
        match norm_split_test(&m, &NormOptions::default()).unwrap() {
            NormOutcome::NotGalois(cert) => assert!(cert.reconstructs()),
            o => panic!("{o:?}"),
        }
    }

    #[test]
    fn norm_degree_limit() {
        let c = build_curve(&FamilySpec::standard(3, 1, 2, 2, 1, 0).unwrap()).unwrap();
        let f = c.field().clone();
        let m = make_projection(&c, &ProjPoint::from_ints(&f, [1, 0, 0]).unwrap()).unwrap();
        let opts = NormOptions {
            max_norm_degree: 20,
            ..NormOptions::default()
        };
        assert!(matches!(
            norm_split_test(&m, &opts).unwrap(),
            NormOutcome::Undecided(_)
        ));
    }
}
