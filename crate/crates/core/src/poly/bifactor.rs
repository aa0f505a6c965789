//! Bivariate factorization: specialization, Hensel lifting and exhaustive
//! recombination with a trace filter.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::bivar::BiPoly;
use super::factor::{distinct_degree, factor_with, FactorList};
use super::hensel::{hensel_lift, monic_series, Series};
use super::uni::UniPoly;
use super::PolyError;
use crate::ff::{Elem, Field};

#[derive(Clone, Debug)]
pub struct BiFactorOptions {
    pub seed: u64,
    /// Largest subset size tried during recombination.
    pub budget: usize,
    /// Every factor is known to have `y`-degree divisible by this (used only
    /// when the input is primitive and squarefree).
    pub degree_multiple: usize,
}

impl Default for BiFactorOptions {
    fn default() -> Self {
        BiFactorOptions {
            seed: 0,
            budget: 12,
            degree_multiple: 1,
        }
    }
}

pub fn bi_factor(f: &BiPoly, seed: u64) -> Result<FactorList<BiPoly>, PolyError> {
    bi_factor_with(
        f,
        &BiFactorOptions {
            seed,
            ..Default::default()
        },
    )
}

/// Complete factorization over the coefficient field. Factors are
/// normalized so that their leading `y`-coefficient is monic in `t`.
pub fn bi_factor_with(f: &BiPoly, opts: &BiFactorOptions) -> Result<FactorList<BiPoly>, PolyError> {
    if f.is_constant() {
        return Err(PolyError::Constant);
    }
    let mut ctx = Ctx {
        rng: ChaCha8Rng::seed_from_u64(opts.seed),
        budget: opts.budget,
    };
    let mut raw = Vec::new();
    factor_rec(f, 1, opts.degree_multiple.max(1), &mut ctx, &mut raw)?;
    let mut merged: Vec<(BiPoly, u32)> = Vec::new();
    for (g, m) in raw {
        match merged.iter_mut().find(|(h, _)| *h == g) {
            Some(e) => e.1 += m,
            None => merged.push((g, m)),
        }
    }
    merged.sort_by_key(|(g, m)| (g.deg_y(), g.deg_t(), sort_key(g), *m));
    Ok(FactorList {
        unit: f.lc_y().lc(),
        factors: merged,
    })
}

impl FactorList<BiPoly> {
    pub fn product(&self, field: &Field) -> BiPoly {
        self.factors
            .iter()
            .fold(BiPoly::constant(field, self.unit), |acc, (g, m)| {
                acc.mul(&g.pow(*m as usize))
            })
    }

    /// `y`-degrees with multiplicity, ascending.
    pub fn y_degrees(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self
            .factors
            .iter()
            .flat_map(|(g, m)| std::iter::repeat_n(g.deg_y(), *m as usize))
            .filter(|&d| d > 0)
            .collect();
        v.sort();
        v
    }
}

fn sort_key(g: &BiPoly) -> Vec<(u32, u32, u64)> {
    g.terms().map(|(i, j, c)| (i, j, c.raw())).collect()
}

struct Ctx {
    rng: ChaCha8Rng,
    budget: usize,
}

fn normalized(g: &BiPoly) -> BiPoly {
    g.normalize().1
}

fn factor_rec(
    f: &BiPoly,
    mult: u32,
    dm: usize,
    ctx: &mut Ctx,
    out: &mut Vec<(BiPoly, u32)>,
) -> Result<(), PolyError> {
    let fld = f.field().clone();
    let content = f.content_t();
    let mut f = f.clone();
    let mut dm = dm;
    if !content.is_constant() {
        for (u, m) in factor_with(&content, &mut ctx.rng).factors {
            out.push((BiPoly::from_t(&u), m * mult));
        }
        f = f.div_t_exact(&content).expect("content divides");
        dm = 1;
    }
    if f.deg_y() == 0 {
        return Ok(());
    }
    if f.derivative_y().is_zero() {
        if f.derivative_t().is_zero() {
            let p = fld.characteristic() as u32;
            return factor_rec(&bi_pth_root(&f), mult * p, 1, ctx, out);
        }
        let mut tmp = Vec::new();
        factor_rec(&f.swap(), 1, 1, ctx, &mut tmp)?;
        for (g, m) in tmp {
            out.push((normalized(&g.swap()), m * mult));
        }
        return Ok(());
    }
    if let Some(spec) = choose_specialization(&f, false, ctx) {
        for g in factor_at_spec(&f, &spec, dm, ctx)? {
            out.push((g, mult));
        }
        return Ok(());
    }
    // not squarefree: separate the separable squarefree part
    let g = gcd_y(&f, &f.derivative_y());
    let s = f.div_exact(&g).expect("gcd divides");
    let spec = choose_specialization(&s, true, ctx).ok_or(PolyError::NoSpecialization(0))?;
    let mut rest = f.clone();
    for u in factor_at_spec(&s, &spec, 1, ctx)? {
        let mut k = 0;
        while let Some(q) = rest.div_exact(&u) {
            rest = q;
            k += 1;
        }
        out.push((u, k * mult));
    }
    if !rest.is_constant() {
        factor_rec(&rest, mult, 1, ctx, out)?;
    }
    Ok(())
}

fn bi_pth_root(f: &BiPoly) -> BiPoly {
    let fld = f.field();
    let p = fld.characteristic() as u32;
    let k = fld.degree();
    BiPoly::from_terms(
        fld,
        f.terms()
            .map(|(i, j, c)| (i / p, j / p, fld.frobenius(c, k - 1))),
    )
}

/// Monic-content gcd in `F[t][y]` of two polynomials, via the primitive PRS.
pub(crate) fn gcd_y(a: &BiPoly, b: &BiPoly) -> BiPoly {
    let fld = a.field();
    if b.is_zero() {
        return normalized(&a.primitive_part());
    }
    let (mut a, mut b) = (a.primitive_part(), b.primitive_part());
    if a.deg_y() < b.deg_y() {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        if b.deg_y() == 0 {
            return BiPoly::constant(fld, Elem::ONE);
        }
        let r = a.prem_y(&b);
        if r.is_zero() {
            return normalized(&b);
        }
        a = b;
        b = r.primitive_part();
    }
}

struct Spec {
    field: Field,
    t0: Elem,
}

fn is_good(f: &BiPoly, t0: Elem) -> Option<UniPoly> {
    let u = f.eval_t(t0);
    if u.degree() != Some(f.deg_y()) {
        return None;
    }
    u.gcd(&u.derivative()).is_constant().then_some(u)
}

fn local_count(u: &UniPoly) -> usize {
    distinct_degree(u).iter().map(|(g, d)| g.deg() / d).sum()
}

/// A point `t0` with `lc_y(f)(t0) != 0` and `f(t0, y)` squarefree, chosen to
/// keep the number of local factors small. Searches the coefficient field
/// first, then extensions. Without `certain`, gives up once a field far
/// larger than the discriminant degree has yielded nothing.
fn choose_specialization(f: &BiPoly, certain: bool, ctx: &mut Ctx) -> Option<Spec> {
    let base = f.field().clone();
    let mut best: Option<(usize, Elem)> = None;
    let mut good = 0;
    for t0 in base.elements().take(256) {
        if let Some(u) = is_good(f, t0) {
            let c = local_count(&u);
            if best.is_none_or(|(b, _)| c < b) {
                best = Some((c, t0));
            }
            good += 1;
            if good >= 16 || c == 1 {
                break;
            }
        }
    }
    if let Some((_, t0)) = best {
        return Some(Spec { field: base, t0 });
    }
    let disc_deg = (2 * f.deg_y()) as u128 * (f.deg_t() as u128 + 1) + 1;
    for k in 2..=64usize {
        let Ok(ext) = base.tower().field(base.degree() * k) else {
            return None;
        };
        let fe = f.embed(&ext).ok()?;
        let mut best: Option<(usize, Elem)> = None;
        for _ in 0..32 {
            let t0 = random_elem(&ext, &mut ctx.rng);
            if let Some(u) = is_good(&fe, t0) {
                let c = local_count(&u);
                if best.is_none_or(|(b, _)| c < b) {
                    best = Some((c, t0));
                }
            }
        }
        if let Some((_, t0)) = best {
            return Some(Spec { field: ext, t0 });
        }
        let size = (base.order() as u128).saturating_pow(k as u32);
        if !certain && size > 4 * disc_deg {
            return None;
        }
    }
    None
}

pub(crate) fn random_elem(f: &Field, rng: &mut ChaCha8Rng) -> Elem {
    let p = f.characteristic();
    let coords: Vec<u64> = (0..f.degree()).map(|_| rng.gen_range(0..p)).collect();
    f.from_coords(&coords).expect("valid coordinates")
}

fn factor_at_spec(
    f: &BiPoly,
    spec: &Spec,
    dm: usize,
    ctx: &mut Ctx,
) -> Result<Vec<BiPoly>, PolyError> {
    let base = f.field();
    if spec.field.same_field(base) {
        return factor_at(f, spec.t0, dm, ctx);
    }
    let fe = f.embed(&spec.field)?;
    let over_ext = factor_at(&fe, spec.t0, dm, ctx)?;
    // combine Frobenius orbits relative to the base field
    let step = base.degree();
    let mut used = vec![false; over_ext.len()];
    let mut out = Vec::new();
    for i in 0..over_ext.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let mut prod = over_ext[i].clone();
        let mut cur = over_ext[i].frobenius_coeffs(step);
        while cur != over_ext[i] {
            let j = over_ext
                .iter()
                .position(|g| *g == cur)
                .expect("factorization is Frobenius-stable");
            used[j] = true;
            prod = prod.mul(&cur);
            cur = cur.frobenius_coeffs(step);
        }
        out.push(prod.restrict(base).ok_or(PolyError::FieldMismatch)?);
    }
    Ok(out)
}

/// Factors a primitive polynomial that is squarefree at the good point `t0`.
fn factor_at(f: &BiPoly, t0: Elem, dm: usize, ctx: &mut Ctx) -> Result<Vec<BiPoly>, PolyError> {
    let fld = f.field().clone();
    if f.deg_y() == 1 {
        return Ok(vec![normalized(f)]);
    }
    let sh = f.shift_t(t0);
    let u0 = sh.eval_t(Elem::ZERO);
    let locals: Vec<UniPoly> = factor_with(&u0, &mut ctx.rng)
        .factors
        .into_iter()
        .map(|(g, _)| g)
        .collect();
    if locals.len() == 1 {
        return Ok(vec![normalized(f)]);
    }
    let d0 = sh.deg_t() + sh.lc_y().deg();
    let bits = (fld.order() as f64).log2();
    let slack = (24.0 / bits).ceil() as usize + 1;
    let prec = d0 + 1 + slack;
    let lifted = hensel_lift(&monic_series(&sh, prec), &locals, prec);
    let found = recombine(&sh, &lifted, prec, dm, ctx.budget)?;
    let neg = fld.neg(t0);
    Ok(found.iter().map(|g| normalized(&g.shift_t(neg))).collect())
}

fn series_to_bipoly(fld: &Field, s: &Series, max_t: usize) -> BiPoly {
    BiPoly::from_terms(
        fld,
        s.iter().take(max_t + 1).enumerate().flat_map(|(i, row)| {
            row.coeffs()
                .iter()
                .enumerate()
                .map(move |(j, &c)| (i as u32, j as u32, c))
                .collect::<Vec<_>>()
        }),
    )
}

fn scale_series(fld: &Field, c: &UniPoly, s: &Series, prec: usize) -> Series {
    super::hensel::scalar_series_mul(fld, c.coeffs(), s, prec)
}

fn trunc_product(fld: &Field, lifted: &[Series], idx: &[usize], prec: usize) -> Series {
    let mut acc: Series = vec![UniPoly::zero(fld); prec];
    acc[0] = UniPoly::one(fld);
    for &i in idx {
        acc = super::hensel::series_mul(&acc, &lifted[i], prec);
    }
    acc
}

/// Zassenhaus recombination over `F[t]`.
fn recombine(
    f: &BiPoly,
    lifted: &[Series],
    prec: usize,
    dm: usize,
    budget: usize,
) -> Result<Vec<BiPoly>, PolyError> {
    let fld = f.field().clone();
    let degs: Vec<usize> = lifted.iter().map(|s| s[0].deg()).collect();
    // trace series: coefficient of y^(d-1) of each lifted factor
    let traces: Vec<Vec<Elem>> = lifted
        .iter()
        .zip(&degs)
        .map(|(s, &d)| s.iter().map(|row| row.coeff(d - 1)).collect())
        .collect();
    let mut active: Vec<usize> = (0..lifted.len()).collect();
    let mut cur = f.clone();
    let mut found = Vec::new();
    let mut k = 1;
    while 2 * k <= active.len() {
        let lc = cur.lc_y();
        let bound = cur.deg_t() + lc.deg();
        // window of lc * trace above the degree bound must vanish
        let windows: Vec<Vec<Elem>> = active
            .iter()
            .map(|&i| {
                let prod = UniPoly::from_raw(&fld, traces[i].clone()).mul_trunc(&lc, prec);
                (bound + 1..prec).map(|e| prod.coeff(e)).collect()
            })
            .collect();
        let adeg: Vec<usize> = active.iter().map(|&i| degs[i]).collect();
        let total: usize = adeg.iter().sum();
        let mut hit = None;
        if k > budget {
            return Err(PolyError::BudgetExceeded { needed: k, budget });
        }
        let mut check = |sel: &[usize]| -> bool {
            let idx: Vec<usize> = sel.iter().map(|&a| active[a]).collect();
            let prod = trunc_product(&fld, lifted, &idx, prec);
            let cand = series_to_bipoly(&fld, &scale_series(&fld, &lc, &prod, prec), bound);
            let g = cand.primitive_part();
            if g.deg_y() == 0 {
                return false;
            }
            if let Some(q) = cur.div_exact(&g) {
                hit = Some((sel.to_vec(), g, q));
                true
            } else {
                false
            }
        };
        let half = 2 * k == active.len();
        let width = windows.first().map_or(0, |w| w.len());
        let mut sel = Vec::with_capacity(k);
        let mut partial = vec![vec![Elem::ZERO; width]];
        search(
            &fld,
            &windows,
            &adeg,
            total,
            dm,
            k,
            half,
            0,
            0,
            &mut sel,
            &mut partial,
            &mut check,
        );
        match hit {
            Some((sel, g, q)) => {
                found.push(g);
                cur = q;
                let gone: Vec<usize> = sel.iter().map(|&a| active[a]).collect();
                active.retain(|i| !gone.contains(i));
            }
            None => k += 1,
        }
    }
    if cur.deg_y() > 0 {
        found.push(cur);
    }
    Ok(found)
}

#[allow(clippy::too_many_arguments)]
fn search(
    fld: &Field,
    windows: &[Vec<Elem>],
    degs: &[usize],
    total: usize,
    dm: usize,
    k: usize,
    half: bool,
    start: usize,
    deg_so_far: usize,
    sel: &mut Vec<usize>,
    partial: &mut Vec<Vec<Elem>>,
    check: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    if sel.len() == k {
        let sum = partial.last().expect("stack");
        if sum.iter().any(|c| !c.is_zero()) {
            return false;
        }
        if !deg_so_far.is_multiple_of(dm) || !(total - deg_so_far).is_multiple_of(dm) {
            return false;
        }
        return check(sel);
    }
    let n = windows.len();
    let need = k - sel.len();
    let end = if half && sel.is_empty() {
        1
    } else {
        n + 1 - need
    };
    for a in start..end {
        let top = partial.last().expect("stack");
        let next: Vec<Elem> = top
            .iter()
            .zip(&windows[a])
            .map(|(&x, &y)| fld.add(x, y))
            .collect();
        sel.push(a);
        partial.push(next);
        let done = search(
            fld,
            windows,
            degs,
            total,
            dm,
            k,
            half,
            a + 1,
            deg_so_far + degs[a],
            sel,
            partial,
            check,
        );
        sel.pop();
        partial.pop();
        if done {
            return true;
        }
    }
    false
}
