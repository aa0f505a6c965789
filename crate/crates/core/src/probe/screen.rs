//! Cheap rejections: a Galois covering has equal ramification indices,
//! dividing the degree, over every point of the base.

use super::{
    degree_cap, profile, BasePoint, FiberProfile, ProbeError, ProjectionModel, SingularInfo,
};
use crate::curve::{multiplicity_at, PlaneCurve, ProjPoint};
use crate::ff::Elem;
use crate::ff::{common_field, embedding};
use crate::poly::{resultant_y, splitting_degree, squarefree_decomposition, uni_factor, UniPoly};

#[derive(Clone, Debug)]
pub enum ScreenOutcome {
    /// No contradiction found; `complete` when every branch fiber was seen.
    Pass {
        complete: bool,
        fibers_checked: usize,
    },
    Reject(Box<FiberProfile>),
    /// `f̂` is a polynomial in `y^p`: the extension is inseparable.
    Inseparable,
}

impl ScreenOutcome {
    pub fn is_reject(&self) -> bool {
        !matches!(self, ScreenOutcome::Pass { .. })
    }
}

fn check(model: &ProjectionModel, base: &BasePoint) -> Result<Option<FiberProfile>, ProbeError> {
    let pr = profile(model, base, false)?;
    Ok(pr.violates_uniformity(model.degree()).then_some(pr))
}

/// Every fiber over the listed fields `F_{p^m}` and over `t = inf`.
pub fn uniformity_screen(
    model: &ProjectionModel,
    fields: &[usize],
) -> Result<ScreenOutcome, ProbeError> {
    if model.fhat().derivative_y().is_zero() {
        return Ok(ScreenOutcome::Inseparable);
    }
    let tower = model.field().tower();
    let mut checked = 0;
    if let Some(w) = check(model, &BasePoint::Infinity)? {
        return Ok(ScreenOutcome::Reject(Box::new(w)));
    }
    for &m in fields {
        let small = tower.field(m)?;
        let w = common_field(model.field(), &small)?;
        let e = embedding(&small, &w)?;
        for t in small.elements() {
            checked += 1;
            if let Some(wit) = check(model, &BasePoint::finite(&w, e.apply(t)))? {
                return Ok(ScreenOutcome::Reject(Box::new(wit)));
            }
        }
    }
    Ok(ScreenOutcome::Pass {
        complete: false,
        fibers_checked: checked + 1,
    })
}

/// The discriminant `Res_y(f̂, f̂_y)` over the base field.
pub(crate) fn discriminant(model: &ProjectionModel) -> Result<UniPoly, ProbeError> {
    let f = model.fhat();
    Ok(resultant_y(f, &f.derivative_y())?)
}

/// One root of each irreducible factor of the discriminant: all conjugate
/// fibers look alike, so this visits every finite branch point. Returns
/// the points with their conjugate counts, and the least extension degree
/// that was out of reach (if any).
type BranchPoints = (Vec<(BasePoint, usize)>, Option<usize>);

pub(crate) fn branch_points(model: &ProjectionModel) -> Result<BranchPoints, ProbeError> {
    let d = discriminant(model)?;
    let k = model.field();
    let cap = degree_cap(k.characteristic());
    let mut out = Vec::new();
    let mut missing: Option<usize> = None;
    if d.is_zero() {
        return Err(ProbeError::Degenerate("zero discriminant".into()));
    }
    if d.is_constant() {
        return Ok((out, None));
    }
    for (h, _) in uni_factor(&d, 0)?.factors {
        let need = k.degree() * h.deg();
        if need > cap {
            missing = Some(missing.map_or(need, |m| m.min(need)));
            continue;
        }
        let ext = k.tower().field(need)?;
        let t = h.embed(&ext)?.any_root().expect("split factor has a root");
        out.push((BasePoint::finite(&ext, t), h.deg()));
    }
    Ok((out, missing))
}

/// All branch fibers (the roots of the discriminant and `t = inf`).
pub fn branch_locus_screen(model: &ProjectionModel) -> Result<ScreenOutcome, ProbeError> {
    if model.fhat().derivative_y().is_zero() {
        return Ok(ScreenOutcome::Inseparable);
    }
    // rational fibers first: cheap and usually decisive
    let k = model.field();
    if k.order() <= 64 {
        for t in k.elements() {
            if let Some(w) = check(model, &BasePoint::finite(k, t))? {
                return Ok(ScreenOutcome::Reject(Box::new(w)));
            }
        }
    }
    if let Some(w) = check(model, &BasePoint::Infinity)? {
        return Ok(ScreenOutcome::Reject(Box::new(w)));
    }
    let (points, missing) = branch_points(model)?;
    let count = points.len() + 1;
    for (b, _) in &points {
        if let Some(w) = check(model, b)? {
            return Ok(ScreenOutcome::Reject(Box::new(w)));
        }
    }
    Ok(ScreenOutcome::Pass {
        complete: missing.is_none() && model.singular_locus_complete(),
        fibers_checked: count,
    })
}

#[derive(Clone, Debug)]
pub enum TangentScreen {
    Pass,
    Reject(Box<FiberProfile>),
    NotApplicable(String),
}

/// At an ordinary singular point `Q`, a center on exactly one tangent line
/// sees one ramified branch next to unramified ones over the same point.
pub fn tangent_direction_screen(
    model: &ProjectionModel,
    q: &ProjPoint,
) -> Result<TangentScreen, ProbeError> {
    let Some(s) = model.sing.iter().find(|s| s.point == *q) else {
        return Ok(TangentScreen::NotApplicable("point is not singular".into()));
    };
    if !SingularInfo::is_ordinary(&s.cone) {
        return Ok(TangentScreen::NotApplicable(
            "tangent directions do not separate the branches".into(),
        ));
    }
    let base = match s.base {
        None => return Ok(TangentScreen::NotApplicable("point is the center".into())),
        Some(None) => BasePoint::Infinity,
        Some(Some(t)) => BasePoint::finite(&s.field, t),
    };
    let line = model.fiber_line(&base)?;
    let hits = s.cone.directions.iter().filter(|(l, _)| *l == line).count();
    if hits == 1 && s.cone.multiplicity >= 2 {
        let pr = profile(model, &base, false)?;
        return Ok(TangentScreen::Reject(Box::new(pr)));
    }
    Ok(TangentScreen::Pass)
}

/// Recomputes a rejection witness from the original curve: restricts the
/// curve to the fiber line, finds the contact points over a splitting
/// field, and reads off branch indices from tangent cones.
pub fn verify_witness(
    curve: &PlaneCurve,
    center: &ProjPoint,
    witness: &FiberProfile,
) -> Result<bool, ProbeError> {
    // only the pencil geometry is needed, not the singular locus
    let none = std::sync::Arc::new(SingularInfo {
        field: curve.field().clone(),
        points: Vec::new(),
        complete: false,
    });
    let model = super::make_projection_with(curve, center, &none)?;
    let line = model.fiber_line(&witness.base)?;
    let w = line.field().clone();
    let c = center.embed(&w)?;
    let cu = curve.embed(&w)?;
    let [b0, b1] = line.basis();
    let other = if ProjPoint::new(&w, b0)? == c { b1 } else { b0 };
    let r = cu.equation().on_line(c.coords(), other);
    // simple roots are smooth transversal points; only repeated ones need splitting
    let mut e = Vec::new();
    let mut repeated = UniPoly::from_raw(&w, vec![Elem::ONE]);
    for (part, m) in squarefree_decomposition(&r) {
        if m == 1 {
            e.extend(std::iter::repeat_n(1, part.deg()));
        } else {
            repeated = repeated.mul(&part.pow(m as usize));
        }
    }
    let need = w.degree() * splitting_degree(&repeated);
    if need > degree_cap(w.characteristic()) {
        return Err(ProbeError::IncompleteBranchLocus {
            required: need,
            limit: degree_cap(w.characteristic()),
        });
    }
    let ext = w.tower().field(need)?;
    let ce = cu.embed(&ext)?;
    let (cc, oe) = (
        c.embed(&ext)?.coords(),
        ProjPoint::new(&w, other)?.embed(&ext)?.coords(),
    );
    for (u, i) in repeated.embed(&ext)?.roots_with_multiplicity() {
        let pt = ProjPoint::new(&ext, [0, 1, 2].map(|k| ext.add(ext.mul(u, cc[k]), oe[k])))?;
        if !ce.is_singular_at(&pt)? {
            e.push(i);
            continue;
        }
        let cone = multiplicity_at(&ce, &pt)?;
        if !SingularInfo::is_ordinary(&cone) {
            return Ok(false);
        }
        let m = cone.multiplicity;
        let le = line.embed(&ext)?;
        if cone.directions.iter().any(|(l, _)| *l == le) {
            e.extend(std::iter::repeat_n(1, m - 1));
            e.push(i + 1 - m);
        } else {
            e.extend(std::iter::repeat_n(1, m));
        }
    }
    e.sort_unstable_by(|a, b| b.cmp(a));
    let n = model.degree();
    let bad = e.iter().any(|&x| x != e[0] || n % x != 0);
    Ok(bad && witness.ramification.as_deref() == Some(&e[..]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{build_curve, FamilySpec};
    use crate::probe::make_projection;

    fn desk() -> PlaneCurve {
        build_curve(&FamilySpec::standard(3, 1, 2, 2, 1, 0).unwrap()).unwrap()
    }

    #[test]
    fn witnesses_recompute() {
        let c = desk();
        let f = c.field().clone();
        let p = ProjPoint::from_ints(&f, [0, 0, 1]).unwrap();
        let m = make_projection(&c, &p).unwrap();
        let ScreenOutcome::Reject(w) = branch_locus_screen(&m).unwrap() else {
            panic!("(0:0:1) is not Galois");
        };
        assert!(w.violates_uniformity(m.degree()));
        assert!(verify_witness(&c, &p, &w).unwrap());
    }

    #[test]
    fn tangent_screen_needs_a_singular_point() {
        let c = desk();
        let f = c.field().clone();
        let m = make_projection(&c, &ProjPoint::from_ints(&f, [1, 0, 0]).unwrap()).unwrap();
        let q = ProjPoint::from_ints(&f, [0, 0, 1]).unwrap();
        assert!(matches!(
            tangent_direction_screen(&m, &q).unwrap(),
            TangentScreen::NotApplicable(_)
        ));
    }
}
