//! Projections from points of the plane, their fibers, and Galois
//! verdicts with certificates.

mod decide;
mod deck;
mod norm;
mod ramification;
mod screen;

use std::sync::Arc;

use thiserror::Error;

pub use decide::{
    fact_invariant, galois_decide, Certificate, GaloisVerdict, Policy, Stage, VerdictStatus,
};
pub use deck::deck_certificate;
pub use norm::{norm_split_test, NormCertificate, NormOptions, NormOutcome};
pub use ramification::{ramification_report, BranchFiber, GenusValue, RamificationReport};
pub use screen::{
    branch_locus_screen, tangent_direction_screen, uniformity_screen, verify_witness,
    ScreenOutcome, TangentScreen,
};

use crate::curve::{
    embed_matrix, inverse3, mat_vec, multiplicity_at, singular_locus, CurveError, PlaneCurve,
    ProjLine, ProjPoint, TangentCone,
};
use crate::ff::{common_field, embedding, Elem, Field, FieldError};
use crate::poly::{
    splitting_degree, squarefree_decomposition, uni_factor, BiPoly, PolyError, UniPoly,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProbeError {
    #[error("degenerate projection: {0}")]
    Degenerate(String),
    #[error("branch locus needs an extension of degree {required} (limit {limit})")]
    IncompleteBranchLocus { required: usize, limit: usize },
    #[error("inconsistent ramification data: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Curve(#[from] CurveError),
}

/// Largest absolute extension degree that fits the packed representation.
pub(crate) fn degree_cap(p: u64) -> usize {
    (62.0 / (p as f64).log2()).floor() as usize
}

/// Singular points of a curve with their tangent cones.
#[derive(Clone, Debug)]
pub struct SingularInfo {
    pub field: Field,
    pub points: Vec<(ProjPoint, TangentCone)>,
    pub complete: bool,
}

pub fn singular_info(curve: &PlaneCurve) -> Result<SingularInfo, ProbeError> {
    let locus = singular_locus(curve, curve.field())?;
    let mut points = Vec::new();
    for p in locus.points {
        let cone = multiplicity_at(curve, &p)?;
        points.push((p, cone));
    }
    Ok(SingularInfo {
        field: locus.field,
        points,
        complete: locus.complete,
    })
}

impl SingularInfo {
    /// Every branch at the point is smooth with its own tangent.
    pub fn is_ordinary(cone: &TangentCone) -> bool {
        cone.directions.len() == cone.multiplicity && cone.directions.iter().all(|(_, k)| *k == 1)
    }
}

/// A point of the base line: `t = Y'/Z'` in normalized coordinates, or the
/// point `Z' = 0` at infinity.
#[derive(Clone, Debug)]
pub enum BasePoint {
    Finite { field: Field, t: Elem },
    Infinity,
}

impl BasePoint {
    pub fn finite(field: &Field, t: Elem) -> BasePoint {
        BasePoint::Finite {
            field: field.clone(),
            t,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            BasePoint::Finite { field, t } => {
                let m = field.min_subfield(*t);
                let small = field.tower().field(m).ok();
                match small.and_then(|s| {
                    embedding(&s, field)
                        .ok()
                        .and_then(|e| e.restrict(*t).map(|v| (s, v)))
                }) {
                    Some((s, v)) => format!("t={} (degree {m})", crate::curve::fmt_elem(&s, v)),
                    None => format!("t={} (degree {m})", crate::curve::fmt_elem(field, *t)),
                }
            }
            BasePoint::Infinity => "t=inf".to_string(),
        }
    }
}

/// A singular point of the curve seen from the center.
#[derive(Clone, Debug)]
pub(crate) struct SingFiber {
    pub point: ProjPoint,
    pub cone: TangentCone,
    pub field: Field,
    /// `None` when the point is the center itself.
    pub base: Option<Option<Elem>>,
    /// Fiber coordinate `X'/Z'`, or `X'/Y'` at infinity.
    pub x: Elem,
}

/// The projection from `center`, in coordinates `v = M v'` that send the
/// center to `(1:0:0)`: the base is `t = Y'/Z'` and the fiber variable is
/// `y = X'/Z'`.
#[derive(Clone, Debug)]
pub struct ProjectionModel {
    curve: PlaneCurve,
    center: ProjPoint,
    matrix: [[Elem; 3]; 3],
    inverse: [[Elem; 3]; 3],
    transformed: PlaneCurve,
    fhat: BiPoly,
    fhat_inf: BiPoly,
    n: usize,
    center_multiplicity: usize,
    pub(crate) sing: Vec<SingFiber>,
    sing_complete: bool,
}

/// `M` with `M (1,0,0)^T = center`.
pub fn normalizing_matrix(center: &ProjPoint) -> [[Elem; 3]; 3] {
    let f = center.field();
    let [a, b, c] = center.coords();
    let (z, o) = (Elem::ZERO, Elem::ONE);
    // points are stored with leading coordinate 1; rescale to the chart
    if !c.is_zero() {
        let ci = f.inv(c).expect("nonzero");
        let (a, b) = (f.mul(a, ci), f.mul(b, ci));
        // (a:b:1): t = (y - b)/(x - a) read through X = aX' + Y', Y = bX' + Z', Z = X'
        [[a, o, z], [b, z, o], [o, z, z]]
    } else if !b.is_zero() {
        let a = f.mul(a, f.inv(b).expect("nonzero"));
        // (a:1:0): t = x - a y
        [[a, o, z], [o, z, z], [z, z, o]]
    } else {
        [[o, z, z], [z, o, z], [z, z, o]]
    }
}

pub fn make_projection(
    curve: &PlaneCurve,
    center: &ProjPoint,
) -> Result<ProjectionModel, ProbeError> {
    let info = singular_info(curve)?;
    make_projection_with(curve, center, &Arc::new(info))
}

pub fn make_projection_with(
    curve: &PlaneCurve,
    center: &ProjPoint,
    sing: &Arc<SingularInfo>,
) -> Result<ProjectionModel, ProbeError> {
    let k = common_field(curve.field(), center.field())?;
    let curve = curve.embed(&k)?;
    let center = center.embed(&k)?;
    let matrix = normalizing_matrix(&center);
    let inverse =
        inverse3(&k, &matrix).ok_or_else(|| ProbeError::Degenerate("singular matrix".into()))?;
    let transformed = PlaneCurve::new(curve.equation().linear_change(&matrix))?;
    let eq = transformed.equation();
    // dehomogenize(2) keeps (X', Y') in that order; swap to (t, y) = (Y', X')
    let fhat = eq.dehomogenize(2).swap();
    // dehomogenize(1) keeps (X', Z'); swap to (s, y) = (Z', X')
    let fhat_inf = eq.dehomogenize(1).swap();
    let n = fhat.deg_y();
    if n == 0 {
        return Err(ProbeError::Degenerate(
            "curve is a union of lines through the center".into(),
        ));
    }
    let center_multiplicity = curve.degree() - n;
    let mut model = ProjectionModel {
        curve,
        center,
        matrix,
        inverse,
        transformed,
        fhat,
        fhat_inf,
        n,
        center_multiplicity,
        sing: Vec::new(),
        sing_complete: sing.complete,
    };
    model.sing = model.locate_singular(sing)?;
    Ok(model)
}

impl ProjectionModel {
    pub fn curve(&self) -> &PlaneCurve {
        &self.curve
    }

    pub fn center(&self) -> &ProjPoint {
        &self.center
    }

    pub fn field(&self) -> &Field {
        self.curve.field()
    }

    pub fn matrix(&self) -> &[[Elem; 3]; 3] {
        &self.matrix
    }

    pub fn inverse(&self) -> &[[Elem; 3]; 3] {
        &self.inverse
    }

    pub fn transformed(&self) -> &PlaneCurve {
        &self.transformed
    }

    /// `F'(y, t, 1)` as a polynomial in `(t, y)`.
    pub fn fhat(&self) -> &BiPoly {
        &self.fhat
    }

    /// `F'(y, 1, s)` as a polynomial in `(s, y)`: the chart at `t = inf`.
    pub fn fhat_at_infinity(&self) -> &BiPoly {
        &self.fhat_inf
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn center_multiplicity(&self) -> usize {
        self.center_multiplicity
    }

    pub fn is_outer(&self) -> bool {
        self.center_multiplicity == 0
    }

    pub fn singular_locus_complete(&self) -> bool {
        self.sing_complete
    }

    fn locate_singular(&self, info: &SingularInfo) -> Result<Vec<SingFiber>, ProbeError> {
        let w = common_field(self.field(), &info.field)?;
        let inv = embed_matrix(self.field(), &w, &self.inverse)?;
        let mut out = Vec::new();
        for (p, cone) in &info.points {
            let r = mat_vec(&w, &inv, p.embed(&w)?.coords());
            let (base, x) = if !r[2].is_zero() {
                let zi = w.inv(r[2]).expect("nonzero");
                (Some(Some(w.mul(r[1], zi))), w.mul(r[0], zi))
            } else if !r[1].is_zero() {
                (Some(None), w.div(r[0], r[1])?)
            } else {
                (None, Elem::ZERO)
            };
            out.push(SingFiber {
                point: p.embed(&w)?,
                cone: cone.clone(),
                field: w.clone(),
                base,
                x,
            });
        }
        Ok(out)
    }

    /// The fiber polynomial over `base`, over the field it lives in.
    pub fn fiber_polynomial(&self, base: &BasePoint) -> Result<UniPoly, ProbeError> {
        match base {
            BasePoint::Finite { field, t } => {
                let w = common_field(self.field(), field)?;
                let t = embedding(field, &w)?.apply(*t);
                Ok(self.fhat.embed(&w)?.eval_t(t))
            }
            BasePoint::Infinity => Ok(self.fhat_inf.eval_t(Elem::ZERO)),
        }
    }

    /// The line of the pencil over `base`, in original coordinates.
    pub fn fiber_line(&self, base: &BasePoint) -> Result<ProjLine, ProbeError> {
        let (w, pt) = match base {
            BasePoint::Finite { field, t } => {
                let w = common_field(self.field(), field)?;
                let t = embedding(field, &w)?.apply(*t);
                (w, [Elem::ZERO, t, Elem::ONE])
            }
            BasePoint::Infinity => (self.field().clone(), [Elem::ZERO, Elem::ONE, Elem::ZERO]),
        };
        let m = embed_matrix(self.field(), &w, &self.matrix)?;
        let other = ProjPoint::new(&w, mat_vec(&w, &m, pt))?;
        Ok(self.center.embed(&w)?.line_to(&other)?)
    }

    /// Original coordinates of the fiber point with coordinate `x`.
    pub fn fiber_point(
        &self,
        base: &BasePoint,
        field: &Field,
        x: Elem,
    ) -> Result<ProjPoint, ProbeError> {
        let w = match base {
            BasePoint::Finite { field: bf, .. } => {
                common_field(&common_field(self.field(), bf)?, field)?
            }
            BasePoint::Infinity => common_field(self.field(), field)?,
        };
        let x = embedding(field, &w)?.apply(x);
        let v = match base {
            BasePoint::Finite { field: bf, t } => [x, embedding(bf, &w)?.apply(*t), Elem::ONE],
            BasePoint::Infinity => [x, Elem::ONE, Elem::ZERO],
        };
        let m = embed_matrix(self.field(), &w, &self.matrix)?;
        Ok(ProjPoint::new(&w, mat_vec(&w, &m, v))?)
    }

    /// Singular points on the fiber over `base`, with their fiber
    /// coordinate in a common field.
    pub(crate) fn singular_on(
        &self,
        base: &BasePoint,
    ) -> Result<Vec<(&SingFiber, Field, Elem)>, ProbeError> {
        let mut out = Vec::new();
        for s in &self.sing {
            let Some(sb) = &s.base else { continue };
            match (base, sb) {
                (BasePoint::Infinity, None) => out.push((s, s.field.clone(), s.x)),
                (BasePoint::Finite { field, t }, Some(ts)) => {
                    let w = common_field(field, &s.field)?;
                    let a = embedding(field, &w)?.apply(*t);
                    let b = embedding(&s.field, &w)?.apply(*ts);
                    if a == b {
                        out.push((s, w.clone(), embedding(&s.field, &w)?.apply(s.x)));
                    }
                }
                _ => {}
            }
        }
        Ok(out)
    }
}

/// Roots of a fiber polynomial over a splitting field.
#[derive(Clone, Debug)]
pub struct FiberRoots {
    pub field: Field,
    pub roots: Vec<(Elem, usize)>,
}

#[derive(Clone, Debug)]
pub struct FiberProfile {
    pub base: BasePoint,
    /// Root multiplicities of the fiber polynomial, descending.
    pub multiplicities: Vec<usize>,
    /// Irreducible factor degrees over the base point's field.
    pub pattern: Vec<usize>,
    pub roots: Option<FiberRoots>,
    pub lead_vanished: bool,
    pub meets_sing: bool,
    /// Ramification indices of all points of the normalization over the
    /// fiber, when the local data pins them down.
    pub ramification: Option<Vec<usize>>,
}

impl FiberProfile {
    /// Unequal indices, or an index not dividing `n`.
    pub fn violates_uniformity(&self, n: usize) -> bool {
        match &self.ramification {
            Some(e) => e.iter().any(|&x| x != e[0] || !n.is_multiple_of(x)),
            None => false,
        }
    }
}

pub fn fiber_profile(
    model: &ProjectionModel,
    base: &BasePoint,
) -> Result<FiberProfile, ProbeError> {
    profile(model, base, true)
}

pub(crate) fn profile(
    model: &ProjectionModel,
    base: &BasePoint,
    full: bool,
) -> Result<FiberProfile, ProbeError> {
    let u = model.fiber_polynomial(base)?;
    let n = model.degree();
    let lead_vanished = u.degree() != Some(n);
    let mut multiplicities = Vec::new();
    if !u.is_zero() {
        for (part, m) in squarefree_decomposition(&u) {
            multiplicities.extend(std::iter::repeat_n(m as usize, part.deg()));
        }
    }
    multiplicities.sort_unstable_by(|a, b| b.cmp(a));
    let sing = model.singular_on(base)?;
    let meets_sing = !sing.is_empty();
    let ramification = if lead_vanished || u.is_zero() {
        None
    } else {
        branch_indices(model, base, &u, &multiplicities, &sing)?
    };
    let (pattern, roots) = if full && !u.is_zero() {
        let pattern = uni_factor(&u, 0)?.degree_pattern();
        let w = u.field();
        let need = w.degree() * splitting_degree(&u);
        let roots = if need <= degree_cap(w.characteristic()) {
            let ext = w.tower().field(need)?;
            Some(FiberRoots {
                roots: u.embed(&ext)?.roots_with_multiplicity(),
                field: ext,
            })
        } else {
            None
        };
        (pattern, roots)
    } else {
        (Vec::new(), None)
    };
    Ok(FiberProfile {
        base: base.clone(),
        multiplicities,
        pattern,
        roots,
        lead_vanished,
        meets_sing,
        ramification,
    })
}

/// Indices at smooth points are root multiplicities; at an ordinary
/// singular point every branch is smooth, so the branch tangent to the
/// fiber line takes the excess intersection and the rest are unramified.
fn branch_indices(
    model: &ProjectionModel,
    base: &BasePoint,
    u: &UniPoly,
    mults: &[usize],
    sing: &[(&SingFiber, Field, Elem)],
) -> Result<Option<Vec<usize>>, ProbeError> {
    let mut smooth: Vec<usize> = mults.to_vec();
    let mut out = Vec::new();
    if !sing.is_empty() {
        let line = model.fiber_line(base)?;
        for (s, w, x) in sing {
            let i = u
                .embed(&common_field(u.field(), w)?)?
                .root_multiplicity(embedding(w, &common_field(u.field(), w)?)?.apply(*x));
            let Some(pos) = smooth.iter().position(|&m| m == i) else {
                return Err(ProbeError::Inconsistent(
                    "singular root missing from fiber".into(),
                ));
            };
            smooth.remove(pos);
            if !SingularInfo::is_ordinary(&s.cone) {
                return Ok(None);
            }
            let m = s.cone.multiplicity;
            let tangent = s.cone.directions.iter().any(|(l, _)| *l == line);
            if tangent {
                out.extend(std::iter::repeat_n(1, m - 1));
                out.push(i + 1 - m);
            } else if i == m {
                out.extend(std::iter::repeat_n(1, m));
            } else {
                return Err(ProbeError::Inconsistent(
                    "transversal line with excess intersection".into(),
                ));
            }
        }
    }
    out.extend(smooth);
    out.sort_unstable_by(|a, b| b.cmp(a));
    Ok(Some(out))
}
