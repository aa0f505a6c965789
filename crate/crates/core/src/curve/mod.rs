//! Projective plane curves: points, lines, singularities, tangent cones,
//! flexes and intersections with lines.

mod linear;
mod tri;

use std::fmt;

use thiserror::Error;

pub use linear::{
    det3, embed_matrix, inverse3, mat_mul, mat_vec, pencil_probes, projective_normal, stabilizes,
    verify_group, GroupCertificate,
};
pub use tri::TriPoly;

use crate::ff::{common_field, lcm, Elem, Field, FieldError};
use crate::poly::{resultant_y, splitting_degree, BiPoly, PolyError, UniPoly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurveError {
    #[error("curve equation must be a nonzero homogeneous polynomial")]
    NotHomogeneous,
    #[error("(0:0:0) is not a projective point")]
    ZeroPoint,
    #[error("point {0} is not on the curve")]
    NotOnCurve(String),
    #[error("point {0} is not on the line")]
    NotOnLine(String),
    #[error("point {0} is singular")]
    Singular(String),
    #[error("the line is a component of the curve")]
    ComponentLine,
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Element display: plain integer when it lies in the prime field.
pub fn fmt_elem(field: &Field, a: Elem) -> String {
    let c = field.coords(a);
    if c.iter().skip(1).all(|&d| d == 0) {
        c.first().copied().unwrap_or(0).to_string()
    } else {
        field.format(a)
    }
}

fn normalize3(field: &Field, v: [Elem; 3]) -> Option<[Elem; 3]> {
    let lead = v.iter().copied().find(|c| !c.is_zero())?;
    let inv = field.inv(lead).expect("nonzero");
    Some(v.map(|c| field.mul(c, inv)))
}

fn cross(f: &Field, a: [Elem; 3], b: [Elem; 3]) -> [Elem; 3] {
    let m = |x, y| f.mul(x, y);
    [
        f.sub(m(a[1], b[2]), m(a[2], b[1])),
        f.sub(m(a[2], b[0]), m(a[0], b[2])),
        f.sub(m(a[0], b[1]), m(a[1], b[0])),
    ]
}

fn embed3(from: &Field, to: &Field, v: [Elem; 3]) -> Result<[Elem; 3], FieldError> {
    if from.same_field(to) {
        return Ok(v);
    }
    let e = crate::ff::embedding(from, to)?;
    Ok(v.map(|c| e.apply(c)))
}

fn restrict3(from: &Field, to: &Field, v: [Elem; 3]) -> Option<[Elem; 3]> {
    if from.same_field(to) {
        return Some(v);
    }
    let e = crate::ff::embedding(to, from).ok()?;
    Some([e.restrict(v[0])?, e.restrict(v[1])?, e.restrict(v[2])?])
}

macro_rules! projective_triple {
    ($name:ident) => {
        #[derive(Clone)]
        pub struct $name {
            field: Field,
            coords: [Elem; 3],
        }

        impl $name {
            /// Normalizes so the first nonzero coordinate is 1.
            pub fn new(field: &Field, coords: [Elem; 3]) -> Result<$name, CurveError> {
                let coords = normalize3(field, coords).ok_or(CurveError::ZeroPoint)?;
                Ok($name {
                    field: field.clone(),
                    coords,
                })
            }

            pub fn from_ints(field: &Field, c: [i64; 3]) -> Result<$name, CurveError> {
                $name::new(field, c.map(|x| field.from_i64(x)))
            }

            pub fn field(&self) -> &Field {
                &self.field
            }

            pub fn coords(&self) -> [Elem; 3] {
                self.coords
            }

            pub fn embed(&self, target: &Field) -> Result<$name, CurveError> {
                Ok($name {
                    field: target.clone(),
                    coords: embed3(&self.field, target, self.coords)?,
                })
            }

            pub fn restrict(&self, target: &Field) -> Option<$name> {
                Some($name {
                    field: target.clone(),
                    coords: restrict3(&self.field, target, self.coords)?,
                })
            }

            /// Smallest subfield degree containing all coordinates.
            pub fn min_subfield(&self) -> usize {
                self.coords
                    .iter()
                    .fold(1, |acc, &c| lcm(acc, self.field.min_subfield(c)))
            }

            pub fn sort_key(&self) -> [u64; 3] {
                self.coords.map(|c| c.raw())
            }
        }

        impl PartialEq for $name {
            fn eq(&self, other: &Self) -> bool {
                if self.field.same_field(&other.field) {
                    return self.coords == other.coords;
                }
                match common_field(&self.field, &other.field) {
                    Ok(w) => {
                        embed3(&self.field, &w, self.coords).ok()
                            == embed3(&other.field, &w, other.coords).ok()
                    }
                    Err(_) => false,
                }
            }
        }
        impl Eq for $name {}

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let c: Vec<String> = self
                    .coords
                    .iter()
                    .map(|&x| fmt_elem(&self.field, x))
                    .collect();
                write!(f, "({})", c.join(":"))
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{self}")
            }
        }
    };
}

projective_triple!(ProjPoint);
projective_triple!(ProjLine);

impl ProjPoint {
    /// The line through two distinct points.
    pub fn line_to(&self, other: &ProjPoint) -> Result<ProjLine, CurveError> {
        let w = common_field(&self.field, &other.field)?;
        let a = embed3(&self.field, &w, self.coords)?;
        let b = embed3(&other.field, &w, other.coords)?;
        ProjLine::new(&w, cross(&w, a, b))
    }
}

impl ProjLine {
    pub fn contains(&self, p: &ProjPoint) -> Result<bool, CurveError> {
        let w = common_field(&self.field, &p.field)?;
        let l = embed3(&self.field, &w, self.coords)?;
        let q = embed3(&p.field, &w, p.coords)?;
        let s = (0..3).fold(Elem::ZERO, |acc, k| w.add(acc, w.mul(l[k], q[k])));
        Ok(s.is_zero())
    }

    /// Two points spanning the line.
    pub fn basis(&self) -> [[Elem; 3]; 2] {
        let f = &self.field;
        let [a, b, c] = self.coords;
        let (z, o) = (Elem::ZERO, Elem::ONE);
        if !a.is_zero() {
            [[f.neg(b), a, z], [f.neg(c), z, a]]
        } else if !b.is_zero() {
            [[o, z, z], [z, f.neg(c), b]]
        } else {
            [[o, z, z], [z, o, z]]
        }
    }
}

/// A plane curve `F(X, Y, Z) = 0`.
#[derive(Clone, Debug)]
pub struct PlaneCurve {
    f: TriPoly,
    grad: [TriPoly; 3],
}

impl PartialEq for PlaneCurve {
    fn eq(&self, other: &Self) -> bool {
        self.f == other.f
    }
}

impl PlaneCurve {
    pub fn new(f: TriPoly) -> Result<PlaneCurve, CurveError> {
        if f.is_zero() || !f.is_homogeneous() {
            return Err(CurveError::NotHomogeneous);
        }
        let grad = [f.partial(0), f.partial(1), f.partial(2)];
        Ok(PlaneCurve { f, grad })
    }

    /// Homogenizes an affine equation in `(x, y)` (read from `(t, y)`).
    pub fn from_affine(f: &BiPoly) -> Result<PlaneCurve, CurveError> {
        PlaneCurve::new(TriPoly::homogenize(f, f.total_degree()))
    }

    pub fn equation(&self) -> &TriPoly {
        &self.f
    }

    pub fn gradient(&self) -> &[TriPoly; 3] {
        &self.grad
    }

    pub fn field(&self) -> &Field {
        self.f.field()
    }

    pub fn degree(&self) -> usize {
        self.f.degree()
    }

    /// Equation on `Z = 1`.
    pub fn affine(&self) -> BiPoly {
        self.f.dehomogenize(2)
    }

    pub fn embed(&self, target: &Field) -> Result<PlaneCurve, CurveError> {
        PlaneCurve::new(self.f.embed(target)?)
    }

    fn over(&self, w: &Field) -> Result<PlaneCurve, CurveError> {
        if self.field().same_field(w) {
            Ok(self.clone())
        } else {
            self.embed(w)
        }
    }

    fn point_in(&self, p: &ProjPoint) -> Result<(PlaneCurve, [Elem; 3]), CurveError> {
        let w = common_field(self.field(), p.field())?;
        Ok((self.over(&w)?, embed3(p.field(), &w, p.coords())?))
    }

    pub fn contains(&self, p: &ProjPoint) -> Result<bool, CurveError> {
        let (c, v) = self.point_in(p)?;
        Ok(c.f.eval(v).is_zero())
    }

    pub fn is_singular_at(&self, p: &ProjPoint) -> Result<bool, CurveError> {
        let (c, v) = self.point_in(p)?;
        Ok(c.f.eval(v).is_zero() && c.grad.iter().all(|g| g.eval(v).is_zero()))
    }
}

/// Singular points found over `field`; `complete` certifies that no
/// singular point exists outside it.
#[derive(Clone, Debug)]
pub struct SingularLocus {
    pub field: Field,
    pub points: Vec<ProjPoint>,
    pub complete: bool,
}

fn max_degree_for(p: u64) -> usize {
    (62.0 / (p as f64).log2()).floor() as usize
}

/// All singular points, extending `search_field` to the splitting fields of
/// the eliminants when that stays representable.
pub fn singular_locus(c: &PlaneCurve, search_field: &Field) -> Result<SingularLocus, CurveError> {
    let mut w = common_field(c.field(), search_field)?;
    let cap = max_degree_for(w.characteristic());
    loop {
        let (points, needed, mut complete) = singular_points_over(c, &w)?;
        let target = lcm(w.degree(), needed);
        if target == w.degree() {
            return Ok(SingularLocus {
                field: w,
                points,
                complete,
            });
        }
        if target > cap {
            complete = false;
            return Ok(SingularLocus {
                field: w,
                points,
                complete,
            });
        }
        w = w.tower().field(target)?;
    }
}

/// Points over `w`, absolute degree needed for completeness, and whether the
/// locus is finite.
fn singular_points_over(
    c: &PlaneCurve,
    w: &Field,
) -> Result<(Vec<ProjPoint>, usize, bool), CurveError> {
    let cw = c.over(w)?;
    let all: Vec<&TriPoly> = std::iter::once(&cw.f).chain(cw.grad.iter()).collect();
    let mut points = Vec::new();
    let mut needed = 1usize;
    let mut finite = true;

    // affine chart Z = 1
    let aff: Vec<BiPoly> = all
        .iter()
        .map(|p| p.dehomogenize(2))
        .filter(|p| !p.is_zero())
        .collect();
    if !aff.iter().any(|p| p.is_constant()) {
        let mut elim = UniPoly::zero(w);
        for q in &aff[1..] {
            let r = resultant_y(&aff[0], q)?;
            elim = elim.gcd(&r);
        }
        if elim.is_zero() {
            finite = false;
        } else if !elim.is_constant() {
            needed = lcm(needed, w.degree() * splitting_degree(&elim));
            for x0 in elim.roots() {
                let mut g = UniPoly::zero(w);
                for q in &aff {
                    g = g.gcd(&q.eval_t(x0));
                }
                if g.is_zero() {
                    finite = false;
                    continue;
                }
                if g.is_constant() {
                    continue;
                }
                needed = lcm(needed, w.degree() * splitting_degree(&g));
                for y0 in g.roots() {
                    points.push(ProjPoint::new(w, [x0, y0, Elem::ONE])?);
                }
            }
        }
    }

    // line Z = 0, points (x : 1 : 0)
    let one = Elem::ONE;
    let zero = Elem::ZERO;
    let mut g = UniPoly::zero(w);
    for p in &all {
        g = g.gcd(&p.on_line([one, zero, zero], [zero, one, zero]));
    }
    if g.is_zero() {
        finite = false;
    } else if !g.is_constant() {
        needed = lcm(needed, w.degree() * splitting_degree(&g));
        for x0 in g.roots() {
            points.push(ProjPoint::new(w, [x0, one, zero])?);
        }
    }
    if all.iter().all(|p| p.eval([one, zero, zero]).is_zero()) {
        points.push(ProjPoint::new(w, [one, zero, zero])?);
    }
    points.sort_by_key(|p| p.sort_key());
    Ok((points, needed, finite))
}

/// Multiplicity at a point and its tangent directions (lines through the
/// point), over a splitting field of the tangent cone.
#[derive(Clone, Debug)]
pub struct TangentCone {
    pub multiplicity: usize,
    pub field: Field,
    pub directions: Vec<(ProjLine, usize)>,
}

impl TangentCone {
    pub fn distinct_directions(&self) -> usize {
        self.directions.len()
    }
}

pub fn multiplicity_at(c: &PlaneCurve, p: &ProjPoint) -> Result<TangentCone, CurveError> {
    let (cw, v) = c.point_in(p)?;
    let w = cw.field().clone();
    let var = (0..3).find(|&k| !v[k].is_zero()).expect("nonzero point");
    let (a, b) = tri::other_vars(var);
    // P is (v[a], v[b]) after dehomogenizing at `var` (v[var] = 1 by normalization)
    let local =
        cw.f.dehomogenize(var)
            .shift_t(v[a])
            .swap()
            .shift_t(v[b])
            .swap();
    let Some(m) = local.terms().map(|(i, j, _)| (i + j) as usize).min() else {
        return Err(CurveError::NotHomogeneous);
    };
    if m == 0 {
        return Ok(TangentCone {
            multiplicity: 0,
            field: w,
            directions: Vec::new(),
        });
    }
    // lowest form H(u, s) = sum c_ij u^i s^j, read as h(u) = H(u, 1)
    let mut dense = vec![Elem::ZERO; m + 1];
    for (i, j, coef) in local.terms() {
        if (i + j) as usize == m {
            dense[i as usize] = coef;
        }
    }
    let h = UniPoly::from_raw(&w, dense);
    let split = if h.is_constant() {
        1
    } else {
        splitting_degree(&h)
    };
    let ext = w.tower().field(w.degree() * split)?;
    let he = h.embed(&ext)?;
    let base = embed3(&w, &ext, v)?;
    let mut dirs = Vec::new();
    let make_line = |du: Elem, ds: Elem| -> Result<ProjLine, CurveError> {
        let mut d = [Elem::ZERO; 3];
        d[a] = du;
        d[b] = ds;
        ProjLine::new(&ext, cross(&ext, base, d))
    };
    if !he.is_constant() {
        for (r, k) in he.roots_with_multiplicity() {
            dirs.push((make_line(r, Elem::ONE)?, k));
        }
    }
    let at_inf = m - he.deg();
    if at_inf > 0 {
        dirs.push((make_line(Elem::ONE, Elem::ZERO)?, at_inf));
    }
    dirs.sort_by_key(|(l, _)| l.sort_key());
    Ok(TangentCone {
        multiplicity: m,
        field: ext,
        directions: dirs,
    })
}

/// Determinant of the bordered Hessian of the affine equation:
/// rows `(f_xx, f_xy, f_x)`, `(f_xy, f_yy, f_y)`, `(f_x, f_y, 0)`.
pub fn hessian_det(c: &PlaneCurve) -> BiPoly {
    bordered_hessian(&c.affine())
}

pub fn bordered_hessian(f: &BiPoly) -> BiPoly {
    let fx = f.derivative_t();
    let fy = f.derivative_y();
    let fxx = fx.derivative_t();
    let fxy = fx.derivative_y();
    let fyy = fy.derivative_y();
    let two = f.field().from_i64(2);
    fxy.mul(&fx)
        .mul(&fy)
        .scale(two)
        .sub(&fxx.mul(&fy.pow(2)))
        .sub(&fyy.mul(&fx.pow(2)))
}

/// `(F_X(R) : F_Y(R) : F_Z(R))`.
pub fn tangent_line(c: &PlaneCurve, r: &ProjPoint) -> Result<ProjLine, CurveError> {
    let (cw, v) = c.point_in(r)?;
    if !cw.f.eval(v).is_zero() {
        return Err(CurveError::NotOnCurve(r.to_string()));
    }
    let g = [cw.grad[0].eval(v), cw.grad[1].eval(v), cw.grad[2].eval(v)];
    ProjLine::new(cw.field(), g).map_err(|_| CurveError::Singular(r.to_string()))
}

/// Order of vanishing of `F` restricted to `L` at `R`.
pub fn intersection_multiplicity(
    c: &PlaneCurve,
    l: &ProjLine,
    r: &ProjPoint,
) -> Result<usize, CurveError> {
    let w = common_field(&common_field(c.field(), l.field())?, r.field())?;
    let cw = c.over(&w)?;
    let lw = l.embed(&w)?;
    let rv = embed3(r.field(), &w, r.coords())?;
    let rp = ProjPoint::new(&w, rv)?;
    if !lw.contains(&rp)? {
        return Err(CurveError::NotOnLine(r.to_string()));
    }
    if !cw.f.eval(rv).is_zero() {
        return Err(CurveError::NotOnCurve(r.to_string()));
    }
    let s = lw
        .basis()
        .into_iter()
        .find(|b| !cross(&w, *b, rv).iter().all(|x| x.is_zero()))
        .expect("a line has two independent points");
    let h = cw.f.on_line(s, rv);
    h.valuation().ok_or(CurveError::ComponentLine)
}

pub fn is_flex(c: &PlaneCurve, r: &ProjPoint) -> Result<bool, CurveError> {
    let t = tangent_line(c, r)?;
    Ok(intersection_multiplicity(c, &t, r)? >= 3)
}

/// Intersection points of a line with the curve over a field, with
/// multiplicities; `complete` when they account for the full degree.
#[derive(Clone, Debug)]
pub struct Contacts {
    pub field: Field,
    pub points: Vec<(ProjPoint, usize)>,
    pub complete: bool,
}

pub fn line_curve_contacts(
    c: &PlaneCurve,
    l: &ProjLine,
    search_field: &Field,
) -> Result<Contacts, CurveError> {
    let w = common_field(&common_field(c.field(), l.field())?, search_field)?;
    let cw = c.over(&w)?;
    let lw = l.embed(&w)?;
    let [a, b] = lw.basis();
    let h = cw.f.on_line(a, b);
    if h.is_zero() {
        return Err(CurveError::ComponentLine);
    }
    let mut points = Vec::new();
    for (u0, k) in h.roots_with_multiplicity() {
        let p = [0, 1, 2].map(|i| w.add(w.mul(u0, a[i]), b[i]));
        points.push((ProjPoint::new(&w, p)?, k));
    }
    let at_a = c.degree() - h.deg();
    if at_a > 0 {
        points.push((ProjPoint::new(&w, a)?, at_a));
    }
    points.sort_by_key(|(p, _)| p.sort_key());
    let total: usize = points.iter().map(|(_, k)| k).sum();
    Ok(Contacts {
        field: w,
        points,
        complete: total == c.degree(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::make_field;

    fn conic(f: &Field) -> PlaneCurve {
        let one = Elem::ONE;
        PlaneCurve::new(TriPoly::from_terms(
            f,
            [([2, 0, 0], one), ([0, 2, 0], one), ([0, 0, 2], one)],
        ))
        .unwrap()
    }

    #[test]
    fn smooth_conic_has_no_singularities() {
        let f = make_field(3, 1, 0).unwrap();
        let c = conic(&f);
        let s = singular_locus(&c, &f).unwrap();
        assert!(s.points.is_empty() && s.complete);
        // every point of the conic over F_9 is smooth and not a flex
        let f9 = make_field(3, 2, 0).unwrap();
        let line = ProjLine::from_ints(&f9, [0, 0, 1]).unwrap();
        let contacts = line_curve_contacts(&c, &line, &f9).unwrap();
        assert!(contacts.complete);
        for (p, k) in contacts.points {
            assert_eq!(k, 1);
            assert_eq!(multiplicity_at(&c, &p).unwrap().multiplicity, 1);
            assert!(!is_flex(&c, &p).unwrap());
            let t = tangent_line(&c, &p).unwrap();
            assert!(t.contains(&p).unwrap());
            assert_eq!(intersection_multiplicity(&c, &t, &p).unwrap(), 2);
        }
    }

    #[test]
    fn node_and_cusp() {
        let f = make_field(5, 1, 0).unwrap();
        // nodal cubic y^2 z = x^2 (x + z)
        let node = PlaneCurve::new(TriPoly::from_terms(
            &f,
            [
                ([0, 2, 1], Elem::ONE),
                ([3, 0, 0], f.from_i64(-1)),
                ([2, 0, 1], f.from_i64(-1)),
            ],
        ))
        .unwrap();
        let o = ProjPoint::from_ints(&f, [0, 0, 1]).unwrap();
        let cone = multiplicity_at(&node, &o).unwrap();
        assert_eq!(cone.multiplicity, 2);
        assert_eq!(cone.distinct_directions(), 2);
        let s = singular_locus(&node, &f).unwrap();
        assert_eq!(s.points, vec![o.clone()]);
        assert!(s.complete);
        // cuspidal cubic y^2 z = x^3
        let cusp = PlaneCurve::new(TriPoly::from_terms(
            &f,
            [([0, 2, 1], Elem::ONE), ([3, 0, 0], f.from_i64(-1))],
        ))
        .unwrap();
        let cone = multiplicity_at(&cusp, &o).unwrap();
        assert_eq!(cone.multiplicity, 2);
        assert_eq!(cone.directions.len(), 1);
        assert_eq!(cone.directions[0].1, 2);
        let off = ProjPoint::from_ints(&f, [2, 1, 1]).unwrap();
        assert_eq!(multiplicity_at(&cusp, &off).unwrap().multiplicity, 0);
    }

    #[test]
    fn linear_curve_has_zero_hessian() {
        let f = make_field(7, 1, 0).unwrap();
        let line = PlaneCurve::new(TriPoly::linear(
            &f,
            [Elem::ONE, f.from_i64(3), f.from_i64(2)],
        ))
        .unwrap();
        assert!(hessian_det(&line).is_zero());
    }
}
