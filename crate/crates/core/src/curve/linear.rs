//! 3x3 projective-linear maps and certificates for groups of them.

use crate::curve::{PlaneCurve, ProjPoint};
use crate::ff::{Elem, Field};

/// A projective-linear group fixing every line through its center.
#[derive(Clone, Debug)]
pub struct GroupCertificate {
    pub center: ProjPoint,
    pub field: Field,
    pub matrices: Vec<[[Elem; 3]; 3]>,
    pub order: usize,
}

pub fn mat_mul(f: &Field, a: &[[Elem; 3]; 3], b: &[[Elem; 3]; 3]) -> [[Elem; 3]; 3] {
    let mut out = [[Elem::ZERO; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let mut acc = Elem::ZERO;
            for k in 0..3 {
                acc = f.add(acc, f.mul(a[i][k], b[k][j]));
            }
            out[i][j] = acc;
        }
    }
    out
}

pub fn mat_vec(f: &Field, a: &[[Elem; 3]; 3], v: [Elem; 3]) -> [Elem; 3] {
    [0, 1, 2].map(|i| (0..3).fold(Elem::ZERO, |acc, k| f.add(acc, f.mul(a[i][k], v[k]))))
}

pub fn det3(f: &Field, m: &[[Elem; 3]; 3]) -> Elem {
    let minor = |a: usize, b: usize, c: usize, d: usize| {
        f.sub(f.mul(m[1][a], m[2][b]), f.mul(m[1][c], m[2][d]))
    };
    let t0 = f.mul(m[0][0], minor(1, 2, 2, 1));
    let t1 = f.mul(m[0][1], minor(0, 2, 2, 0));
    let t2 = f.mul(m[0][2], minor(0, 1, 1, 0));
    f.add(f.sub(t0, t1), t2)
}

/// Scales a matrix so its first nonzero entry is 1.
pub fn projective_normal(f: &Field, m: &[[Elem; 3]; 3]) -> [[Elem; 3]; 3] {
    let lead = m
        .iter()
        .flatten()
        .copied()
        .find(|c| !c.is_zero())
        .expect("nonzero matrix");
    let inv = f.inv(lead).expect("nonzero");
    m.map(|r| r.map(|c| f.mul(c, inv)))
}

/// `F(M v) = c F(v)` for some nonzero constant `c`.
pub fn stabilizes(curve: &PlaneCurve, m: &[[Elem; 3]; 3]) -> bool {
    let f = curve.field();
    let moved = curve.equation().linear_change(m);
    let Some((e, c0)) = curve.equation().terms().next() else {
        return false;
    };
    let c1 = moved.coeff(e);
    if c1.is_zero() {
        return false;
    }
    let ratio = f.div(c1, c0).expect("nonzero");
    moved == curve.equation().scale(ratio)
}

/// Group axioms (up to scalars), curve stabilization and pencil fixing.
pub fn verify_group(cert: &GroupCertificate, curve: &PlaneCurve) -> Result<(), String> {
    let f = &cert.field;
    let curve = curve.embed(f).map_err(|e| e.to_string())?;
    let normal: Vec<[[Elem; 3]; 3]> = cert
        .matrices
        .iter()
        .map(|m| projective_normal(f, m))
        .collect();
    if normal.len() != cert.order {
        return Err(format!(
            "{} matrices for claimed order {}",
            normal.len(),
            cert.order
        ));
    }
    let mut sorted: Vec<_> = normal
        .iter()
        .map(|m| m.map(|r| r.map(|c| c.raw())))
        .collect();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != normal.len() {
        return Err("matrices are not projectively distinct".into());
    }
    for m in &normal {
        if det3(f, m).is_zero() {
            return Err("singular matrix".into());
        }
    }
    for a in &normal {
        for b in &normal {
            let prod = projective_normal(f, &mat_mul(f, a, b));
            let key = prod.map(|r| r.map(|c| c.raw()));
            if sorted.binary_search(&key).is_err() {
                return Err("set is not closed under multiplication".into());
            }
        }
    }
    let c = cert.center.embed(f).map_err(|e| e.to_string())?.coords();
    // three points whose lines to the center are distinct
    let probes = pencil_probes(f, c);
    for m in &normal {
        if !stabilizes(&curve, m) {
            return Err("a matrix does not stabilize the curve".into());
        }
        let mc = mat_vec(f, m, c);
        if !proportional(f, mc, c) {
            return Err("a matrix moves the center".into());
        }
        for u in &probes {
            let mu = mat_vec(f, m, *u);
            if !det3(f, &[c, *u, mu]).is_zero() {
                return Err("a matrix moves a line through the center".into());
            }
        }
    }
    Ok(())
}

fn proportional(f: &Field, a: [Elem; 3], b: [Elem; 3]) -> bool {
    (0..3).all(|i| (0..3).all(|j| f.mul(a[i], b[j]) == f.mul(a[j], b[i])))
}

pub fn pencil_probes(f: &Field, c: [Elem; 3]) -> Vec<[Elem; 3]> {
    let (z, o) = (Elem::ZERO, Elem::ONE);
    let cands = [
        [o, z, z],
        [z, o, z],
        [z, z, o],
        [o, o, z],
        [o, z, o],
        [z, o, o],
        [o, o, o],
    ];
    let mut out: Vec<[Elem; 3]> = Vec::new();
    for u in cands {
        if det3(f, &[c, u, u]).is_zero() && proportional(f, c, u) {
            continue;
        }
        if out.iter().all(|v| !det3(f, &[c, *v, u]).is_zero()) {
            out.push(u);
        }
        if out.len() == 3 {
            break;
        }
    }
    out
}

/// Inverse of an invertible matrix (adjugate over the determinant).
pub fn inverse3(f: &Field, m: &[[Elem; 3]; 3]) -> Option<[[Elem; 3]; 3]> {
    let d = f.inv(det3(f, m))?;
    let mut out = [[Elem::ZERO; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let (r0, r1) = ((j + 1) % 3, (j + 2) % 3);
            let (c0, c1) = ((i + 1) % 3, (i + 2) % 3);
            let cof = f.sub(f.mul(m[r0][c0], m[r1][c1]), f.mul(m[r0][c1], m[r1][c0]));
            out[i][j] = f.mul(cof, d);
        }
    }
    Some(out)
}

pub fn embed_matrix(
    from: &Field,
    to: &Field,
    m: &[[Elem; 3]; 3],
) -> Result<[[Elem; 3]; 3], crate::ff::FieldError> {
    if from.same_field(to) {
        return Ok(*m);
    }
    let e = crate::ff::embedding(from, to)?;
    Ok(m.map(|r| r.map(|c| e.apply(c))))
}
