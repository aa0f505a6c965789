//! Deck transformations of the shape `y -> a y + b t + c` (fixing the
//! pencil of lines through the center), found by matching fiber roots and
//! confirmed by exact substitution.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{degree_cap, ProbeError, ProjectionModel};
use crate::curve::{embed_matrix, mat_mul, GroupCertificate};
use crate::ff::{embedding, lcm, Elem, Field};
use crate::poly::{splitting_degree, BiPoly, UniPoly};

/// Fiber over `t0` with its splitting degree over the model field.
fn fiber_split(model: &ProjectionModel, field: &Field, t0: Elem) -> Option<(UniPoly, usize)> {
    let u = model.fhat().embed(field).ok()?.eval_t(t0);
    if u.degree() != Some(model.degree()) || !u.is_separable().ok()? {
        return None;
    }
    Some((u.clone(), field.degree() * splitting_degree(&u)))
}

/// Two unramified fibers with small splitting fields.
fn pick_fibers(model: &ProjectionModel, seed: u64) -> Option<[(Elem, Field); 2]> {
    let k = model.field();
    let cap = degree_cap(k.characteristic());
    let mut found: Vec<(usize, Elem, Field)> = Vec::new();
    let consider = |f: &Field, t: Elem, found: &mut Vec<(usize, Elem, Field)>| {
        if let Some((_, d)) = fiber_split(model, f, t) {
            if d <= cap {
                found.push((d, t, f.clone()));
            }
        }
    };
    for t in k.elements().take(64) {
        consider(k, t, &mut found);
    }
    if found.len() < 2 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for m in [2usize, 3] {
            let Ok(ext) = k.tower().field(k.degree() * m) else {
                continue;
            };
            for _ in 0..16 {
                let t = crate::poly::random_elem(&ext, &mut rng);
                consider(&ext, t, &mut found);
            }
            if found.len() >= 2 {
                break;
            }
        }
    }
    found.sort_by_key(|(d, t, f)| (*d, f.degree(), t.raw()));
    let mut it = found.into_iter();
    let a = it.next()?;
    // a second fiber over a different base value
    let b = it.find(|b| !(b.2.same_field(&a.2) && b.1 == a.1))?;
    Some([(a.1, a.2), (b.1, b.2)])
}

fn sorted(v: &[Elem]) -> Vec<u64> {
    let mut r: Vec<u64> = v.iter().map(|e| e.raw()).collect();
    r.sort_unstable();
    r
}

/// Searches the affine deck maps; certifies when there are `n` of them.
pub fn deck_certificate(
    model: &ProjectionModel,
    seed: u64,
) -> Result<Option<GroupCertificate>, ProbeError> {
    if !model.is_outer() {
        return Ok(None);
    }
    let n = model.degree();
    let k = model.field();
    let Some([(t1, f1), (t2, f2)]) = pick_fibers(model, seed) else {
        return Ok(None);
    };
    let s1 = fiber_split(model, &f1, t1).expect("picked").1;
    let s2 = fiber_split(model, &f2, t2).expect("picked").1;
    let need = lcm(lcm(s1, s2), k.degree());
    if need > degree_cap(k.characteristic()) {
        return Ok(None);
    }
    let w = k.tower().field(need)?;
    let (t1, t2) = (embedding(&f1, &w)?.apply(t1), embedding(&f2, &w)?.apply(t2));
    if t1 == t2 {
        return Ok(None);
    }
    let fhat = model.fhat().embed(&w)?;
    let r1 = fhat.eval_t(t1).roots();
    let r2 = fhat.eval_t(t2).roots();
    if r1.len() != n || r2.len() != n {
        return Ok(None);
    }
    let (set1, set2) = (sorted(&r1), sorted(&r2));
    let mut maps: Vec<[Elem; 3]> = Vec::new();
    let dt = w.inv(w.sub(t1, t2)).expect("distinct");
    let moved = |a: Elem, beta: Elem, roots: &[Elem]| -> Vec<u64> {
        sorted(
            &roots
                .iter()
                .map(|&x| w.add(w.mul(a, x), beta))
                .collect::<Vec<_>>(),
        )
    };
    let pairs: Vec<(Elem, Elem)> = if n == 1 {
        vec![(Elem::ONE, Elem::ZERO)]
    } else {
        let (r, rp) = (r1[0], r1[1]);
        let inv = w.inv(w.sub(r, rp)).expect("distinct roots");
        let mut v = Vec::new();
        for &s in &r1 {
            for &sp in &r1 {
                if s == sp {
                    continue;
                }
                let a = w.mul(w.sub(s, sp), inv);
                let beta = w.sub(s, w.mul(a, r));
                if moved(a, beta, &r1) == set1 {
                    v.push((a, beta));
                }
            }
        }
        v
    };
    for (a, beta1) in pairs {
        for &s2 in &r2 {
            let beta2 = w.sub(s2, w.mul(a, r2[0]));
            if moved(a, beta2, &r2) != set2 {
                continue;
            }
            let b = w.mul(w.sub(beta1, beta2), dt);
            let c = w.sub(beta1, w.mul(b, t1));
            if is_deck(&fhat, a, b, c) && !maps.contains(&[a, b, c]) {
                maps.push([a, b, c]);
            }
        }
    }
    if maps.len() != n {
        return Ok(None);
    }
    // back to original coordinates: M A M^-1
    let m = embed_matrix(k, &w, model.matrix())?;
    let mi = embed_matrix(k, &w, model.inverse())?;
    let (z, o) = (Elem::ZERO, Elem::ONE);
    let mut mats: Vec<[[Elem; 3]; 3]> = maps
        .iter()
        .map(|&[a, b, c]| {
            let local = [[a, b, c], [z, o, z], [z, z, o]];
            crate::curve::projective_normal(&w, &mat_mul(&w, &mat_mul(&w, &m, &local), &mi))
        })
        .collect();
    mats.sort_by_key(|m| m.map(|r| r.map(|c| c.raw())));
    Ok(Some(GroupCertificate {
        center: model.center().embed(&w)?,
        field: w,
        order: n,
        matrices: mats,
    }))
}

/// `f̂(t, a y + b t + c) = a^n f̂(t, y)`.
fn is_deck(fhat: &BiPoly, a: Elem, b: Elem, c: Elem) -> bool {
    let w = fhat.field();
    let lin = UniPoly::from_raw(w, vec![c, b]);
    fhat.compose_y_affine(a, &lin) == fhat.scale(w.pow(a, fhat.deg_y() as u128))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{verify_group, ProjPoint};
    use crate::family::{build_curve, FamilySpec};
    use crate::probe::make_projection;

    #[test]
    fn deck_maps_exist_only_for_galois_centers() {
        let c = build_curve(&FamilySpec::standard(3, 1, 2, 2, 1, 0).unwrap()).unwrap();
        let f = c.field().clone();
        let axis = make_projection(&c, &ProjPoint::from_ints(&f, [0, 1, 0]).unwrap()).unwrap();
        let g = deck_certificate(&axis, 0)
            .unwrap()
            .expect("axis point is Galois");
        assert_eq!(g.order, 6);
        assert!(verify_group(&g, &c).is_ok());
        let off = make_projection(&c, &ProjPoint::from_ints(&f, [0, 0, 1]).unwrap()).unwrap();
        assert!(deck_certificate(&off, 0).unwrap().is_none());
    }
}
