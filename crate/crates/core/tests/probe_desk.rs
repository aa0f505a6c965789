use galois_core::curve::ProjPoint;
use galois_core::family::{build_curve, FamilySpec};
use galois_core::probe::*;

fn desk(lambda: i64) -> galois_core::curve::PlaneCurve {
    build_curve(&FamilySpec::standard(3, 1, 2, lambda, 1, 0).unwrap()).unwrap()
}

#[test]
fn axis_projection_basics() {
    let c = desk(2);
    let f = c.field().clone();
    let m = make_projection(&c, &ProjPoint::from_ints(&f, [1, 0, 0]).unwrap()).unwrap();
    assert_eq!(m.degree(), 6);
    let g = deck_certificate(&m, 0).unwrap().expect("deck maps");
    assert_eq!(g.order, 6);
    assert!(matches!(
        branch_locus_screen(&m).unwrap(),
        ScreenOutcome::Pass { .. }
    ));
    let r = ramification_report(&m).unwrap();
    assert_eq!(r.genus, GenusValue::Exact(4));
}

#[test]
fn wild_bound_for_lambda_one() {
    let c = desk(1);
    let f = c.field().clone();
    let m = make_projection(&c, &ProjPoint::from_ints(&f, [1, 0, 0]).unwrap()).unwrap();
    let r = ramification_report(&m).unwrap();
    assert_eq!(r.genus, GenusValue::AtLeast(7));
    assert!(!r.tame);
}

#[test]
fn norm_certifies_the_axis_point() {
    let c = desk(2);
    let f = c.field().clone();
    let m = make_projection(&c, &ProjPoint::from_ints(&f, [1, 0, 0]).unwrap()).unwrap();
    let t = std::time::Instant::now();
    match norm_split_test(&m, &NormOptions::default()).unwrap() {
        galois_core::probe::NormOutcome::Galois(c) => {
            assert_eq!(c.y_degrees, vec![6; 6]);
            assert!(c.reconstructs());
        }
        other => panic!("{other:?}"),
    }
    eprintln!("norm: {:?}", t.elapsed());
}

#[test]
fn some_centers_rejected() {
    let c = desk(2);
    let f = c.field().clone();
    for pt in [[0, 0, 1], [1, 1, 1], [0, 1, 1], [1, 2, 0]] {
        let p = ProjPoint::from_ints(&f, pt).unwrap();
        if c.contains(&p).unwrap() {
            eprintln!("{p} on curve");
            continue;
        }
        let m = make_projection(&c, &p).unwrap();
        let t = std::time::Instant::now();
        let v = galois_decide(&m, &Policy::default()).unwrap();
        eprintln!("{p}: {:?} {:?} {:?}", v.status, v.log, t.elapsed());
        assert_eq!(v.status, VerdictStatus::NotGaloisCertified);
        if let Some(Certificate::Fiber(w)) = &v.certificate {
            assert!(verify_witness(&c, &p, w).unwrap());
        }
    }
}

#[test]
fn projection_from_a_singular_point_has_degree_q_plus_one() {
    let c = desk(1);
    let info = singular_info(&c).unwrap();
    assert_eq!(info.points.len(), 2);
    for (q, cone) in &info.points {
        let m = make_projection(&c, q).unwrap();
        assert_eq!(cone.multiplicity, 2);
        assert_eq!(m.center_multiplicity(), 2);
        assert_eq!(m.degree(), 4);
        assert!(!m.is_outer());
    }
}
