use galois_core::census::{census_report, recheck::recheck, run_census, MatchStatus, SpecFile};
use galois_core::curve::ProjPoint;
use galois_core::probe::Policy;

fn set(c: &galois_core::census::Census) -> Vec<String> {
    let mut v: Vec<String> = c.galois_points().iter().map(ProjPoint::to_string).collect();
    v.sort();
    v
}

#[test]
fn lambda_two_over_f9() {
    let spec = SpecFile::standard(3, 1, 2, 2, 1);
    let fam = spec.to_family().unwrap();
    let c = run_census(&fam, &[1, 2], &Policy::default()).unwrap();
    assert_eq!(c.undecided(), 0);
    assert_eq!(c.check_failures(), 0);
    assert_eq!(set(&c), ["(0:1:0)", "(1:0:0)"]);
    assert_eq!(
        c.matching.status,
        MatchStatus::Matched,
        "{:?}",
        c.matching.notes
    );

    let report = census_report(&c, &spec, false).unwrap();
    let json = serde_json::to_string(&report).unwrap();
    let back = serde_json::from_str(&json).unwrap();
    let r = recheck(&spec, &back).unwrap();
    assert!(r.ok(), "{:?}", r.problems);
}

#[test]
fn lambda_one_over_f9() {
    let fam = SpecFile::standard(3, 1, 2, 1, 1).to_family().unwrap();
    let c = run_census(&fam, &[1, 2], &Policy::default()).unwrap();
    assert_eq!(c.undecided(), 0);
    assert_eq!(c.check_failures(), 0);
    assert!(c
        .entries
        .iter()
        .all(|e| e.witness_verified != Some(false) && e.invariant_ok != Some(false)));
    assert_eq!(set(&c), ["(0:1:0)", "(1:0:0)", "(1:1:0)", "(1:2:0)"]);
    assert_eq!(
        c.matching.status,
        MatchStatus::Matched,
        "{:?}",
        c.matching.notes
    );
}
