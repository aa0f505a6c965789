//! Outer Galois-point census: every point of `P^2(K_m)` off the curve, for
//! the requested extensions `K_m` of the coefficient field, is decided.

pub mod commands;
pub mod recheck;
pub mod report;
pub mod specfile;

use std::collections::HashSet;
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use thiserror::Error;

use crate::curve::{CurveError, PlaneCurve, ProjPoint};
use crate::family::{
    build_curve, predicted_profile, validate_spec, FamilyError, FamilySpec, Prediction,
};
use crate::ff::{Elem, Field, FieldError};
use crate::probe::{
    fact_invariant, galois_decide, make_projection_with, singular_info, verify_witness,
    Certificate, GaloisVerdict, Policy, ProbeError, SingularInfo, VerdictStatus,
};

pub use report::{census_report, CensusReport};
pub use specfile::{parse_spec, read_spec, SpecError, SpecFile};

#[derive(Debug, Error)]
pub enum CensusError {
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Probe(#[from] ProbeError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("report: {0}")]
    Report(String),
}

/// Which coordinate was scaled to 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Chart {
    Z,
    Y,
    X,
}

impl Chart {
    pub fn of(p: &ProjPoint) -> Chart {
        let c = p.coords();
        if !c[2].is_zero() {
            Chart::Z
        } else if !c[1].is_zero() {
            Chart::Y
        } else {
            Chart::X
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Chart::Z => "z=1",
            Chart::Y => "y=1",
            Chart::X => "x=1",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Candidates {
    /// Relative degrees `m` over the coefficient field.
    pub fields: Vec<usize>,
    /// Off-curve points, each over its minimal field.
    pub points: Vec<ProjPoint>,
    pub enumerated: usize,
    pub on_curve: usize,
}

/// A point over the smallest subfield containing its coordinates.
pub fn minimal_point(p: &ProjPoint) -> Result<ProjPoint, CensusError> {
    let d = p.min_subfield();
    let f = p.field().tower().field(d)?;
    p.restrict(&f)
        .ok_or_else(|| CensusError::Report(format!("{p} does not restrict to degree {d}")))
}

fn plane_points(f: &Field) -> impl Iterator<Item = [Elem; 3]> + '_ {
    let all: Vec<Elem> = f.elements().collect();
    let mut out = Vec::with_capacity(all.len() * all.len() + all.len() + 1);
    for &a in &all {
        for &b in &all {
            out.push([a, b, Elem::ONE]);
        }
    }
    for &a in &all {
        out.push([a, Elem::ONE, Elem::ZERO]);
    }
    out.push([Elem::ONE, Elem::ZERO, Elem::ZERO]);
    out.into_iter()
}

pub fn candidates(curve: &PlaneCurve, fields: &[usize]) -> Result<Candidates, CensusError> {
    let k = curve.field();
    let mut seen = HashSet::new();
    let mut points = Vec::new();
    let (mut enumerated, mut on_curve) = (0, 0);
    for &m in fields {
        let f = k.tower().field(k.degree() * m)?;
        for c in plane_points(&f) {
            let p = minimal_point(&ProjPoint::new(&f, c)?)?;
            if !seen.insert((p.field().degree(), p.sort_key())) {
                continue;
            }
            enumerated += 1;
            if curve.contains(&p)? {
                on_curve += 1;
            } else {
                points.push(p);
            }
        }
    }
    points.sort_by_key(|p| (p.field().degree(), p.sort_key()));
    Ok(Candidates {
        fields: fields.to_vec(),
        points,
        enumerated,
        on_curve,
    })
}

#[derive(Clone, Debug)]
pub struct CensusEntry {
    pub point: ProjPoint,
    /// Projection degree, when the model could be built.
    pub degree: Option<usize>,
    pub verdict: GaloisVerdict,
    /// The uniformity invariant rechecked on a Galois verdict.
    pub invariant_ok: Option<bool>,
    /// Independent recomputation of a fiber witness.
    pub witness_verified: Option<bool>,
    pub error: Option<String>,
    pub seconds: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatchStatus {
    Matched,
    Mismatched,
    NotApplicable,
}

impl MatchStatus {
    pub fn name(self) -> &'static str {
        match self {
            MatchStatus::Matched => "matched",
            MatchStatus::Mismatched => "mismatched",
            MatchStatus::NotApplicable => "not_applicable",
        }
    }
}

#[derive(Clone, Debug)]
pub struct PredictionMatch {
    pub status: MatchStatus,
    /// Every candidate was decided, so the comparison is complete.
    pub decisive: bool,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct Census {
    pub spec: FamilySpec,
    pub curve: PlaneCurve,
    pub policy: Policy,
    pub candidates: Candidates,
    pub entries: Vec<CensusEntry>,
    pub prediction: Option<Prediction>,
    pub matching: PredictionMatch,
    pub singular_seconds: f64,
    pub total_seconds: f64,
}

impl Census {
    pub fn galois_points(&self) -> Vec<ProjPoint> {
        self.entries
            .iter()
            .filter(|e| e.verdict.status == VerdictStatus::GaloisCertified)
            .map(|e| e.point.clone())
            .collect()
    }

    pub fn delta_prime(&self) -> usize {
        self.galois_points().len()
    }

    pub fn undecided(&self) -> usize {
        self.entries
            .iter()
            .filter(|e| e.verdict.status == VerdictStatus::Undecided)
            .count()
    }

    /// Galois entries failing the invariant, or witnesses failing recomputation.
    pub fn check_failures(&self) -> usize {
        self.entries
            .iter()
            .filter(|e| {
                e.invariant_ok == Some(false)
                    || e.witness_verified == Some(false)
                    || e.verdict.cross_check == Some(false)
            })
            .count()
    }
}

fn undecided(log: Vec<String>) -> GaloisVerdict {
    GaloisVerdict {
        status: VerdictStatus::Undecided,
        certificate: None,
        stage: None,
        constants_degree: None,
        cross_check: None,
        log,
    }
}

pub fn decide_point(
    curve: &PlaneCurve,
    info: &Arc<SingularInfo>,
    point: &ProjPoint,
    policy: &Policy,
) -> CensusEntry {
    let start = Instant::now();
    let mut entry = CensusEntry {
        point: point.clone(),
        degree: None,
        verdict: undecided(Vec::new()),
        invariant_ok: None,
        witness_verified: None,
        error: None,
        seconds: 0.0,
    };
    let run = |entry: &mut CensusEntry| -> Result<(), ProbeError> {
        let model = make_projection_with(curve, point, info)?;
        entry.degree = Some(model.degree());
        entry.verdict = galois_decide(&model, policy)?;
        match &entry.verdict.certificate {
            Some(Certificate::Deck(_)) | Some(Certificate::Norm(_)) => {
                entry.invariant_ok = Some(fact_invariant(&model)?);
            }
            Some(Certificate::Fiber(w)) => {
                // out of reach leaves the witness unverified rather than the point undecided
                entry.witness_verified = match verify_witness(curve, point, w) {
                    Ok(b) => Some(b),
                    Err(ProbeError::IncompleteBranchLocus { .. }) => None,
                    Err(e) => return Err(e),
                };
            }
            _ => {}
        }
        Ok(())
    };
    if let Err(e) = run(&mut entry) {
        entry.verdict = undecided(vec![format!("error: {e}")]);
        entry.error = Some(e.to_string());
    }
    entry.seconds = start.elapsed().as_secs_f64();
    entry
}

pub fn match_prediction(pred: Option<&Prediction>, entries: &[CensusEntry]) -> PredictionMatch {
    let undecided = entries
        .iter()
        .filter(|e| e.verdict.status == VerdictStatus::Undecided)
        .count();
    let mut m = PredictionMatch {
        status: MatchStatus::NotApplicable,
        decisive: undecided == 0,
        notes: Vec::new(),
    };
    let Some(pred) = pred else {
        m.notes.push("no prediction for this specification".into());
        return m;
    };
    let galois: Vec<&ProjPoint> = entries
        .iter()
        .filter(|e| e.verdict.status == VerdictStatus::GaloisCertified)
        .map(|e| &e.point)
        .collect();
    let mut bad = false;
    if let Some(set) = &pred.galois_set {
        for p in &galois {
            if !set.contains(p) {
                bad = true;
                m.notes.push(format!("{p} is Galois but not predicted"));
            }
        }
        for p in set {
            match entries.iter().find(|e| &e.point == p) {
                Some(e) if e.verdict.status == VerdictStatus::NotGaloisCertified => {
                    bad = true;
                    m.notes
                        .push(format!("{p} is predicted but certified not Galois"));
                }
                Some(_) => {}
                None => m
                    .notes
                    .push(format!("{p} is predicted but not among the candidates")),
            }
        }
    }
    let found = galois.len();
    if found + undecided < pred.delta_prime_at_least {
        bad = true;
        m.notes.push(format!(
            "{found} Galois points (+{undecided} undecided) below the bound {}",
            pred.delta_prime_at_least
        ));
    }
    m.status = if bad {
        MatchStatus::Mismatched
    } else {
        MatchStatus::Matched
    };
    m
}

pub fn run_census(
    spec: &FamilySpec,
    fields: &[usize],
    policy: &Policy,
) -> Result<Census, CensusError> {
    validate_spec(spec).map_err(FamilyError::Invalid)?;
    let start = Instant::now();
    let curve = build_curve(spec)?;
    let info = Arc::new(singular_info(&curve)?);
    let singular_seconds = start.elapsed().as_secs_f64();
    let cands = candidates(&curve, fields)?;
    let entries: Vec<CensusEntry> = cands
        .points
        .par_iter()
        .map(|p| decide_point(&curve, &info, p, policy))
        .collect();
    let prediction = match predicted_profile(spec) {
        Ok(p) => Some(p),
        Err(FamilyError::NotApplicable(_)) => None,
        Err(e) => return Err(e.into()),
    };
    let matching = match_prediction(prediction.as_ref(), &entries);
    Ok(Census {
        spec: spec.clone(),
        curve,
        policy: policy.clone(),
        candidates: cands,
        entries,
        prediction,
        matching,
        singular_seconds,
        total_seconds: start.elapsed().as_secs_f64(),
    })
}
