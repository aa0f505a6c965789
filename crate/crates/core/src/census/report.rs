//! JSON form of a census.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Census, CensusEntry, CensusError, Chart, SpecFile};
use crate::curve::{GroupCertificate, ProjPoint};
use crate::family::{GenusPrediction, Prediction, TheoremCase};
use crate::ff::{Elem, Field};
use crate::probe::Certificate;

pub const SCHEMA_VERSION: u32 = 1;

/// A point over `F_{p^degree}`; each coordinate is given by its
/// power-basis coordinates in that field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointRecord {
    pub degree: usize,
    pub coords: [Vec<u64>; 3],
    pub text: String,
}

impl PointRecord {
    pub fn new(p: &ProjPoint) -> Result<PointRecord, CensusError> {
        let p = super::minimal_point(p)?;
        let f = p.field();
        Ok(PointRecord {
            degree: f.degree(),
            coords: p.coords().map(|c| f.coords(c)),
            text: p.to_string(),
        })
    }

    /// Rebuilds the point in the tower of `base`.
    pub fn point(&self, base: &Field) -> Result<ProjPoint, CensusError> {
        let f = base.tower().field(self.degree)?;
        let mut c = [Elem::ZERO; 3];
        for (slot, v) in c.iter_mut().zip(&self.coords) {
            *slot = f.from_coords(v)?;
        }
        Ok(ProjPoint::new(&f, c)?)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Seeds {
    pub tower: u64,
    pub policy: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CandidateTotals {
    pub enumerated: usize,
    pub on_curve: usize,
    pub censused: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CandidateRecord {
    pub fields: Vec<usize>,
    pub charts: BTreeMap<String, usize>,
    pub totals: CandidateTotals,
}

pub type Matrix = [[Vec<u64>; 3]; 3];

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CertificateRecord {
    Deck {
        order: usize,
        field_degree: usize,
        /// Row-major, each entry as coordinates over `F_{p^field_degree}`.
        matrices: Vec<Matrix>,
    },
    NormSplit {
        y_degrees: Vec<usize>,
        constants_degree: usize,
        reconstructs: bool,
    },
    FiberWitness {
        base: String,
        multiplicities: Vec<usize>,
        ramification: Option<Vec<usize>>,
    },
    NormFactor {
        y_degrees: Vec<usize>,
        constants_degree: usize,
    },
    Inseparable,
}

impl CertificateRecord {
    pub fn kind(&self) -> &'static str {
        match self {
            CertificateRecord::Deck { .. } => "deck",
            CertificateRecord::NormSplit { .. } => "norm_split",
            CertificateRecord::FiberWitness { .. } => "fiber_witness",
            CertificateRecord::NormFactor { .. } => "norm_factor",
            CertificateRecord::Inseparable => "inseparable",
        }
    }

    /// The saved deck group, rebuilt in the tower of `base`.
    pub fn deck_group(
        &self,
        base: &Field,
        center: &ProjPoint,
    ) -> Result<Option<GroupCertificate>, CensusError> {
        let CertificateRecord::Deck {
            order,
            field_degree,
            matrices,
        } = self
        else {
            return Ok(None);
        };
        let f = base.tower().field(*field_degree)?;
        let mut ms = Vec::new();
        for m in matrices {
            let mut out = [[Elem::ZERO; 3]; 3];
            for (i, row) in m.iter().enumerate() {
                for (j, c) in row.iter().enumerate() {
                    out[i][j] = f.from_coords(c)?;
                }
            }
            ms.push(out);
        }
        Ok(Some(GroupCertificate {
            center: center.embed(&f)?,
            field: f,
            matrices: ms,
            order: *order,
        }))
    }

    fn new(c: &Certificate) -> CertificateRecord {
        match c {
            Certificate::Deck(g) => CertificateRecord::Deck {
                order: g.order,
                field_degree: g.field.degree(),
                matrices: g
                    .matrices
                    .iter()
                    .map(|m| m.map(|r| r.map(|c| g.field.coords(c))))
                    .collect(),
            },
            Certificate::Norm(n) => CertificateRecord::NormSplit {
                y_degrees: n.y_degrees.clone(),
                constants_degree: n.constants_degree,
                reconstructs: n.reconstructs(),
            },
            Certificate::Fiber(w) => CertificateRecord::FiberWitness {
                base: w.base.describe(),
                multiplicities: w.multiplicities.clone(),
                ramification: w.ramification.clone(),
            },
            Certificate::NormFactor(n) => CertificateRecord::NormFactor {
                y_degrees: n.y_degrees.clone(),
                constants_degree: n.constants_degree,
            },
            Certificate::Inseparable => CertificateRecord::Inseparable,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerdictRecord {
    pub point: PointRecord,
    pub status: String,
    pub degree: Option<usize>,
    pub stage: Option<String>,
    pub certificate: Option<CertificateRecord>,
    pub constants_degree: Option<usize>,
    pub invariant_ok: Option<bool>,
    pub witness_verified: Option<bool>,
    pub cross_check: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl VerdictRecord {
    pub fn new(e: &CensusEntry) -> Result<VerdictRecord, CensusError> {
        let v = &e.verdict;
        Ok(VerdictRecord {
            point: PointRecord::new(&e.point)?,
            status: v.status.name().into(),
            degree: e.degree,
            stage: v.stage.map(|s| s.name().into()),
            certificate: v.certificate.as_ref().map(CertificateRecord::new),
            constants_degree: v.constants_degree,
            invariant_ok: e.invariant_ok,
            witness_verified: e.witness_verified,
            cross_check: v.cross_check,
            error: e.error.clone(),
        })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PredictionRecord {
    pub case: String,
    pub genus: i64,
    pub genus_exact: bool,
    pub delta_prime_at_least: usize,
    pub delta_prime_exact: bool,
    pub galois_set: Option<Vec<PointRecord>>,
    pub singular_points: Vec<PointRecord>,
    /// Coordinates of the scale `c` bringing the linear coefficient to -1.
    pub rescaling: Option<Vec<u64>>,
}

impl PredictionRecord {
    pub fn new(p: &Prediction, base: &Field) -> Result<PredictionRecord, CensusError> {
        let pts = |v: &[ProjPoint]| {
            v.iter()
                .map(PointRecord::new)
                .collect::<Result<Vec<_>, _>>()
        };
        Ok(PredictionRecord {
            case: match p.case {
                TheoremCase::Universal => "universal".into(),
                TheoremCase::D => "d".into(),
                TheoremCase::E { q0_equals_q: true } => "e_full".into(),
                TheoremCase::E { q0_equals_q: false } => "e_partial".into(),
            },
            genus: p.genus.value(),
            genus_exact: matches!(p.genus, GenusPrediction::Exact(_)),
            delta_prime_at_least: p.delta_prime_at_least,
            delta_prime_exact: p.delta_prime_exact,
            galois_set: p.galois_set.as_deref().map(pts).transpose()?,
            singular_points: pts(&p.singular_points)?,
            rescaling: p.rescaling.map(|c| base.coords(c)),
        })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatchRecord {
    pub status: String,
    pub decisive: bool,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Timings {
    pub singular_locus_seconds: f64,
    pub total_seconds: f64,
    /// Per verdict, in the order of `verdicts`.
    pub per_point_seconds: Vec<f64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CensusReport {
    pub schema_version: u32,
    pub spec: SpecFile,
    pub seeds: Seeds,
    pub policy: String,
    pub budget: usize,
    pub candidates: CandidateRecord,
    pub verdicts: Vec<VerdictRecord>,
    pub delta_prime: usize,
    pub galois_set: Vec<PointRecord>,
    pub undecided: usize,
    pub check_failures: usize,
    pub prediction: Option<PredictionRecord>,
    #[serde(rename = "match")]
    pub matching: MatchRecord,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

pub fn census_report(
    c: &Census,
    spec: &SpecFile,
    timings: bool,
) -> Result<CensusReport, CensusError> {
    let mut charts = BTreeMap::new();
    for ch in [Chart::Z, Chart::Y, Chart::X] {
        charts.insert(ch.name().to_string(), 0);
    }
    for p in &c.candidates.points {
        *charts.entry(Chart::of(p).name().to_string()).or_default() += 1;
    }
    let verdicts = c
        .entries
        .iter()
        .map(VerdictRecord::new)
        .collect::<Result<Vec<_>, _>>()?;
    let galois_set = c
        .galois_points()
        .iter()
        .map(PointRecord::new)
        .collect::<Result<Vec<_>, _>>()?;
    Ok(CensusReport {
        schema_version: SCHEMA_VERSION,
        spec: spec.clone(),
        seeds: Seeds {
            tower: spec.seed.unwrap_or(0),
            policy: c.policy.seed,
        },
        policy: c.policy.describe(),
        budget: c.policy.norm.budget,
        candidates: CandidateRecord {
            fields: c.candidates.fields.clone(),
            charts,
            totals: CandidateTotals {
                enumerated: c.candidates.enumerated,
                on_curve: c.candidates.on_curve,
                censused: c.candidates.points.len(),
            },
        },
        verdicts,
        delta_prime: c.delta_prime(),
        galois_set,
        undecided: c.undecided(),
        check_failures: c.check_failures(),
        prediction: c
            .prediction
            .as_ref()
            .map(|p| PredictionRecord::new(p, &c.spec.field))
            .transpose()?,
        matching: MatchRecord {
            status: c.matching.status.name().into(),
            decisive: c.matching.decisive,
            notes: c.matching.notes.clone(),
        },
        timings: timings.then(|| Timings {
            singular_locus_seconds: c.singular_seconds,
            total_seconds: c.total_seconds,
            per_point_seconds: c.entries.iter().map(|e| e.seconds).collect(),
        }),
    })
}
