//! Re-deciding a saved census from its specification.

use std::collections::HashSet;
use std::sync::Arc;

use rayon::prelude::*;

use super::report::{CensusReport, PointRecord, SCHEMA_VERSION};
use super::{candidates, decide_point, CensusError, SpecFile};
use crate::curve::verify_group;
use crate::family::build_curve;
use crate::probe::{singular_info, NormOptions, Policy};

#[derive(Clone, Debug, Default)]
pub struct RecheckSummary {
    pub checked: usize,
    pub agreed: usize,
    pub problems: Vec<String>,
}

impl RecheckSummary {
    pub fn ok(&self) -> bool {
        self.problems.is_empty() && self.checked == self.agreed
    }
}

pub fn policy_of(report: &CensusReport) -> Result<Policy, CensusError> {
    Ok(Policy {
        stages: Policy::parse_stages(&report.policy).map_err(CensusError::Report)?,
        seed: report.seeds.policy,
        norm: NormOptions {
            budget: report.budget,
            ..NormOptions::default()
        },
        cross_check: report.verdicts.iter().any(|v| v.cross_check.is_some()),
    })
}

pub fn recheck(spec: &SpecFile, report: &CensusReport) -> Result<RecheckSummary, CensusError> {
    if report.schema_version != SCHEMA_VERSION {
        return Err(CensusError::Report(format!(
            "schema version {} (expected {SCHEMA_VERSION})",
            report.schema_version
        )));
    }
    if &report.spec != spec {
        return Err(CensusError::Report(
            "the report was made for a different specification".into(),
        ));
    }
    let fam = spec.to_family()?;
    let curve = build_curve(&fam)?;
    let info = Arc::new(singular_info(&curve)?);
    let policy = policy_of(report)?;
    let mut out = RecheckSummary::default();

    let expected: HashSet<(usize, [Vec<u64>; 3])> = candidates(&curve, &report.candidates.fields)?
        .points
        .iter()
        .map(|p| PointRecord::new(p).map(|r| (r.degree, r.coords)))
        .collect::<Result<_, _>>()?;
    let listed: HashSet<(usize, [Vec<u64>; 3])> = report
        .verdicts
        .iter()
        .map(|v| (v.point.degree, v.point.coords.clone()))
        .collect();
    if expected != listed || listed.len() != report.verdicts.len() {
        out.problems.push(format!(
            "candidate set differs: {} expected, {} listed",
            expected.len(),
            report.verdicts.len()
        ));
    }

    let results: Vec<Result<Option<String>, CensusError>> = report
        .verdicts
        .par_iter()
        .map(|v| {
            let p = v.point.point(&fam.field)?;
            let e = decide_point(&curve, &info, &p, &policy);
            let kind = e.verdict.certificate.as_ref().map(|c| c.kind());
            let saved = v.certificate.as_ref().map(|c| c.kind());
            if e.verdict.status.name() != v.status || kind != saved {
                return Ok(Some(format!(
                    "{}: saved {} ({:?}), now {} ({:?})",
                    v.point.text,
                    v.status,
                    saved,
                    e.verdict.status.name(),
                    kind
                )));
            }
            if e.witness_verified == Some(false) || e.invariant_ok == Some(false) {
                return Ok(Some(format!("{}: certificate check failed", v.point.text)));
            }
            // the saved matrices themselves, not just the recomputed ones
            if let Some(g) = v
                .certificate
                .as_ref()
                .map(|c| c.deck_group(&fam.field, &p))
                .transpose()?
                .flatten()
            {
                if let Err(why) = verify_group(&g, &curve) {
                    return Ok(Some(format!(
                        "{}: saved deck group invalid: {why}",
                        v.point.text
                    )));
                }
            }
            Ok(None)
        })
        .collect();
    for r in results {
        out.checked += 1;
        match r? {
            None => out.agreed += 1,
            Some(msg) => out.problems.push(msg),
        }
    }
    let galois = report
        .verdicts
        .iter()
        .filter(|v| v.status == "galois")
        .count();
    if galois != report.delta_prime || report.galois_set.len() != galois {
        out.problems.push(format!(
            "delta_prime {} but {galois} Galois verdicts",
            report.delta_prime
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::{census_report, run_census};

    #[test]
    fn recheck_catches_tampering() {
        let spec = SpecFile::standard(3, 1, 2, 2, 1);
        let c = run_census(&spec.to_family().unwrap(), &[1], &Policy::default()).unwrap();
        let mut report = census_report(&c, &spec, false).unwrap();
        assert!(recheck(&spec, &report).unwrap().ok());
        let v = report
            .verdicts
            .iter_mut()
            .find(|v| v.status == "galois")
            .unwrap();
        v.status = "not_galois".into();
        let r = recheck(&spec, &report).unwrap();
        assert!(!r.ok());
        assert_eq!(r.problems.len(), 2, "{:?}", r.problems);
        let other = SpecFile::standard(3, 1, 2, 1, 1);
        assert!(recheck(&other, &report).is_err());
    }
}
