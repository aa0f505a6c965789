//! The `galpt` subcommands. Each returns a JSON document, a human summary
//! and an exit status: 0 matched, 2 mismatch, 3 undecided entries.

use std::sync::Arc;

use serde_json::{json, Value};

use super::report::{census_report, PointRecord, PredictionRecord};
use super::{decide_point, run_census, CensusError, MatchStatus, SpecFile};
use crate::curve::{fmt_elem, PlaneCurve, ProjPoint};
use crate::family::{
    axis_galois_group, build_curve, family_constants, predicted_profile, validate_spec, Axis,
    FamilyError, FamilySpec, GenusPrediction, TheoremCase,
};
use crate::ff::{Elem, Field};
use crate::poly::absolutely_irreducible;
use crate::probe::{
    fiber_profile, galois_decide, make_projection_with, ramification_report, singular_info,
    BasePoint, Certificate, GenusValue, Policy, ProbeError, RamificationReport, SingularInfo,
    VerdictStatus,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_MISMATCH: i32 = 2;
pub const EXIT_UNDECIDED: i32 = 3;

#[derive(Debug)]
pub struct Outcome {
    pub json: Value,
    pub summary: String,
    pub exit: i32,
}

fn family(spec: &SpecFile) -> Result<FamilySpec, CensusError> {
    let fam = spec.to_family()?;
    validate_spec(&fam).map_err(FamilyError::Invalid)?;
    Ok(fam)
}

fn elem_json(f: &Field, a: Elem) -> Value {
    let d = f.min_subfield(a);
    json!({ "text": fmt_elem(f, a), "degree": d, "coords": f.coords(a) })
}

fn genus_json(g: &GenusValue) -> Value {
    match g {
        GenusValue::Exact(v) => json!({ "value": v, "exact": true }),
        GenusValue::AtLeast(v) => json!({ "value": v, "exact": false }),
    }
}

fn ram_json(r: &RamificationReport) -> Value {
    json!({
        "degree": r.degree,
        "tame": r.tame,
        "genus": genus_json(&r.genus),
        "fibers": r.fibers.iter().map(|f| json!({
            "base": f.profile.base.describe(),
            "conjugates": f.conjugates,
            "index": f.index,
            "wild": f.wild,
            "contribution": f.contribution,
            "exact": f.exact,
        })).collect::<Vec<_>>(),
    })
}

fn axis_genus(
    curve: &PlaneCurve,
    info: &Arc<SingularInfo>,
) -> Result<RamificationReport, CensusError> {
    let c = ProjPoint::from_ints(curve.field(), [1, 0, 0])?;
    let m = make_projection_with(curve, &c, info)?;
    Ok(ramification_report(&m)?)
}

fn singular_json(info: &SingularInfo) -> Result<Vec<Value>, CensusError> {
    info.points
        .iter()
        .map(|(p, cone)| {
            Ok(json!({
                "point": PointRecord::new(p)?,
                "multiplicity": cone.multiplicity,
                "tangent_directions": cone.distinct_directions(),
            }))
        })
        .collect()
}

pub fn info(spec: &SpecFile) -> Result<Outcome, CensusError> {
    let fam = family(spec)?;
    let curve = build_curve(&fam)?;
    let irreducible = absolutely_irreducible(&curve.affine()).map_err(ProbeError::from)?;
    let info = Arc::new(singular_info(&curve)?);
    let k = family_constants(&fam)?;
    let pred = predicted_profile(&fam)?;
    let ram = axis_genus(&curve, &info)?;
    let mut s = format!(
        "degree {}, absolutely irreducible: {irreducible}\n{} singular points:",
        curve.degree(),
        info.points.len()
    );
    for (p, cone) in &info.points {
        s += &format!(
            " {p} (mult {}, {} tangents)",
            cone.multiplicity,
            cone.distinct_directions()
        );
    }
    s += &format!(
        "\ngenus {} {}; q = {}, q0 = {}, alpha = {}, equality case: {}\npredicted: case {}, delta' {} {}",
        if matches!(ram.genus, GenusValue::Exact(_)) { "=" } else { ">=" },
        ram.genus.value(),
        k.q,
        k.q0,
        fmt_elem(&k.field, k.alpha),
        k.equality_case,
        case_name(&pred.case),
        if pred.delta_prime_exact { "=" } else { ">=" },
        pred.delta_prime_at_least,
    );
    let json = json!({
        "spec": spec,
        "degree": curve.degree(),
        "absolutely_irreducible": irreducible,
        "singular_points": singular_json(&info)?,
        "singular_locus_complete": info.complete,
        "genus": genus_json(&ram.genus),
        "constants": {
            "q": k.q,
            "q0": k.q0,
            "alpha": elem_json(&k.field, k.alpha),
            "alpha_in_fq0": k.alpha_in_fq0,
            "equality_case": k.equality_case,
        },
        "prediction": PredictionRecord::new(&pred, &fam.field)?,
    });
    Ok(Outcome {
        json,
        summary: s,
        exit: EXIT_OK,
    })
}

fn case_name(c: &TheoremCase) -> &'static str {
    match c {
        TheoremCase::Universal => "universal",
        TheoremCase::D => "d",
        TheoremCase::E { .. } => "e",
    }
}

pub fn census(
    spec: &SpecFile,
    fields: &[usize],
    policy: &Policy,
    timings: bool,
) -> Result<Outcome, CensusError> {
    let fam = family(spec)?;
    let c = run_census(&fam, fields, policy)?;
    let report = census_report(&c, spec, timings)?;
    let galois: Vec<String> = report.galois_set.iter().map(|p| p.text.clone()).collect();
    let summary = format!(
        "{} candidates ({} on the curve skipped); delta' = {} [{}]; {} undecided; {} check failures; prediction {}{}",
        report.candidates.totals.censused,
        report.candidates.totals.on_curve,
        report.delta_prime,
        galois.join(", "),
        report.undecided,
        report.check_failures,
        report.matching.status,
        if report.matching.decisive { "" } else { " (not decisive)" },
    );
    let exit = if c.matching.status == MatchStatus::Mismatched || c.check_failures() > 0 {
        EXIT_MISMATCH
    } else if c.undecided() > 0 {
        EXIT_UNDECIDED
    } else {
        EXIT_OK
    };
    Ok(Outcome {
        json: serde_json::to_value(&report).map_err(|e| CensusError::Report(e.to_string()))?,
        summary,
        exit,
    })
}

struct Check {
    name: String,
    status: &'static str,
    detail: String,
}

fn check(name: &str, ok: Option<bool>, detail: String) -> Check {
    Check {
        name: name.into(),
        status: match ok {
            Some(true) => "pass",
            Some(false) => "fail",
            None => "undecided",
        },
        detail,
    }
}

/// The checks of one case of the classification.
pub fn verify(
    spec: &SpecFile,
    case: char,
    fields: &[usize],
    policy: &Policy,
) -> Result<Outcome, CensusError> {
    let fam = family(spec)?;
    let curve = build_curve(&fam)?;
    let pred = predicted_profile(&fam)?;
    let k = family_constants(&fam)?;
    let mut checks = Vec::new();
    let mut applicable = true;
    match case {
        'a' => {
            let irr = absolutely_irreducible(&curve.affine()).map_err(ProbeError::from)?;
            checks.push(check("absolutely irreducible", Some(irr), String::new()));
            let info = singular_info(&curve)?;
            let mut got: Vec<ProjPoint> = info.points.iter().map(|(p, _)| p.clone()).collect();
            got.sort_by_key(|p| p.sort_key());
            let same = got.len() == pred.singular_points.len()
                && got.iter().all(|p| pred.singular_points.contains(p));
            checks.push(check(
                "singular points",
                Some(same && got.len() == fam.ell && info.complete),
                got.iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(" "),
            ));
        }
        'b' => {
            let info = Arc::new(singular_info(&curve)?);
            let ram = axis_genus(&curve, &info)?;
            let ok = match (&pred.genus, &ram.genus) {
                (GenusPrediction::Exact(a), GenusValue::Exact(b)) => a == b,
                (GenusPrediction::AtLeast(a), g) => g.value() >= *a,
                _ => false,
            };
            checks.push(check(
                "genus",
                Some(ok),
                format!("predicted {:?}, computed {:?}", pred.genus, ram.genus),
            ));
            let exact = matches!(ram.genus, GenusValue::Exact(_));
            checks.push(check(
                "equality case consistency",
                Some(!k.equality_case || exact),
                format!("equality case {}, exact genus {exact}", k.equality_case),
            ));
        }
        'c' => {
            let order = (k.q as usize) * fam.ell;
            for axis in [Axis::X, Axis::Y] {
                let g = axis_galois_group(&fam, axis)?;
                let m = make_projection_with(&curve, &g.center, &Arc::new(singular_info(&curve)?))?;
                let v = galois_decide(&m, policy)?;
                let ok = v.status == VerdictStatus::GaloisCertified && g.order == order;
                checks.push(check(
                    &format!("axis point {}", g.center),
                    Some(ok),
                    format!(
                        "group order {} (expected {order}), verdict {}",
                        g.order,
                        v.status.name()
                    ),
                ));
            }
        }
        'd' | 'e' => {
            let hyp = matches!(
                (&pred.case, case),
                (TheoremCase::D, 'd') | (TheoremCase::E { .. }, 'e')
            );
            if !hyp {
                applicable = false;
                checks.push(Check {
                    name: "hypotheses".into(),
                    status: "not_applicable",
                    detail: format!(
                        "the specification falls under case {}",
                        case_name(&pred.case)
                    ),
                });
            } else {
                let cen = run_census(&fam, fields, policy)?;
                let undecided = cen.undecided();
                let found = cen.delta_prime();
                let ok = match cen.matching.status {
                    MatchStatus::Mismatched => Some(false),
                    _ if cen.check_failures() > 0 => Some(false),
                    _ if undecided > 0 => None,
                    _ => Some(true),
                };
                checks.push(check(
                    "outer Galois points",
                    ok,
                    format!(
                        "found {found} [{}], {undecided} undecided, predicted {} {}",
                        cen.galois_points()
                            .iter()
                            .map(ToString::to_string)
                            .collect::<Vec<_>>()
                            .join(" "),
                        if pred.delta_prime_exact {
                            "exactly"
                        } else {
                            "at least"
                        },
                        pred.delta_prime_at_least
                    ),
                ));
            }
        }
        other => return Err(CensusError::Report(format!("unknown case '{other}'"))),
    }
    let exit = if !applicable || checks.iter().any(|c| c.status == "fail") {
        EXIT_MISMATCH
    } else if checks.iter().any(|c| c.status == "undecided") {
        EXIT_UNDECIDED
    } else {
        EXIT_OK
    };
    let summary = checks
        .iter()
        .map(|c| format!("[{}] {}: {}", c.status, c.name, c.detail))
        .collect::<Vec<_>>()
        .join("\n");
    let json = json!({
        "spec": spec,
        "case": case.to_string(),
        "applicable": applicable,
        "checks": checks.iter().map(|c| json!({"name": c.name, "status": c.status, "detail": c.detail})).collect::<Vec<_>>(),
    });
    Ok(Outcome {
        json,
        summary,
        exit,
    })
}

/// `a:b:c`, each coordinate an integer or `[c0,c1,...]` over `F_{p^degree}`.
pub fn parse_point(
    text: &str,
    base: &Field,
    degree: Option<usize>,
) -> Result<ProjPoint, CensusError> {
    let parts: Vec<&str> = text.split(':').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(CensusError::Report(format!(
            "point '{text}' needs three coordinates a:b:c"
        )));
    }
    let mut coords = Vec::new();
    for p in &parts {
        let v: Vec<i64> = p
            .trim_start_matches('[')
            .trim_end_matches(']')
            .split(',')
            .map(|x| x.trim().parse::<i64>())
            .collect::<Result<_, _>>()
            .map_err(|e| CensusError::Report(format!("coordinate '{p}': {e}")))?;
        coords.push(v);
    }
    let longest = coords.iter().map(Vec::len).max().unwrap_or(1);
    let d = degree.unwrap_or_else(|| base.degree().max(longest));
    let f = base.tower().field(d)?;
    let mut c = [Elem::ZERO; 3];
    for (slot, v) in c.iter_mut().zip(&coords) {
        *slot = f.from_signed_coords(v)?;
    }
    Ok(ProjPoint::new(&f, c)?)
}

pub fn project(
    spec: &SpecFile,
    point: &str,
    degree: Option<usize>,
    report: &str,
    policy: &Policy,
) -> Result<Outcome, CensusError> {
    let fam = family(spec)?;
    let curve = build_curve(&fam)?;
    let center = parse_point(point, &fam.field, degree)?;
    let info = Arc::new(singular_info(&curve)?);
    let inner = curve.contains(&center)?;
    let model = make_projection_with(&curve, &center, &info)?;
    let n = model.degree();
    let mut summary = format!("center {center}: projection degree {n}");
    if inner {
        summary += " (warning: the center lies on the curve; inner point)";
    }
    let mut json = json!({
        "spec": spec,
        "center": PointRecord::new(&center)?,
        "inner": inner,
        "degree": n,
        "center_multiplicity": model.center_multiplicity(),
    });
    let mut exit = EXIT_OK;
    match report {
        "galois" => {
            let e = decide_point(&curve, &info, &center, policy);
            if let Some(err) = &e.error {
                summary += &format!("\nerror: {err}");
            }
            summary += &format!("\nverdict: {}", e.verdict.status.name());
            for l in &e.verdict.log {
                summary += &format!("\n  {l}");
            }
            json["verdict"] = serde_json::to_value(super::report::VerdictRecord::new(&e)?)
                .map_err(|e| CensusError::Report(e.to_string()))?;
            if let Some(Certificate::Deck(g)) = &e.verdict.certificate {
                let mats: Vec<Vec<Vec<String>>> = g
                    .matrices
                    .iter()
                    .map(|m| {
                        m.iter()
                            .map(|r| r.iter().map(|&c| fmt_elem(&g.field, c)).collect())
                            .collect()
                    })
                    .collect();
                for m in &mats {
                    summary += &format!("\n  {m:?}");
                }
                json["matrices"] = json!(mats);
            }
            if e.verdict.status == VerdictStatus::Undecided {
                exit = EXIT_UNDECIDED;
            }
        }
        "ram" => match ramification_report(&model) {
            Err(ProbeError::Inconsistent(why)) => {
                summary += &format!("\nno Galois ramification data: {why}");
                json["ramification"] = Value::Null;
                json["ramification_note"] = json!(why);
            }
            Err(e) => return Err(e.into()),
            Ok(r) => {
                summary += &format!(
                    "\ngenus {} {} ({} branch fibers, tame: {})",
                    if matches!(r.genus, GenusValue::Exact(_)) {
                        "="
                    } else {
                        ">="
                    },
                    r.genus.value(),
                    r.fibers.len(),
                    r.tame
                );
                json["ramification"] = ram_json(&r);
            }
        },
        "fibers" => {
            let k = model.field().clone();
            let mut fibers = Vec::new();
            let bases = std::iter::once(BasePoint::Infinity)
                .chain(k.elements().take(64).map(|t| BasePoint::finite(&k, t)));
            for b in bases {
                let pr = fiber_profile(&model, &b)?;
                summary += &format!(
                    "\n  {}: multiplicities {:?}, factor degrees {:?}, indices {:?}",
                    b.describe(),
                    pr.multiplicities,
                    pr.pattern,
                    pr.ramification
                );
                fibers.push(json!({
                    "base": b.describe(),
                    "multiplicities": pr.multiplicities,
                    "pattern": pr.pattern,
                    "meets_singular": pr.meets_sing,
                    "ramification": pr.ramification,
                }));
            }
            json["fibers"] = json!(fibers);
        }
        other => {
            return Err(CensusError::Report(format!(
                "unknown report '{other}' (ram, galois, fibers)"
            )))
        }
    }
    Ok(Outcome {
        json,
        summary,
        exit,
    })
}

pub fn recheck(spec: &SpecFile, report_text: &str) -> Result<Outcome, CensusError> {
    let report: super::CensusReport =
        serde_json::from_str(report_text).map_err(|e| CensusError::Report(e.to_string()))?;
    let r = super::recheck::recheck(spec, &report)?;
    let summary = format!(
        "{} of {} verdicts reproduced{}",
        r.agreed,
        r.checked,
        r.problems
            .iter()
            .map(|p| format!("\n  {p}"))
            .collect::<String>()
    );
    Ok(Outcome {
        json: json!({ "checked": r.checked, "agreed": r.agreed, "problems": r.problems }),
        summary,
        exit: if r.ok() { EXIT_OK } else { EXIT_MISMATCH },
    })
}
