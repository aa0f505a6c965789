use super::norm::NormOutcome;
use super::{
    branch_locus_screen, deck_certificate, norm_split_test, FiberProfile, NormCertificate,
    NormOptions,
};
use super::{ProbeError, ProjectionModel, ScreenOutcome};
use crate::curve::GroupCertificate;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Stage {
    Screens,
    Deck,
    Norm,
}

impl Stage {
    pub fn name(self) -> &'static str {
        match self {
            Stage::Screens => "screens",
            Stage::Deck => "deck",
            Stage::Norm => "norm",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Policy {
    pub stages: Vec<Stage>,
    pub seed: u64,
    pub norm: NormOptions,
    /// Also run the norm test after a deck certificate and compare.
    pub cross_check: bool,
}

impl Default for Policy {
    fn default() -> Self {
        Policy {
            stages: vec![Stage::Screens, Stage::Deck, Stage::Norm],
            seed: 0,
            norm: NormOptions::default(),
            cross_check: false,
        }
    }
}

impl Policy {
    /// `full`, or stage names joined by `+` or `,` (e.g. `screens+deck`).
    pub fn parse_stages(s: &str) -> Result<Vec<Stage>, String> {
        if s == "full" || s == "default" {
            return Ok(vec![Stage::Screens, Stage::Deck, Stage::Norm]);
        }
        let mut out = Vec::new();
        for part in s.split(['+', ',']).map(str::trim).filter(|p| !p.is_empty()) {
            let st = match part {
                "screens" | "screen" => Stage::Screens,
                "deck" => Stage::Deck,
                "norm" => Stage::Norm,
                other => return Err(format!("unknown stage '{other}'")),
            };
            if !out.contains(&st) {
                out.push(st);
            }
        }
        if out.is_empty() {
            return Err("empty policy".into());
        }
        Ok(out)
    }

    pub fn describe(&self) -> String {
        self.stages
            .iter()
            .map(|s| s.name())
            .collect::<Vec<_>>()
            .join("+")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerdictStatus {
    GaloisCertified,
    NotGaloisCertified,
    Undecided,
}

impl VerdictStatus {
    pub fn name(self) -> &'static str {
        match self {
            VerdictStatus::GaloisCertified => "galois",
            VerdictStatus::NotGaloisCertified => "not_galois",
            VerdictStatus::Undecided => "undecided",
        }
    }
}

#[derive(Clone, Debug)]
pub enum Certificate {
    /// `n` deck transformations.
    Deck(GroupCertificate),
    /// The norm splits into factors of degree `n`.
    Norm(NormCertificate),
    /// A fiber with unequal ramification indices (or one not dividing `n`).
    Fiber(Box<FiberProfile>),
    /// An absolutely irreducible norm factor of degree above `n`.
    NormFactor(NormCertificate),
    /// The extension is inseparable.
    Inseparable,
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::Deck(_) => "deck",
            Certificate::Norm(_) => "norm_split",
            Certificate::Fiber(_) => "fiber_witness",
            Certificate::NormFactor(_) => "norm_factor",
            Certificate::Inseparable => "inseparable",
        }
    }
}

#[derive(Clone, Debug)]
pub struct GaloisVerdict {
    pub status: VerdictStatus,
    pub certificate: Option<Certificate>,
    pub stage: Option<Stage>,
    /// Absolute degree of the constant field the certificate was found over.
    pub constants_degree: Option<usize>,
    /// Agreement of the norm test with a deck certificate, when both ran.
    pub cross_check: Option<bool>,
    pub log: Vec<String>,
}

impl GaloisVerdict {
    fn decided(
        status: VerdictStatus,
        cert: Certificate,
        stage: Stage,
        k: usize,
        log: Vec<String>,
    ) -> GaloisVerdict {
        GaloisVerdict {
            status,
            certificate: Some(cert),
            stage: Some(stage),
            constants_degree: Some(k),
            cross_check: None,
            log,
        }
    }
}

/// Screens, then deck maps, then the norm test (in the policy's order);
/// the first certified answer wins.
pub fn galois_decide(
    model: &ProjectionModel,
    policy: &Policy,
) -> Result<GaloisVerdict, ProbeError> {
    let mut log = Vec::new();
    let k = model.field().degree();
    for &stage in &policy.stages {
        match stage {
            Stage::Screens => match branch_locus_screen(model)? {
                ScreenOutcome::Reject(w) => {
                    log.push(format!(
                        "screens: non-uniform fiber over {}",
                        w.base.describe()
                    ));
                    return Ok(GaloisVerdict::decided(
                        VerdictStatus::NotGaloisCertified,
                        Certificate::Fiber(w),
                        stage,
                        k,
                        log,
                    ));
                }
                ScreenOutcome::Inseparable => {
                    log.push("screens: inseparable".into());
                    return Ok(GaloisVerdict::decided(
                        VerdictStatus::NotGaloisCertified,
                        Certificate::Inseparable,
                        stage,
                        k,
                        log,
                    ));
                }
                ScreenOutcome::Pass {
                    complete,
                    fibers_checked,
                } => {
                    log.push(format!(
                        "screens: pass ({fibers_checked} fibers, complete={complete})"
                    ));
                }
            },
            Stage::Deck => match deck_certificate(model, policy.seed)? {
                Some(g) => {
                    log.push(format!(
                        "deck: {} maps over degree {}",
                        g.order,
                        g.field.degree()
                    ));
                    let kd = g.field.degree();
                    let mut v = GaloisVerdict::decided(
                        VerdictStatus::GaloisCertified,
                        Certificate::Deck(g),
                        stage,
                        kd,
                        log,
                    );
                    if policy.cross_check {
                        let out = norm_split_test(
                            model,
                            &NormOptions {
                                seed: policy.seed,
                                ..policy.norm.clone()
                            },
                        )?;
                        v.cross_check = match out {
                            NormOutcome::Galois(_) => Some(true),
                            NormOutcome::NotGalois(_) => Some(false),
                            NormOutcome::Undecided(_) => None,
                        };
                        v.log.push(format!("cross-check: {:?}", v.cross_check));
                    }
                    return Ok(v);
                }
                None => log.push("deck: no full set of affine deck maps".into()),
            },
            Stage::Norm => {
                let opts = NormOptions {
                    seed: policy.seed,
                    ..policy.norm.clone()
                };
                match norm_split_test(model, &opts)? {
                    NormOutcome::Galois(c) => {
                        log.push(format!(
                            "norm: {} factors of degree {}",
                            c.y_degrees.len(),
                            model.degree()
                        ));
                        let kd = c.constants_degree;
                        return Ok(GaloisVerdict::decided(
                            VerdictStatus::GaloisCertified,
                            Certificate::Norm(c),
                            stage,
                            kd,
                            log,
                        ));
                    }
                    NormOutcome::NotGalois(c) => {
                        log.push(format!("norm: factor degrees {:?}", c.y_degrees));
                        let kd = c.constants_degree;
                        return Ok(GaloisVerdict::decided(
                            VerdictStatus::NotGaloisCertified,
                            Certificate::NormFactor(c),
                            stage,
                            kd,
                            log,
                        ));
                    }
                    NormOutcome::Undecided(why) => log.push(format!("norm: undecided ({why})")),
                }
            }
        }
    }
    Ok(GaloisVerdict {
        status: VerdictStatus::Undecided,
        certificate: None,
        stage: None,
        constants_degree: None,
        cross_check: None,
        log,
    })
}

/// Equal indices dividing `n` over every fiber the local data pins down;
/// must hold for every Galois projection.
pub fn fact_invariant(model: &ProjectionModel) -> Result<bool, ProbeError> {
    Ok(!branch_locus_screen(model)?.is_reject())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::ProjPoint;
    use crate::family::{build_curve, FamilySpec};
    use crate::probe::make_projection;

    #[test]
    fn stage_names_round_trip() {
        let p = Policy::default();
        assert_eq!(Policy::parse_stages("full").unwrap(), p.stages);
        let s = Policy::parse_stages("screens+deck").unwrap();
        assert_eq!(s, vec![Stage::Screens, Stage::Deck]);
        assert!(Policy::parse_stages("screens+nonsense").is_err());
    }

    #[test]
    fn decide_both_ways() {
        let c = build_curve(&FamilySpec::standard(3, 1, 2, 2, 1, 0).unwrap()).unwrap();
        let f = c.field().clone();
        let axis = make_projection(&c, &ProjPoint::from_ints(&f, [1, 0, 0]).unwrap()).unwrap();
        let v = galois_decide(&axis, &Policy::default()).unwrap();
        assert_eq!(v.status, VerdictStatus::GaloisCertified);
        assert!(fact_invariant(&axis).unwrap());
        let off = make_projection(&c, &ProjPoint::from_ints(&f, [1, 1, 1]).unwrap()).unwrap();
        let v = galois_decide(&off, &Policy::default()).unwrap();
        assert_eq!(v.status, VerdictStatus::NotGaloisCertified);
    }
}
