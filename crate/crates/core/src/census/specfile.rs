//! Curve specification files (TOML).
//!
//! ```toml
//! p = 3
//! e = 1
//! ell = 2
//! field_degree = 1     # optional: coefficients live in F_{p^field_degree}
//! modulus = [2, 2, 1]  # optional: monic modulus of that field, constant term first
//! seed = 0             # optional: tower seed
//! g1_coeffs = [-1]     # alpha_0 .. alpha_{e-1}
//! g2_coeffs = [-1]     # beta_0 .. beta_{e-1}
//! lambda = 2
//! mu = 1
//! ```
//!
//! A field element is an integer (read in `F_p`) or an array of integers,
//! its coordinates `[c0, c1, ...]` in the power basis `c0 + c1 u + ...` of
//! the coefficient field.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::family::{AdditivePoly, FamilySpec};
use crate::ff::{Elem, Field, FieldError, Tower};

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("{0}")]
    Parse(String),
    #[error("{key}: {msg}")]
    Value { key: String, msg: String },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("cannot read {path}: {msg}")]
    Io { path: String, msg: String },
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum ElemSpec {
    Int(i64),
    Coords(Vec<i64>),
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    pub p: u64,
    pub e: usize,
    pub ell: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field_degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub g1_coeffs: Vec<ElemSpec>,
    pub g2_coeffs: Vec<ElemSpec>,
    pub lambda: ElemSpec,
    pub mu: ElemSpec,
}

pub fn parse_spec(text: &str) -> Result<SpecFile, SpecError> {
    toml::from_str(text).map_err(|e| SpecError::Parse(e.to_string()))
}

pub fn read_spec(path: &std::path::Path) -> Result<SpecFile, SpecError> {
    let text = std::fs::read_to_string(path).map_err(|e| SpecError::Io {
        path: path.display().to_string(),
        msg: e.to_string(),
    })?;
    parse_spec(&text)
}

fn elem(field: &Field, key: &str, v: &ElemSpec) -> Result<Elem, SpecError> {
    match v {
        ElemSpec::Int(i) => Ok(field.from_i64(*i)),
        ElemSpec::Coords(c) => {
            if c.len() > field.degree() {
                return Err(SpecError::Value {
                    key: key.into(),
                    msg: format!(
                        "{} coordinates for a field of degree {}",
                        c.len(),
                        field.degree()
                    ),
                });
            }
            Ok(field.from_signed_coords(c)?)
        }
    }
}

impl SpecFile {
    /// The coefficient field described by `field_degree`, `modulus`, `seed`.
    pub fn field(&self) -> Result<Field, SpecError> {
        let k = self.field_degree.unwrap_or(1);
        let seed = self.seed.unwrap_or(0);
        let tower = match &self.modulus {
            Some(m) => {
                if m.len() != k + 1 {
                    return Err(SpecError::Value {
                        key: "modulus".into(),
                        msg: format!("expected {} coefficients for degree {k}", k + 1),
                    });
                }
                Tower::pinned(self.p, seed, m.clone())?
            }
            None => Tower::seeded(self.p, seed)?,
        };
        Ok(tower.field(k)?)
    }

    pub fn to_family(&self) -> Result<FamilySpec, SpecError> {
        let f = self.field()?;
        let coeffs = |key: &str, v: &[ElemSpec]| -> Result<Vec<Elem>, SpecError> {
            if v.len() != self.e {
                return Err(SpecError::Value {
                    key: key.into(),
                    msg: format!("expected e = {} coefficients, got {}", self.e, v.len()),
                });
            }
            v.iter().map(|x| elem(&f, key, x)).collect()
        };
        Ok(FamilySpec {
            ell: self.ell,
            g1: AdditivePoly::new(&f, coeffs("g1_coeffs", &self.g1_coeffs)?),
            g2: AdditivePoly::new(&f, coeffs("g2_coeffs", &self.g2_coeffs)?),
            lambda: elem(&f, "lambda", &self.lambda)?,
            mu: elem(&f, "mu", &self.mu)?,
            field: f,
        })
    }

    /// The desk family `(x^q - x)^l + lambda (y^q - y)^l + mu` over `F_p`.
    pub fn standard(p: u64, e: usize, ell: usize, lambda: i64, mu: i64) -> SpecFile {
        let mut g = vec![ElemSpec::Int(0); e];
        g[0] = ElemSpec::Int(-1);
        SpecFile {
            p,
            e,
            ell,
            field_degree: None,
            modulus: None,
            seed: None,
            g1_coeffs: g.clone(),
            g2_coeffs: g,
            lambda: ElemSpec::Int(lambda),
            mu: ElemSpec::Int(mu),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_builds() {
        let s = parse_spec(
            "p = 3\ne = 1\nell = 2\ng1_coeffs = [-1]\ng2_coeffs = [[2]]\nlambda = 2\nmu = 1\n",
        )
        .unwrap();
        let fam = s.to_family().unwrap();
        assert_eq!(fam.g1, fam.g2);
        assert_eq!(fam.degree(), 6);
        let std = SpecFile::standard(3, 1, 2, 2, 1).to_family().unwrap();
        assert_eq!(std.g1, fam.g1);
        assert_eq!(std.lambda, fam.lambda);
    }

    #[test]
    fn reports_position() {
        let err = parse_spec("p = 3\ne = \nell = 2").unwrap_err().to_string();
        assert!(err.contains("line 2"), "{err}");
        let err = parse_spec(
            "p = 3\ne = 1\nell = 2\ng1_coeffs = [-1]\ng2_coeffs = [-1]\nlambda = 2\nmu = 1\nnu = 4",
        )
        .unwrap_err()
        .to_string();
        assert!(err.contains("nu"), "{err}");
    }

    #[test]
    fn extension_coefficients() {
        let s = parse_spec(
            "p = 3\ne = 2\nell = 4\nfield_degree = 2\ng1_coeffs = [[0, 1], 0]\ng2_coeffs = [1, 0]\nlambda = [1, 1]\nmu = 1\n",
        )
        .unwrap();
        let fam = s.to_family().unwrap();
        assert_eq!(fam.field.degree(), 2);
        assert_eq!(fam.g1.coeff(0), fam.field.from_coords(&[0, 1]).unwrap());
    }
}
