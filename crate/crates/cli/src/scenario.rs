//! Scenario files: JSON with polynomials in the text grammar and rationals as
//! strings ("1", "-3/2").

use std::path::Path;

use fischer_core::domains::Point2;
use fischer_core::harmonic::NonnegativityCertificate;
use fischer_core::rational::parse_rational;
use fischer_core::{parse_polynomial, Polynomial, QuadraticOperator, Rational};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

pub const DEFAULT_M: u32 = 4;
pub const DEFAULT_N_MAX: u32 = 8;
pub const DEFAULT_SERIES_CUTOFF: u32 = 6;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Bounds {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_max: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub series_cutoff: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NonnegativitySpec {
    Asserted,
    SumOfSquares(Vec<(String, String)>),
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    #[serde(default)]
    pub name: String,
    pub dim: usize,
    /// Row-major; the Laplacian when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub operator: Option<Vec<Vec<String>>>,
    /// ψ in product form.
    #[serde(default)]
    pub psi: Vec<String>,
    #[serde(default)]
    pub targets: Vec<String>,
    #[serde(default)]
    pub bounds: Bounds,
    #[serde(default)]
    pub hints: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<[String; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub semiaxes: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nonnegativity: Option<NonnegativitySpec>,
}

impl Scenario {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Ok(serde_json::from_str(&text)?)
    }

    pub fn m(&self) -> u32 {
        self.bounds.m.unwrap_or(DEFAULT_M)
    }

    pub fn n_max(&self) -> u32 {
        self.bounds.n_max.unwrap_or(DEFAULT_N_MAX)
    }

    pub fn series_cutoff(&self) -> u32 {
        self.bounds.series_cutoff.unwrap_or(DEFAULT_SERIES_CUTOFF)
    }

    pub fn operator(&self) -> CliResult<QuadraticOperator> {
        match &self.operator {
            None => Ok(QuadraticOperator::laplacian(self.dim)),
            Some(rows) => {
                let op = QuadraticOperator::new(
                    rows.iter()
                        .map(|r| r.iter().map(|s| rational(s)).collect())
                        .collect::<CliResult<_>>()?,
                )?;
                if op.dim() != self.dim {
                    return Err(CliError::input(format!(
                        "operator is {0}x{0} but dim is {1}",
                        op.dim(),
                        self.dim
                    )));
                }
                Ok(op)
            }
        }
    }

    pub fn factors(&self) -> CliResult<Vec<Polynomial>> {
        self.psi.iter().map(|s| self.polynomial("psi factor", s)).collect()
    }

    /// Product of the factors.
    pub fn psi_product(&self) -> CliResult<Polynomial> {
        let factors = self.factors()?;
        if factors.is_empty() {
            return Err(CliError::input("scenario has no psi factors"));
        }
        Ok(factors.iter().fold(Polynomial::one(self.dim), |a, f| &a * f))
    }

    pub fn target_polys(&self) -> CliResult<Vec<Polynomial>> {
        self.targets.iter().map(|s| self.polynomial("target", s)).collect()
    }

    pub fn hint_points(&self) -> CliResult<Vec<Vec<Rational>>> {
        self.hints
            .iter()
            .map(|h| {
                if h.len() != self.dim {
                    return Err(CliError::input(format!(
                        "hint {h:?} has {} coordinates, dim is {}",
                        h.len(),
                        self.dim
                    )));
                }
                h.iter().map(|s| rational(s)).collect()
            })
            .collect()
    }

    pub fn vertex_points(&self) -> CliResult<Vec<Point2>> {
        let Some(vs) = &self.vertices else {
            return Err(CliError::input("scenario has no vertices"));
        };
        vs.iter()
            .map(|[a, b]| Ok([rational(a)?, rational(b)?]))
            .collect()
    }

    pub fn semiaxis_values(&self) -> CliResult<Option<Vec<Rational>>> {
        self.semiaxes
            .as_ref()
            .map(|v| v.iter().map(|s| rational(s)).collect())
            .transpose()
    }

    pub fn nonnegativity_certificate(&self) -> CliResult<Option<NonnegativityCertificate>> {
        Ok(match &self.nonnegativity {
            None => None,
            Some(NonnegativitySpec::Asserted) => Some(NonnegativityCertificate::Asserted),
            Some(NonnegativitySpec::SumOfSquares(terms)) => Some(NonnegativityCertificate::SumOfSquares(
                terms
                    .iter()
                    .map(|(c, g)| Ok((rational(c)?, self.polynomial("sum-of-squares term", g)?)))
                    .collect::<CliResult<_>>()?,
            )),
        })
    }

    pub fn polynomial(&self, what: &'static str, text: &str) -> CliResult<Polynomial> {
        parse_polynomial(text, Some(self.dim)).map_err(|source| CliError::Parse {
            what,
            text: text.to_string(),
            source,
        })
    }
}

pub fn rational(text: &str) -> CliResult<Rational> {
    parse_rational(text.trim()).map_err(|e| CliError::input(format!("bad rational {text:?}: {e}")))
}

/// `"1,0;0,1/3"` or a path to a JSON file holding a row-major array.
pub fn parse_operator_arg(arg: &str) -> CliResult<Vec<Vec<String>>> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: arg.to_string(),
            source,
        })?;
        return Ok(serde_json::from_str(&text)?);
    }
    let rows: Vec<Vec<String>> = arg
        .split(';')
        .map(|r| r.split(',').map(|s| s.trim().to_string()).collect())
        .collect();
    for s in rows.iter().flatten() {
        rational(s)?;
    }
    Ok(rows)
}

/// `"1/2,0"` → coordinates.
pub fn parse_point_arg(arg: &str) -> Vec<String> {
    arg.split(',').map(|s| s.trim().to_string()).collect()
}

/// `"0,0;1,0;0,1"` → vertex list.
pub fn parse_vertices_arg(arg: &str) -> CliResult<Vec<[String; 2]>> {
    arg.split(';')
        .map(|v| match parse_point_arg(v).as_slice() {
            [a, b] => Ok([a.clone(), b.clone()]),
            _ => Err(CliError::input(format!("vertex {v:?} is not a pair"))),
        })
        .collect()
}
