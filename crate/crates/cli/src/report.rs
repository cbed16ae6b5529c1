//! JSON report envelope.

use std::collections::BTreeMap;
use std::time::Instant;

use fischer_core::{format_polynomial, parse_polynomial, Error as CoreError, Polynomial};
use serde::Serialize;
use serde_json::Value;

use crate::error::CliResult;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Result fields that vary between identical runs.
pub const NONDETERMINISTIC_FIELDS: &[&str] = &["timings"];

#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub name: String,
    pub polynomial: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CommandResult {
    pub command: String,
    pub subject: String,
    pub dim: usize,
    pub status: String,
    pub witnesses: Vec<Witness>,
    pub certificates: Vec<Value>,
    pub ranks: BTreeMap<u32, usize>,
    pub timings: BTreeMap<String, f64>,
}

impl CommandResult {
    pub fn new(command: &str, subject: impl Into<String>, dim: usize) -> Self {
        CommandResult {
            command: command.to_string(),
            subject: subject.into(),
            dim,
            status: String::new(),
            witnesses: Vec::new(),
            certificates: Vec::new(),
            ranks: BTreeMap::new(),
            timings: BTreeMap::new(),
        }
    }

    pub fn status(&mut self, status: impl Into<String>) -> &mut Self {
        self.status = status.into();
        self
    }

    /// Records `p` after checking that its printed form parses back to `p`.
    pub fn witness(&mut self, name: impl Into<String>, p: &Polynomial) -> CliResult<&mut Self> {
        let text = format_polynomial(p);
        match parse_polynomial(&text, Some(p.dim())) {
            Ok(back) if back == *p => {}
            _ => {
                return Err(CoreError::VerificationFailed(format!(
                    "witness {text:?} does not re-parse to itself"
                ))
                .into())
            }
        }
        self.witnesses.push(Witness {
            name: name.into(),
            polynomial: text,
        });
        Ok(self)
    }

    pub fn certificate(&mut self, c: Value) -> &mut Self {
        self.certificates.push(c);
        self
    }

    /// Wall-clock time since `start`, in milliseconds.
    pub fn stamp(&mut self, start: Instant) -> &mut Self {
        let ms = start.elapsed().as_secs_f64() * 1e3;
        self.timings.insert("elapsed_ms".into(), (ms * 1e3).round() / 1e3);
        self
    }
}

/// Runs `f` and stamps its wall-clock time onto the result.
pub fn timed(f: impl FnOnce() -> CliResult<CommandResult>) -> CliResult<CommandResult> {
    let start = Instant::now();
    let mut r = f()?;
    r.stamp(start);
    Ok(r)
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportEnvelope {
    pub version: String,
    pub scenario: Value,
    pub results: Vec<CommandResult>,
}

impl ReportEnvelope {
    pub fn new(scenario: Value, results: Vec<CommandResult>) -> Self {
        ReportEnvelope {
            version: VERSION.to_string(),
            scenario,
            results,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("envelope serializes");
        s.push('\n');
        s
    }
}

/// Drops the fields listed in [`NONDETERMINISTIC_FIELDS`] from every result.
pub fn strip_nondeterministic(report: &mut Value) {
    if let Some(results) = report.get_mut("results").and_then(Value::as_array_mut) {
        for r in results {
            if let Some(obj) = r.as_object_mut() {
                for f in NONDETERMINISTIC_FIELDS {
                    obj.remove(*f);
                }
            }
        }
    }
}
