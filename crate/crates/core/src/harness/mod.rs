//! Verification suites, collision mining and the command-line front end.

pub mod cli;
pub mod collision;
pub mod gen;
mod suites;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use serde_json::{Map, Value};

use crate::error::{Error, Result};
pub use collision::{collision_search, CollisionCertificate};
use gen::SuiteRng;

/// Suite names with their default size parameters, as shipped.
pub const MANIFEST: &str = include_str!("../../suites.json");

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub case: usize,
    pub input: Value,
    pub reason: String,
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub params: BTreeMap<String, u64>,
    pub cases: usize,
    pub failures: Vec<Failure>,
    /// Wall-clock time; not part of the JSON form, which must be
    /// reproducible byte for byte.
    pub elapsed: Duration,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("suite".into(), Value::String(self.suite.clone()));
        m.insert("seed".into(), Value::from(self.seed));
        m.insert(
            "params".into(),
            Value::Object(
                self.params
                    .iter()
                    .map(|(k, v)| (k.clone(), Value::from(*v)))
                    .collect(),
            ),
        );
        m.insert("cases".into(), Value::from(self.cases));
        m.insert("passed".into(), Value::Bool(self.passed()));
        m.insert(
            "failures".into(),
            Value::Array(
                self.failures
                    .iter()
                    .map(|f| {
                        let mut o = Map::new();
                        o.insert("case".into(), Value::from(f.case));
                        o.insert("input".into(), f.input.clone());
                        o.insert("reason".into(), Value::String(f.reason.clone()));
                        Value::Object(o)
                    })
                    .collect(),
            ),
        );
        Value::Object(m)
    }
}

pub(crate) type Check = std::result::Result<(), String>;

pub(crate) fn ensure(cond: bool, reason: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(reason())
    }
}

/// State threaded through one suite run.
pub(crate) struct Runner {
    pub rng: SuiteRng,
    params: BTreeMap<String, u64>,
    cases: usize,
    failures: Vec<Failure>,
}

impl Runner {
    pub fn param(&self, key: &str) -> u64 {
        self.params[key]
    }

    pub fn count(&self, key: &str) -> usize {
        self.param(key) as usize
    }

    pub fn record(&mut self, input: Value, outcome: Check) {
        if let Err(reason) = outcome {
            self.failures.push(Failure {
                case: self.cases,
                input,
                reason,
            });
        }
        self.cases += 1;
    }
}

pub(crate) struct SuiteDef {
    pub name: &'static str,
    pub about: &'static str,
    pub defaults: &'static [(&'static str, u64)],
    pub run: fn(&mut Runner),
}

/// Every suite, in manifest order.
pub fn suite_names() -> Vec<&'static str> {
    suites::SUITES.iter().map(|s| s.name).collect()
}

pub fn suite_about(name: &str) -> Option<&'static str> {
    suites::SUITES
        .iter()
        .find(|s| s.name == name)
        .map(|s| s.about)
}

pub fn default_params(name: &str) -> Result<BTreeMap<String, u64>> {
    let def = suites::SUITES
        .iter()
        .find(|s| s.name == name)
        .ok_or_else(|| Error::UnknownSuite(name.to_string()))?;
    Ok(def
        .defaults
        .iter()
        .map(|(k, v)| (k.to_string(), *v))
        .collect())
}

/// Runs `name` with the defaults overridden by `overrides`.
pub fn run_suite(name: &str, seed: u64, overrides: &BTreeMap<String, u64>) -> Result<SuiteReport> {
    let def = suites::SUITES
        .iter()
        .find(|s| s.name == name)
        .ok_or_else(|| Error::UnknownSuite(name.to_string()))?;
    let mut params = default_params(name)?;
    for (k, v) in overrides {
        match params.get_mut(k) {
            Some(slot) => *slot = *v,
            None => {
                return Err(Error::InvalidParameter(format!(
                    "suite `{name}` has no parameter `{k}`"
                )))
            }
        }
    }
    let mut runner = Runner {
        rng: SuiteRng::seed_from_u64(seed),
        params: params.clone(),
        cases: 0,
        failures: Vec::new(),
    };
    let start = Instant::now();
    (def.run)(&mut runner);
    Ok(SuiteReport {
        suite: name.to_string(),
        seed,
        params,
        cases: runner.cases,
        failures: runner.failures,
        elapsed: start.elapsed(),
    })
}

/// Parses a manifest: `{"suites":[{"name":…,"params":{…}},…]}`.
pub fn parse_manifest(text: &str) -> Result<Vec<(String, BTreeMap<String, u64>)>> {
    let v: Value = serde_json::from_str(text)
        .map_err(|e| Error::parse("manifest", format!("invalid JSON: {e}")))?;
    let list = v
        .get("suites")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::parse("manifest.suites", "expected an array"))?;
    list.iter()
        .enumerate()
        .map(|(i, s)| {
            let f = format!("manifest.suites[{i}]");
            let name = s
                .get("name")
                .and_then(Value::as_str)
                .ok_or_else(|| Error::parse(format!("{f}.name"), "expected a string"))?;
            let mut params = BTreeMap::new();
            if let Some(p) = s.get("params") {
                let p = p
                    .as_object()
                    .ok_or_else(|| Error::parse(format!("{f}.params"), "expected an object"))?;
                for (k, v) in p {
                    let v = v.as_u64().ok_or_else(|| {
                        Error::parse(format!("{f}.params.{k}"), "expected a non-negative integer")
                    })?;
                    params.insert(k.clone(), v);
                }
            }
            Ok((name.to_string(), params))
        })
        .collect()
}
