//! Verification reports: a list of named checks plus optional values, emitted
//! as JSON or one line per check.

use std::fmt::Display;

use serde::Serialize;
use serde_json::{Map, Value};

use crate::error::Result;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    /// Evidence for a pass, or a counterexample for a failure.
    pub witness: String,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool, witness: impl Into<String>) -> Check {
        Check { name: name.into(), pass, witness: witness.into() }
    }

    /// Runs a check body; an error becomes a failing check carrying the
    /// error message.
    pub fn run(name: impl Into<String>, body: impl FnOnce() -> Result<(bool, String)>) -> Check {
        match body() {
            Ok((pass, witness)) => Check::new(name, pass, witness),
            Err(e) => Check::new(name, false, format!("error: {e}")),
        }
    }

    /// Passes when every item holds; otherwise the witness names the first
    /// item that does not.
    pub fn all<T: Display>(name: impl Into<String>, items: impl IntoIterator<Item = (T, bool)>) -> Check {
        let mut count = 0usize;
        for (item, ok) in items {
            if !ok {
                return Check::new(name, false, item.to_string());
            }
            count += 1;
        }
        Check::new(name, true, format!("{count} checked"))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Params {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub params: Params,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Map::is_empty")]
    pub values: Map<String, Value>,
    /// Left empty unless timing was requested, so reports stay reproducible.
    pub elapsed_ms: Option<u64>,
}

impl Report {
    pub fn new(command: impl Into<String>, params: Params) -> Report {
        Report { command: command.into(), params, checks: Vec::new(), values: Map::new(), elapsed_ms: None }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, checks: impl IntoIterator<Item = Check>) {
        self.checks.extend(checks);
    }

    pub fn value(&mut self, key: &str, value: impl Into<Value>) {
        self.values.insert(key.to_string(), value.into());
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }

    /// Values as `key: value` lines, then `PASS name` or `FAIL name: witness`
    /// per check.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (key, value) in &self.values {
            match value {
                Value::Array(items) => {
                    out += &format!("{key}: {}\n", items.len());
                    for item in items {
                        out += &format!("  {}\n", plain(item));
                    }
                }
                other => out += &format!("{key}: {}\n", plain(other)),
            }
        }
        for c in &self.checks {
            if c.pass {
                out += &format!("PASS {}\n", c.name);
            } else {
                out += &format!("FAIL {}: {}\n", c.name, c.witness);
            }
        }
        if let Some(ms) = self.elapsed_ms {
            out += &format!("elapsed_ms: {ms}\n");
        }
        out
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
