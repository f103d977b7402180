//! Report records and their canonical JSON form.
//!
//! Reports must be byte-stable: the same job always serializes to the same
//! bytes. Struct fields serialize in declaration order, `serde_json` maps
//! sort their keys, and every number is carried as an exact string, so no
//! formatting decision is left to the platform.

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

pub const REPORT_VERSION: &str = "1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Map::is_empty")]
    pub data: Map<String, Value>,
}

impl Check {
    pub fn new(name: &str, status: Status) -> Self {
        Check {
            name: name.to_string(),
            status,
            data: Map::new(),
        }
    }

    pub fn pass(name: &str) -> Self {
        Check::new(name, Status::Pass)
    }

    pub fn outcome(name: &str, ok: bool) -> Self {
        Check::new(name, if ok { Status::Pass } else { Status::Fail })
    }

    pub fn skipped(name: &str, reason: &str) -> Self {
        Check::new(name, Status::Skipped).with("reason", s(reason))
    }

    pub fn with(mut self, key: &str, value: Value) -> Self {
        self.data.insert(key.to_string(), value);
        self
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub version: String,
    pub command: String,
    pub job: Value,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(command: &str, job: Value, checks: Vec<Check>) -> Self {
        Report {
            version: REPORT_VERSION.to_string(),
            command: command.to_string(),
            job,
            checks,
        }
    }

    pub fn render(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("reports serialize");
        text.push('\n');
        text
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }
}

/// Any displayable value as an exact string payload.
pub fn s(x: impl std::fmt::Display) -> Value {
    Value::String(x.to_string())
}

/// A dimension vector as an array of integer strings.
pub fn dims(v: &[usize]) -> Value {
    Value::Array(v.iter().map(|d| s(d)).collect())
}

pub fn strings<I: IntoIterator<Item = T>, T: std::fmt::Display>(items: I) -> Value {
    Value::Array(items.into_iter().map(|x| s(x)).collect())
}

pub fn flag(b: bool) -> Value {
    Value::Bool(b)
}
