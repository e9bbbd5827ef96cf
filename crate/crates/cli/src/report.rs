//! Versioned JSON run reports.

use serde::Serialize;
use std::collections::BTreeMap;
use std::hash::{DefaultHasher, Hash, Hasher};

pub const SCHEMA: u32 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    /// Present on failure: enough to replay it.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<serde_json::Value>,
}

impl Check {
    pub fn new(name: &str, pass: bool, witness: Option<serde_json::Value>) -> Self {
        Self {
            name: name.into(),
            pass,
            witness,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub schema: u32,
    pub command: String,
    pub inputs_digest: String,
    pub pass: bool,
    pub checks: Vec<Check>,
    pub result: serde_json::Value,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub timings: BTreeMap<String, u64>,
}

impl RunReport {
    pub fn new(command: &str, inputs: &[&str]) -> Self {
        let mut h = DefaultHasher::new();
        command.hash(&mut h);
        inputs.hash(&mut h);
        Self {
            schema: SCHEMA,
            command: command.into(),
            inputs_digest: format!("{:016x}", h.finish()),
            pass: true,
            checks: Vec::new(),
            result: serde_json::Value::Null,
            timings: BTreeMap::new(),
        }
    }

    pub fn push(&mut self, check: Check) {
        self.pass &= check.pass;
        self.checks.push(check);
    }

    pub fn pass(&self) -> bool {
        self.pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn summary(&self) -> String {
        let failed = self.checks.iter().filter(|c| !c.pass).count();
        format!(
            "{}: {} ({} checks, {failed} failed)",
            self.command,
            if self.pass { "pass" } else { "FAIL" },
            self.checks.len()
        )
    }
}
