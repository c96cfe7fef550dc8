use std::collections::BTreeMap;
use std::fmt::Write as _;

use dshuffle::suites::Check;
use serde::Serialize;
use serde_json::Value;

/// Outcome of one command invocation, rendered as text or JSON.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub status: &'static str,
    pub values: BTreeMap<String, Value>,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

impl RunReport {
    pub fn new(command: String) -> Self {
        RunReport { command, status: "pass", values: BTreeMap::new(), checks: Vec::new(), elapsed_ms: None }
    }

    pub fn value(&mut self, key: &str, v: impl Into<Value>) {
        self.values.insert(key.to_string(), v.into());
    }

    pub fn extend(&mut self, checks: Vec<Check>) {
        self.checks.extend(checks);
        self.status = if self.passed() { "pass" } else { "fail" };
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::ok)
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "$ dshuffle {}", self.command);
        for (k, v) in &self.values {
            match v {
                Value::String(s) => writeln!(out, "{k}: {s}"),
                other => writeln!(out, "{k}: {other}"),
            }
            .expect("write to string");
        }
        for c in &self.checks {
            let _ = writeln!(out, "{c}");
        }
        if let Some(ms) = self.elapsed_ms {
            let _ = writeln!(out, "elapsed: {ms} ms");
        }
        let _ = writeln!(out, "status: {}", self.status);
        out
    }
}
