use std::fmt::Write;

use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub suite: String,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(
        suite: &str,
        name: impl Into<String>,
        passed: bool,
        detail: impl Into<String>,
    ) -> Self {
        Self {
            suite: suite.to_string(),
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

/// Everything a command prints. Both renderings carry the same fields in the same order.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Map<String, Value>,
    pub results: Map<String, Value>,
    pub checks: Vec<Check>,
    pub flags: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
    pub passed: bool,
}

impl Report {
    pub fn new(command: String) -> Self {
        Self {
            command,
            inputs: Map::new(),
            results: Map::new(),
            checks: Vec::new(),
            flags: Vec::new(),
            timing_ms: None,
            passed: true,
        }
    }

    pub fn input(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.inputs.insert(key.to_string(), value.into());
        self
    }

    pub fn result(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.results.insert(key.to_string(), value.into());
        self
    }

    pub fn flag(&mut self, on: bool, name: &str) {
        if on && !self.flags.iter().any(|f| f == name) {
            self.flags.push(name.to_string());
        }
    }

    pub fn check(&mut self, c: Check) {
        self.passed &= c.passed;
        self.checks.push(c);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        let width = |fs: &Map<String, Value>| fs.keys().map(String::len).max().unwrap_or(0);
        for (title, fields) in [("inputs", &self.inputs), ("results", &self.results)] {
            if fields.is_empty() {
                continue;
            }
            let w = width(fields);
            let _ = writeln!(out, "{title}:");
            for (k, v) in fields.iter() {
                let _ = writeln!(out, "  {k:w$}  {}", plain(v));
            }
        }
        if !self.checks.is_empty() {
            let _ = writeln!(out, "checks:");
            let sw = self.checks.iter().map(|c| c.suite.len()).max().unwrap_or(0);
            let nw = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
            for c in &self.checks {
                let mark = if c.passed { "PASS" } else { "FAIL" };
                let _ = writeln!(
                    out,
                    "  {mark}  {:sw$}  {:nw$}  {}",
                    c.suite, c.name, c.detail
                );
            }
        }
        if !self.flags.is_empty() {
            let _ = writeln!(out, "flags: {}", self.flags.join(", "));
        }
        if let Some(ms) = self.timing_ms {
            let _ = writeln!(out, "time: {ms} ms");
        }
        let _ = writeln!(out, "status: {}", if self.passed { "pass" } else { "fail" });
        out
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(xs) => format!("({})", xs.iter().map(plain).collect::<Vec<_>>().join(", ")),
        Value::Object(m) => m
            .iter()
            .map(|(k, v)| format!("{k} {}", plain(v)))
            .collect::<Vec<_>>()
            .join(", "),
        Value::Null => "none".to_string(),
        other => other.to_string(),
    }
}
