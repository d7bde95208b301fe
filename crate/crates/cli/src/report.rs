use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub const SCHEMA_VERSION: u32 = 1;

/// Process exit statuses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    Violation,
    Error,
}

impl Status {
    pub fn code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Violation => 1,
            Status::Error => 2,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Violation => "violation",
            Status::Error => "error",
        }
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// One named check with its verdict, counterexample and timing.
#[derive(Debug, Clone, Serialize)]
pub struct CheckEntry {
    pub name: String,
    pub holds: bool,
    pub witness: Value,
    pub elapsed_us: u64,
}

pub struct Report {
    command: &'static str,
    args: Value,
    input_sha256: Option<String>,
    checks: Vec<CheckEntry>,
    result: Value,
    label: Option<String>,
    warnings: Vec<String>,
    summary: Vec<String>,
    started: Instant,
}

impl Report {
    pub fn new(command: &'static str, args: Value) -> Self {
        Report {
            command,
            args,
            input_sha256: None,
            checks: Vec::new(),
            result: Value::Null,
            label: None,
            warnings: Vec::new(),
            summary: Vec::new(),
            started: Instant::now(),
        }
    }

    pub fn digest(&mut self, bytes: &[u8]) {
        self.input_sha256 = Some(sha256_hex(bytes));
    }

    /// Times `f` and records its verdict and witness.
    pub fn check<W: Serialize>(&mut self, name: &str, f: impl FnOnce() -> (bool, Option<W>)) -> bool {
        let t = Instant::now();
        let (holds, witness) = f();
        self.checks.push(CheckEntry {
            name: name.to_string(),
            holds,
            witness: serde_json::to_value(witness).unwrap_or(Value::Null),
            elapsed_us: t.elapsed().as_micros() as u64,
        });
        holds
    }

    pub fn result(&mut self, v: Value) {
        self.result = v;
    }

    pub fn label(&mut self, l: impl ToString) {
        self.label = Some(l.to_string());
    }

    pub fn warn(&mut self, w: impl Into<String>) {
        self.warnings.push(w.into());
    }

    /// Line for the human-readable summary on standard error.
    pub fn say(&mut self, line: impl Into<String>) {
        self.summary.push(line.into());
    }

    pub fn summary(&self) -> &[String] {
        &self.summary
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn finish(self, status: Status, error: Option<(&str, String, Value)>) -> Value {
        json!({
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "args": self.args,
            "input_sha256": self.input_sha256,
            "status": status.name(),
            "exit_code": status.code(),
            "checks": self.checks,
            "label": self.label,
            "result": self.result,
            "warnings": self.warnings,
            "error": error.map(|(code, message, details)| json!({
                "code": code,
                "message": message,
                "details": details,
            })),
            "elapsed_us": self.started.elapsed().as_micros() as u64,
        })
    }
}
