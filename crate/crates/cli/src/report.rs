use std::io::Write;
use std::time::Duration;

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Verified,
    Refuted,
    Error,
}

/// What a command produced, before timing is attached.
#[derive(Debug)]
pub struct Outcome {
    pub inputs: Value,
    pub verdict: Verdict,
    pub certificate: Value,
    /// Lines printed in text mode.
    pub summary: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub inputs: Value,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub timing_ms: u64,
    #[serde(skip)]
    summary: Vec<String>,
}

impl RunReport {
    pub fn new(
        command: Vec<String>,
        outcome: Result<Outcome, String>,
        elapsed: Duration,
    ) -> RunReport {
        let timing_ms = elapsed.as_millis() as u64;
        match outcome {
            Ok(o) => RunReport {
                command,
                inputs: o.inputs,
                verdict: o.verdict,
                certificate: Some(o.certificate),
                error: None,
                timing_ms,
                summary: o.summary,
            },
            Err(e) => RunReport {
                command,
                inputs: Value::Null,
                verdict: Verdict::Error,
                certificate: None,
                error: Some(e),
                timing_ms,
                summary: Vec::new(),
            },
        }
    }

    /// Writes the report to stdout; a closed pipe is not an error.
    pub fn print(&self, json: bool) {
        let mut out = std::io::stdout().lock();
        if json {
            let text = serde_json::to_string_pretty(self).expect("report serializes");
            let _ = writeln!(out, "{text}");
            return;
        }
        if let Some(e) = &self.error {
            eprintln!("error: {e}");
            return;
        }
        for line in &self.summary {
            let _ = writeln!(out, "{line}");
        }
        let verdict = match self.verdict {
            Verdict::Verified => "verified",
            Verdict::Refuted => "refuted",
            Verdict::Error => "error",
        };
        let _ = writeln!(out, "verdict: {verdict} ({} ms)", self.timing_ms);
    }
}
