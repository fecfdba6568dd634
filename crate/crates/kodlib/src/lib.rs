//! JSON formats, request dispatch and batch evaluation for `kodlib-core`.

pub mod error;
pub mod format;
pub mod report;
pub mod request;
pub mod run;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use error::{ErrorRecord, RunError};
pub use report::{Report, TraceLine};
pub use request::{Command, Options, Output, Request, Settings};
pub use run::{run, run_payload};

/// Enumeration bound used when neither the request nor the environment
/// sets one.
pub const DEFAULT_BOUND: u32 = 30;

pub fn parse_request(text: &str) -> Result<Request, RunError> {
    serde_json::from_str(text).map_err(|e| RunError::Json(e.to_string()))
}

pub fn parse_payload(text: &str) -> Result<serde_json::Value, RunError> {
    serde_json::from_str(text).map_err(|e| RunError::Json(e.to_string()))
}

/// Outcome of one batch line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatchRecord {
    /// 1-based line number in the input.
    pub line: usize,
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<Report>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorRecord>,
    /// Rendering chosen by the line's options or the command line.
    #[serde(skip)]
    pub output: Output,
}

impl BatchRecord {
    fn from_result(line: usize, r: Result<Report, RunError>, output: Output) -> Self {
        match r {
            Ok(report) => BatchRecord { line, status: "ok".into(), report: Some(report), error: None, output },
            Err(e) => BatchRecord { line, status: "error".into(), report: None, error: Some(e.record()), output },
        }
    }

    pub fn render(&self) -> String {
        match self.output {
            Output::Json => self.to_json() + "\n",
            Output::Text => self.to_text(),
        }
    }

    pub fn is_ok(&self) -> bool {
        self.report.is_some()
    }

    /// Canonical JSON with sorted keys.
    pub fn to_json(&self) -> String {
        let v = serde_json::to_value(self).expect("records serialize");
        serde_json::to_string(&v).expect("values serialize")
    }

    pub fn to_text(&self) -> String {
        match (&self.report, &self.error) {
            (Some(r), _) => format!("line {}: {}", self.line, r.to_text()),
            (None, Some(e)) => format!("line {}: error ({}): {}\n", self.line, e.kind, e.message),
            (None, None) => format!("line {}: {}\n", self.line, self.status),
        }
    }
}

/// Evaluates newline-delimited requests concurrently; blank lines are
/// skipped and records come back in input order.
pub fn batch(text: &str, defaults: Settings) -> Vec<BatchRecord> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| (i + 1, l))
        .collect();
    lines
        .par_iter()
        .map(|&(n, l)| match parse_request(l) {
            Ok(r) => BatchRecord::from_result(n, run(&r, defaults), defaults.resolve(&r.options).output),
            Err(e) => BatchRecord::from_result(n, Err(e), defaults.output),
        })
        .collect()
}
