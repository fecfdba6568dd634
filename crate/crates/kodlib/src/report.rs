//! Reports: the answer, its bound qualification, a derivation trace and
//! warnings, with a canonical JSON form and a text rendering.

use std::fmt::Write as _;

use kodlib_core::KodDim;
use serde::{Deserialize, Serialize};

/// One step of a derivation: a label and an exact value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceLine {
    pub step: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    /// One of `-inf`, `0`, `1`, `2`.
    pub kappa: String,
    /// True exactly when a rational −1-class enumeration took part.
    pub bound_qualified: bool,
    /// The enumeration bound, present when `bound_qualified` is.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<u32>,
    #[serde(default)]
    pub trace: Vec<TraceLine>,
    #[serde(default)]
    pub warnings: Vec<String>,
}

impl Report {
    pub fn new(command: &str, kappa: KodDim) -> Self {
        Report {
            command: command.to_string(),
            kappa: kappa.as_str().to_string(),
            bound_qualified: false,
            bound: None,
            trace: Vec::new(),
            warnings: Vec::new(),
        }
    }

    pub fn qualified_by(mut self, bound: Option<u32>) -> Self {
        self.bound_qualified = bound.is_some();
        self.bound = bound;
        self
    }

    /// Canonical JSON: sorted keys, rationals as strings, no whitespace.
    pub fn to_json(&self) -> String {
        let v = serde_json::to_value(self).expect("reports serialize");
        // `serde_json::Map` without `preserve_order` is a BTreeMap, so
        // re-serializing the value emits keys in sorted order.
        serde_json::to_string(&v).expect("values serialize")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{}: kappa = {}", self.command, self.kappa);
        if let Some(b) = self.bound {
            let _ = writeln!(s, "  bound-qualified: -1 classes enumerated with |coefficient| <= {b}");
        }
        for t in &self.trace {
            let _ = writeln!(s, "  {} = {}", t.step, t.value);
        }
        for w in &self.warnings {
            let _ = writeln!(s, "  warning: {w}");
        }
        s
    }
}

/// Collects trace lines when tracing is on.
#[derive(Debug, Default)]
pub struct Trace {
    enabled: bool,
    lines: Vec<TraceLine>,
}

impl Trace {
    pub fn new(enabled: bool) -> Self {
        Trace { enabled, lines: Vec::new() }
    }

    pub fn push(&mut self, step: &str, value: impl ToString) {
        if self.enabled {
            self.lines.push(TraceLine { step: step.to_string(), value: value.to_string() });
        }
    }

    pub fn into_lines(self) -> Vec<TraceLine> {
        self.lines
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_keys_are_sorted_and_round_trip() {
        let mut r = Report::new("dim2", KodDim::NegInf).qualified_by(Some(30));
        r.trace.push(TraceLine { step: "c(D)".into(), value: "1/12".into() });
        let s = r.to_json();
        assert!(s.starts_with(r#"{"bound":30,"bound_qualified":true,"command":"dim2","kappa":"-inf""#));
        let back: Report = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.to_json(), s);
    }

    #[test]
    fn trace_is_dropped_when_disabled() {
        let mut t = Trace::new(false);
        t.push("K^2", 3);
        assert!(t.into_lines().is_empty());
    }
}
