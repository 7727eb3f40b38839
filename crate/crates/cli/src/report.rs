//! Verification reports: one entry per check, serialized as JSON.

use serde::Serialize;
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Pass,
    Fail,
    Skip,
    DivergesAsExpected,
}

/// JSON number, or a string for values JSON cannot hold.
pub fn num(v: f64) -> Value {
    if v.is_finite() {
        json!(v)
    } else if v.is_nan() {
        json!("nan")
    } else if v > 0.0 {
        json!("inf")
    } else {
        json!("-inf")
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Entry {
    pub check_id: String,
    pub status: Status,
    pub value: Value,
    /// A number, an interval [lo, hi], or a word such as "diverges".
    pub expected: Value,
    pub tolerance: Value,
    pub citation: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub params: Value,
    pub entries: Vec<Entry>,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn new(suite: &str, params: Value, entries: Vec<Entry>) -> Self {
        let mut s = Summary::default();
        for e in &entries {
            match e.status {
                Status::Pass | Status::DivergesAsExpected => s.pass += 1,
                Status::Fail => s.fail += 1,
                Status::Skip => s.skip += 1,
            }
        }
        VerificationReport { suite: suite.to_string(), params, entries, summary: s }
    }

    pub fn ok(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Collects entries for one suite.
#[derive(Debug, Default)]
pub struct Checks {
    pub entries: Vec<Entry>,
    /// Multiplies every numeric tolerance.
    pub tol_scale: f64,
}

impl Checks {
    pub fn new(tol_scale: f64) -> Self {
        Checks { entries: Vec::new(), tol_scale }
    }

    #[allow(clippy::too_many_arguments)]
    fn push(&mut self, id: &str, status: Status, value: Value, expected: Value, tolerance: Value, citation: &str, note: Option<String>) {
        self.entries.push(Entry { check_id: id.to_string(), status, value, expected, tolerance, citation: citation.to_string(), note });
    }

    /// PASS iff |value - expected| <= tol.
    pub fn close(&mut self, id: &str, value: f64, expected: f64, tol: f64, citation: &str) {
        let tol = tol * self.tol_scale;
        let ok = (value - expected).abs() <= tol;
        self.push(id, if ok { Status::Pass } else { Status::Fail }, num(value), num(expected), num(tol), citation, None);
    }

    /// PASS iff value <= bound (a deviation or error measure).
    pub fn below(&mut self, id: &str, value: f64, bound: f64, citation: &str) {
        let bound = bound * self.tol_scale;
        let ok = value <= bound;
        self.push(id, if ok { Status::Pass } else { Status::Fail }, num(value), json!([0.0, num(bound)]), num(bound), citation, None);
    }

    /// Attach a note to the most recent entry.
    pub fn annotate(&mut self, note: String) {
        if let Some(e) = self.entries.last_mut() {
            e.note = Some(note);
        }
    }

    /// PASS iff lo <= value <= hi (no tolerance scaling).
    pub fn within(&mut self, id: &str, value: f64, lo: f64, hi: f64, citation: &str) {
        let ok = value >= lo && value <= hi;
        self.push(id, if ok { Status::Pass } else { Status::Fail }, num(value), json!([num(lo), num(hi)]), num(0.0), citation, None);
    }

    /// PASS iff the property holds; value is 1 or 0.
    pub fn holds(&mut self, id: &str, ok: bool, citation: &str, note: Option<String>) {
        self.push(id, if ok { Status::Pass } else { Status::Fail }, num(if ok { 1.0 } else { 0.0 }), num(1.0), num(0.0), citation, note);
    }

    /// DIVERGES_AS_EXPECTED iff divergence was detected, FAIL otherwise.
    pub fn diverges(&mut self, id: &str, detected: bool, value: f64, citation: &str, note: Option<String>) {
        let st = if detected { Status::DivergesAsExpected } else { Status::Fail };
        self.push(id, st, num(value), json!("diverges"), num(0.0), citation, note);
    }

    pub fn skip(&mut self, id: &str, reason: &str, citation: &str) {
        self.push(id, Status::Skip, Value::Null, Value::Null, Value::Null, citation, Some(reason.to_string()));
    }

    /// Record a computation that failed with an error.
    pub fn error(&mut self, id: &str, err: &dyn std::fmt::Display, citation: &str) {
        self.push(id, Status::Fail, num(f64::NAN), Value::Null, Value::Null, citation, Some(err.to_string()));
    }

    /// Run a fallible check; an error becomes a FAIL entry.
    pub fn run<F>(&mut self, id: &str, citation: &str, f: F)
    where
        F: FnOnce(&mut Self) -> stablepot_core::Result<()>,
    {
        if let Err(e) = f(self) {
            self.error(id, &e, citation);
        }
    }
}
