//! Outcome record for one theorem check.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// The outcome of one numerical check: the two sides of the inequality (or
/// identity), their ratio, the verdict, and every parameter needed to re-run
/// the exact trial.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    /// `lhs / rhs`; serialized as `null` when non-finite.
    pub ratio: f64,
    pub pass: bool,
    pub params: BTreeMap<String, Value>,
}

impl CheckReport {
    /// Inequality check `lhs <= rhs·(1 + tol)`; records the tolerance.
    pub fn inequality(name: &str, lhs: f64, rhs: f64, tol: f64) -> Self {
        let mut r = Self {
            name: name.to_string(),
            lhs,
            rhs,
            ratio: lhs / rhs,
            pass: lhs <= rhs * (1.0 + tol),
            params: BTreeMap::new(),
        };
        r.set("tol", tol);
        r.set("tol_kind", "relative");
        r
    }

    /// Inequality check with additive slack, `lhs <= rhs + tol`.
    pub fn inequality_additive(name: &str, lhs: f64, rhs: f64, tol: f64) -> Self {
        let mut r = Self {
            name: name.to_string(),
            lhs,
            rhs,
            ratio: lhs / rhs,
            pass: lhs <= rhs + tol,
            params: BTreeMap::new(),
        };
        r.set("tol", tol);
        r.set("tol_kind", "additive");
        r
    }

    /// Report-only entry: values are recorded, the verdict is always pass.
    pub fn report_only(name: &str, lhs: f64, rhs: f64) -> Self {
        let mut r = Self {
            name: name.to_string(),
            lhs,
            rhs,
            ratio: lhs / rhs,
            pass: true,
            params: BTreeMap::new(),
        };
        r.set("asserted", false);
        r
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.params.insert(key.to_string(), value.into());
    }

    pub fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.set(key, value);
        self
    }

    /// Whether this report counts toward suite failure (report-only entries
    /// never do).
    pub fn asserted(&self) -> bool {
        self.params
            .get("asserted")
            .and_then(Value::as_bool)
            .unwrap_or(true)
    }
}
