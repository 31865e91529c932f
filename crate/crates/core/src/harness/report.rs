use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    /// Not a violation, but not conclusive: e.g. a depth sequence that has
    /// not reached its limit by the largest power tried.
    Flagged,
    /// A budget or resource cap stopped the check.
    Indeterminate,
    Fail,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Flagged => "flagged",
            Status::Indeterminate => "indeterminate",
            Status::Fail => "fail",
        }
    }
}

/// One checked instance. `graph` is the compact form, which parses back to
/// the same labeled graph.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceRecord {
    pub graph: String,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vertex: Option<usize>,
    pub values: BTreeMap<String, Value>,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl InstanceRecord {
    pub fn new(graph: String, n: usize) -> Self {
        InstanceRecord {
            graph,
            n,
            k: None,
            vertex: None,
            values: BTreeMap::new(),
            status: Status::Pass,
            notes: Vec::new(),
        }
    }

    pub fn set(&mut self, key: &str, v: impl Serialize) {
        let v = serde_json::to_value(v).expect("report values serialize");
        self.values.insert(key.to_string(), v);
    }

    /// Raises the status to at least `s` and records why.
    pub fn mark(&mut self, s: Status, note: impl Into<String>) {
        self.status = self.status.max(s);
        self.notes.push(note.into());
    }

    /// Records `ok` as a pass or a failure described by `what`.
    pub fn require(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.mark(Status::Fail, what);
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub flagged: usize,
    pub indeterminate: usize,
    pub fail: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scope {
    pub n_max: usize,
    pub k_max: u32,
    pub budget: u64,
    pub bipartite_only: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub tool_version: String,
    pub seed: u64,
    pub scope: Scope,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub summary: Summary,
    pub records: Vec<InstanceRecord>,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INDETERMINATE: i32 = 3;

impl VerificationReport {
    pub fn new(suite: &str, seed: u64, scope: Scope, records: Vec<InstanceRecord>) -> Self {
        let mut summary = Summary {
            total: records.len(),
            ..Summary::default()
        };
        for r in &records {
            match r.status {
                Status::Pass => summary.pass += 1,
                Status::Flagged => summary.flagged += 1,
                Status::Indeterminate => summary.indeterminate += 1,
                Status::Fail => summary.fail += 1,
            }
        }
        VerificationReport {
            suite: suite.to_string(),
            tool_version: TOOL_VERSION.to_string(),
            seed,
            scope,
            note: None,
            summary,
            records,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &InstanceRecord> {
        self.records.iter().filter(|r| r.status == Status::Fail)
    }

    /// 0 when nothing failed; 1 on any failure; 3 when `strict` and some
    /// instance is indeterminate.
    pub fn exit_code(&self, strict: bool) -> i32 {
        if self.summary.fail > 0 {
            EXIT_VIOLATION
        } else if strict && self.summary.indeterminate > 0 {
            EXIT_INDETERMINATE
        } else {
            EXIT_OK
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn write_json(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json() + "\n")?;
        Ok(())
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let csv_err = |e: csv::Error| Error::Io(e.to_string());
        w.write_record(["suite", "graph", "n", "k", "vertex", "status", "values", "notes"])
            .map_err(csv_err)?;
        for r in &self.records {
            w.write_record([
                self.suite.clone(),
                r.graph.clone(),
                r.n.to_string(),
                r.k.map(|k| k.to_string()).unwrap_or_default(),
                r.vertex.map(|v| v.to_string()).unwrap_or_default(),
                r.status.as_str().to_string(),
                serde_json::to_string(&r.values).expect("values serialize"),
                r.notes.join("; "),
            ])
            .map_err(csv_err)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_csv()?)?;
        Ok(())
    }

    /// Human-readable table: failures and other non-passing records in
    /// full, then the summary line.
    pub fn render_table(&self) -> String {
        let mut out = String::new();
        let s = &self.summary;
        let _ = writeln!(
            out,
            "suite {} (n ≤ {}, k ≤ {}, seed {})",
            self.suite, self.scope.n_max, self.scope.k_max, self.seed
        );
        if let Some(note) = &self.note {
            let _ = writeln!(out, "note: {note}");
        }
        for r in self.records.iter().filter(|r| r.status != Status::Pass) {
            let _ = write!(out, "  {:<13} {}", r.status.as_str(), r.graph);
            if let Some(k) = r.k {
                let _ = write!(out, " k={k}");
            }
            if let Some(v) = r.vertex {
                let _ = write!(out, " v={v}");
            }
            let _ = writeln!(out, "  {}", r.notes.join("; "));
        }
        let _ = writeln!(
            out,
            "total {}  pass {}  flagged {}  indeterminate {}  fail {}",
            s.total, s.pass, s.flagged, s.indeterminate, s.fail
        );
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scope() -> Scope {
        Scope {
            n_max: 3,
            k_max: 2,
            budget: 10,
            bipartite_only: false,
        }
    }

    #[test]
    fn summary_and_exit_codes() {
        let mut a = InstanceRecord::new("n=2;edges=0-1".into(), 2);
        a.set("nu_o", 1);
        let mut b = a.clone();
        b.mark(Status::Indeterminate, "budget");
        let r = VerificationReport::new("x", 7, scope(), vec![a.clone(), b.clone()]);
        assert_eq!(r.summary.indeterminate, 1);
        assert_eq!(r.exit_code(false), EXIT_OK);
        assert_eq!(r.exit_code(true), EXIT_INDETERMINATE);
        let mut c = a.clone();
        c.require(false, "broken");
        c.mark(Status::Flagged, "later note");
        assert_eq!(c.status, Status::Fail);
        let r = VerificationReport::new("x", 7, scope(), vec![a, b, c]);
        assert_eq!(r.exit_code(true), EXIT_VIOLATION);
        assert_eq!(r.failures().count(), 1);
    }

    #[test]
    fn serializations_are_stable() {
        let mut a = InstanceRecord::new("n=2;edges=0-1".into(), 2);
        a.k = Some(2);
        a.set("b", 2);
        a.set("a", [1, 2]);
        let r = VerificationReport::new("x", 1, scope(), vec![a]);
        let j = r.to_json();
        assert!(j.find("\"a\"").unwrap() < j.find("\"b\"").unwrap());
        let back: VerificationReport = serde_json::from_str(&j).unwrap();
        assert_eq!(back, r);
        let csv = r.to_csv().unwrap();
        assert_eq!(csv.lines().count(), 2);
        assert!(csv.lines().nth(1).unwrap().starts_with("x,n=2;edges=0-1,2,2,,pass,"));
        assert!(r.render_table().contains("total 1  pass 1"));
    }
}
