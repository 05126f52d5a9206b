//! Check records and the machine-readable report.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// The outcome of one named check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    /// What the check is about, in words.
    pub paper_anchor: String,
    pub status: Status,
    /// On failure, the two sides of the identity in canonical text.
    pub detail: Option<String>,
    pub elapsed_ms: u64,
}

impl CheckRecord {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// `name: pass` or `name: fail (detail)`.
    pub fn line(&self) -> String {
        match (&self.status, &self.detail) {
            (Status::Pass, _) => format!("{}: pass", self.name),
            (Status::Fail, Some(d)) => format!("{}: fail ({})", self.name, d),
            (Status::Fail, None) => format!("{}: fail", self.name),
        }
    }
}

/// A full run, sorted by check name.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub version: String,
    pub suite: String,
    pub seed: u64,
    pub checks: Vec<CheckRecord>,
    pub total_elapsed_ms: u64,
}

impl Report {
    pub fn new(suite: &str, seed: u64, mut checks: Vec<CheckRecord>, total_elapsed_ms: u64) -> Report {
        checks.sort_by(|a, b| a.name.cmp(&b.name));
        Report { version: env!("CARGO_PKG_VERSION").to_string(), suite: suite.to_string(), seed, checks, total_elapsed_ms }
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(CheckRecord::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn find(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// One line per check followed by a summary line.
    pub fn to_text(&self) -> String {
        let mut out: String = self.checks.iter().map(|c| c.line() + "\n").collect();
        let failed = self.failures().count();
        out.push_str(&format!("{} checks, {} passed, {} failed\n", self.checks.len(), self.checks.len() - failed, failed));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schema_field_names() {
        let rec = CheckRecord { name: "b".into(), paper_anchor: "x".into(), status: Status::Pass, detail: None, elapsed_ms: 0 };
        let bad = CheckRecord { name: "a".into(), status: Status::Fail, detail: Some("1 vs 2".into()), ..rec.clone() };
        let r = Report::new("demo", 7, vec![rec, bad], 0);
        assert_eq!(r.checks[0].name, "a");
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        for key in ["version", "suite", "seed", "checks", "total_elapsed_ms"] {
            assert!(v.get(key).is_some(), "{}", key);
        }
        let c = &v["checks"][0];
        assert_eq!(c["status"], "fail");
        assert_eq!(c["detail"], "1 vs 2");
        assert!(v["checks"][1]["detail"].is_null());
        for key in ["name", "paper_anchor", "status", "detail", "elapsed_ms"] {
            assert!(c.get(key).is_some(), "{}", key);
        }
        assert_eq!(r.checks[1].line(), "b: pass");
        assert!(!r.all_passed());
    }
}
