//! Verification reports: one record per check, rendered as text or JSON.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Evaluated and recorded, but outside the scope where the identity is
    /// asserted (for example a Kähler identity on a non-Kähler chart).
    Info,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Info => "INFO",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub anchor: String,
    pub status: Status,
    /// Number of instances evaluated.
    pub cases: usize,
    /// The normalized defect of the first failing instance.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckRecord {
    pub fn new(id: impl Into<String>, anchor: impl Into<String>) -> Self {
        CheckRecord {
            id: id.into(),
            anchor: anchor.into(),
            status: Status::Pass,
            cases: 0,
            witness: None,
            note: None,
        }
    }

    /// Records one instance; the first failure supplies the witness.
    pub fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.status != Status::Fail {
            self.status = Status::Fail;
            self.witness = Some(witness());
        }
    }

    pub fn fail(&mut self, witness: impl Into<String>) {
        self.cases += 1;
        if self.status != Status::Fail {
            self.status = Status::Fail;
            self.witness = Some(witness.into());
        }
    }

    /// Turns the record informational: failures are kept as witnesses but do
    /// not count.
    pub fn informational(mut self, note: impl Into<String>) -> Self {
        self.status = Status::Info;
        self.note = Some(note.into());
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub info: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub suite: String,
    pub chart: String,
    pub seed: u64,
    pub samples: usize,
    pub corpus: Vec<String>,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
}

impl Report {
    pub fn new(suite: &str, chart: &str, seed: u64, samples: usize, corpus: Vec<String>, checks: Vec<CheckRecord>) -> Self {
        let mut summary = Summary::default();
        for c in &checks {
            match c.status {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::Info => summary.info += 1,
            }
        }
        Report {
            suite: suite.to_string(),
            chart: chart.to_string(),
            seed,
            samples,
            corpus,
            checks,
            summary,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "suite {} on chart {} (seed {}, samples {})\n",
            self.suite, self.chart, self.seed, self.samples
        ));
        if !self.corpus.is_empty() {
            out.push_str("corpus:\n");
            for c in &self.corpus {
                out.push_str(&format!("  {c}\n"));
            }
        }
        for c in &self.checks {
            out.push_str(&format!("{} {} [{}] ({} cases)\n", c.status.label(), c.id, c.anchor, c.cases));
            if let Some(w) = &c.witness {
                out.push_str(&format!("    witness: {w}\n"));
            }
            if let Some(n) = &c.note {
                out.push_str(&format!("    note: {n}\n"));
            }
        }
        out.push_str(&format!(
            "summary: {} passed, {} failed, {} informational\n",
            self.summary.pass, self.summary.fail, self.summary.info
        ));
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_failure_is_the_witness() {
        let mut c = CheckRecord::new("id", "anchor");
        c.record(true, || unreachable!());
        c.record(false, || "first".into());
        c.record(false, || "second".into());
        assert_eq!(c.status, Status::Fail);
        assert_eq!(c.witness.as_deref(), Some("first"));
        assert_eq!(c.cases, 3);
        let r = Report::new("s", "c", 1, 2, vec![], vec![c, CheckRecord::new("ok", "a")]);
        assert_eq!((r.summary.pass, r.summary.fail), (1, 1));
        assert!(r.to_json().contains("\"status\": \"fail\""));
        assert!(r.to_text().contains("FAIL id [anchor]"));
    }
}
