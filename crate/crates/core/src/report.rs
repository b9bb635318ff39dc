use std::time::{Duration, Instant};

use serde::Serialize;

const KEPT_VIOLATIONS: usize = 10;

/// Outcome of a verification sweep. Only the first few violations are
/// kept; `violation_count` has the total.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub claim: String,
    pub checked: u64,
    pub violations: Vec<String>,
    pub pass: bool,
    #[serde(skip)]
    pub violation_count: u64,
    #[serde(skip)]
    pub elapsed: Duration,
    #[serde(skip)]
    started: Option<Instant>,
}

impl Report {
    pub fn new(claim: impl Into<String>) -> Report {
        Report {
            claim: claim.into(),
            checked: 0,
            violations: Vec::new(),
            pass: true,
            violation_count: 0,
            elapsed: Duration::ZERO,
            started: Some(Instant::now()),
        }
    }

    pub fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.fail(describe());
        }
    }

    pub fn fail(&mut self, what: String) {
        self.violation_count += 1;
        self.pass = false;
        if self.violations.len() < KEPT_VIOLATIONS {
            self.violations.push(what);
        }
    }

    /// Folds a sub-report in, prefixing its violations with its claim.
    pub fn absorb(&mut self, other: Report) {
        self.checked += other.checked;
        self.violation_count += other.violation_count;
        self.pass &= other.pass;
        for v in other.violations {
            if self.violations.len() < KEPT_VIOLATIONS {
                self.violations.push(format!("{}: {v}", other.claim));
            }
        }
    }

    pub fn finish(mut self) -> Report {
        if let Some(t) = self.started.take() {
            self.elapsed = t.elapsed();
        }
        self
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("reports serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keeps_first_ten() {
        let mut r = Report::new("x");
        for i in 0..15 {
            r.check(i % 2 == 0, || format!("case {i}"));
        }
        let r = r.finish();
        assert!(!r.pass);
        assert_eq!(r.checked, 15);
        assert_eq!(r.violation_count, 7);
        assert_eq!(r.violations.len(), 7);
        let v = r.to_json();
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        assert_eq!(keys, ["checked", "claim", "pass", "violations"]);
    }

    #[test]
    fn empty_report_passes() {
        let r = Report::new("vacuous").finish();
        assert!(r.pass);
        assert_eq!(r.checked, 0);
    }
}
