//! Line-oriented reports.

use crate::bialgebra::CheckReport;

pub const UNVERIFIED_STAMP: &str = "UNVERIFIED-OPERATOR";

/// Ordered report lines; every line of a report about an unvalidated
/// operator is prefixed with [`UNVERIFIED_STAMP`].
#[derive(Clone, Debug, Default)]
pub struct Report {
    unverified: bool,
    lines: Vec<String>,
    checks: usize,
    failed: usize,
}

impl Report {
    pub fn new(unverified: bool) -> Self {
        Report {
            unverified,
            ..Report::default()
        }
    }

    pub fn line(&mut self, text: impl Into<String>) {
        self.lines.push(text.into());
    }

    /// Records a verdict line and counts it towards the summary.
    pub fn check(&mut self, text: impl Into<String>, passed: bool) {
        self.checks += 1;
        if !passed {
            self.failed += 1;
        }
        self.line(text);
    }

    pub fn checks(&mut self, report: &CheckReport) {
        for v in &report.verdicts {
            self.check(v.to_string(), v.passed());
        }
    }

    pub fn total(&self) -> usize {
        self.checks
    }

    pub fn failed(&self) -> usize {
        self.failed
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for line in &self.lines {
            if self.unverified {
                out.push_str(UNVERIFIED_STAMP);
                out.push(' ');
            }
            out.push_str(line);
            out.push('\n');
        }
        out
    }
}
