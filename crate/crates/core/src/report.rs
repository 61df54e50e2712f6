//! Verification reports and their JSON and markdown renderings.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::exact::{Matrix, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }
}

/// An exact value as it appears in reports: rationals are `"p/q"` strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Value {
    Scalar(String),
    Vector(Vec<String>),
    Matrix(Vec<Vec<String>>),
}

impl Value {
    pub fn text(s: impl Into<String>) -> Self {
        Value::Scalar(s.into())
    }

    pub fn of<T: ToString>(x: T) -> Self {
        Value::Scalar(x.to_string())
    }

    pub fn list<T: ToString>(xs: impl IntoIterator<Item = T>) -> Self {
        Value::Vector(xs.into_iter().map(|x| x.to_string()).collect())
    }

    pub fn rows<T: ToString, R: IntoIterator<Item = T>>(rows: impl IntoIterator<Item = R>) -> Self {
        Value::Matrix(
            rows.into_iter()
                .map(|r| r.into_iter().map(|x| x.to_string()).collect())
                .collect(),
        )
    }

    pub fn matrix<T: Scalar>(m: &Matrix<T>) -> Self {
        Value::rows((0..m.rows()).map(|i| m.row(i).to_vec()))
    }

    fn markdown(&self) -> String {
        match self {
            Value::Scalar(s) => s.clone(),
            Value::Vector(v) => format!("[{}]", v.join(", ")),
            Value::Matrix(m) if m.iter().map(Vec::len).sum::<usize>() <= 16 => format!(
                "[{}]",
                m.iter()
                    .map(|r| format!("[{}]", r.join(", ")))
                    .collect::<Vec<_>>()
                    .join(", ")
            ),
            Value::Matrix(m) => format!("{}x{} matrix", m.len(), m.first().map_or(0, Vec::len)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrailStep {
    pub step: String,
    pub value: Value,
}

impl TrailStep {
    pub fn new(step: impl Into<String>, value: Value) -> Self {
        Self {
            step: step.into(),
            value,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub paper_ref: String,
    pub expected: Value,
    pub computed: Value,
    pub status: Status,
    pub trail: Vec<TrailStep>,
}

impl Check {
    /// A check that passes iff the computation succeeded with the expected value.
    pub fn compare(
        id: impl Into<String>,
        reference: impl Into<String>,
        expected: Value,
        computed: Result<Value, String>,
    ) -> Self {
        let (computed, status) = match computed {
            Ok(v) => {
                let status = if v == expected {
                    Status::Pass
                } else {
                    Status::Fail
                };
                (v, status)
            }
            Err(e) => (Value::Scalar(format!("error: {e}")), Status::Fail),
        };
        Check {
            id: id.into(),
            paper_ref: reference.into(),
            expected,
            computed,
            status,
            trail: Vec::new(),
        }
    }

    pub fn with_trail(mut self, trail: Vec<TrailStep>) -> Self {
        self.trail = trail;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub status: Status,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>, checks: Vec<Check>) -> Self {
        let status = if checks.iter().all(|c| c.status == Status::Pass) {
            Status::Pass
        } else {
            Status::Fail
        };
        Self {
            suite: suite.into(),
            status,
            checks,
        }
    }

    pub fn passed(&self) -> usize {
        self.checks
            .iter()
            .filter(|c| c.status == Status::Pass)
            .count()
    }

    pub fn failed(&self) -> usize {
        self.checks
            .iter()
            .filter(|c| c.status == Status::Fail)
            .count()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Markdown,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(Format::Json),
            "markdown" | "md" => Ok(Format::Markdown),
            other => Err(format!("unknown format {other:?}")),
        }
    }
}

pub fn emit_report(report: &VerificationReport, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Markdown => markdown(report),
    }
}

fn escape(s: &str) -> String {
    s.replace('|', "\\|")
}

fn markdown(report: &VerificationReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# Verification report: {}\n", report.suite);
    let _ = writeln!(
        out,
        "Status: **{}** ({} passed, {} failed, {} checks)\n",
        report.status.as_str(),
        report.passed(),
        report.failed(),
        report.checks.len()
    );
    // One table per suite; check ids are "<suite>/<name>".
    let mut groups: Vec<(&str, Vec<&Check>)> = Vec::new();
    for c in &report.checks {
        let suite =
            c.id.split_once('/')
                .map_or(report.suite.as_str(), |(s, _)| s);
        match groups.last_mut() {
            Some((name, checks)) if *name == suite => checks.push(c),
            _ => groups.push((suite, vec![c])),
        }
    }
    for (suite, checks) in groups {
        let _ = writeln!(out, "## {suite}\n");
        let _ = writeln!(out, "| id | status | expected | computed | reference |");
        let _ = writeln!(out, "|---|---|---|---|---|");
        for c in checks {
            let _ = writeln!(
                out,
                "| {} | {} | {} | {} | {} |",
                escape(&c.id),
                c.status.as_str(),
                escape(&c.expected.markdown()),
                escape(&c.computed.markdown()),
                escape(&c.paper_ref)
            );
        }
        out.push('\n');
    }
    out
}
