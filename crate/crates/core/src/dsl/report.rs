use std::fmt::Write as _;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Unsupported,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Unsupported => "UNSUPPORTED",
        }
    }
}

/// Outcome of one check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    /// The check as written, e.g. `cybe r.dj on sl3`.
    pub name: String,
    pub line: usize,
    pub status: Status,
    /// Witnesses, residuals and measured quantities, one rendering per line.
    pub details: Vec<String>,
    /// Parameter conditions the result depends on, e.g. `xi != 0`.
    pub assumptions: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u64>,
}

/// Structured form:
///
/// ```text
/// { "order": D, "assumptions": [..],
///   "checks": [{ "name", "line", "status": "pass"|"fail"|"unsupported",
///                "details": [..], "assumptions": [..], "wall_ms"? }],
///   "summary": { "pass", "fail", "unsupported" } }
/// ```
///
/// `wall_ms` is present only when timing was requested, so the tree is
/// byte-stable across runs by default.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub order: u32,
    pub assumptions: Vec<String>,
    pub checks: Vec<CheckReport>,
    pub summary: Summary,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub unsupported: usize,
}

impl Report {
    pub fn new(order: u32, assumptions: Vec<String>, checks: Vec<CheckReport>) -> Self {
        let mut summary = Summary::default();
        for c in &checks {
            match c.status {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::Unsupported => summary.unsupported += 1,
            }
        }
        Report {
            order,
            assumptions,
            checks,
            summary,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    /// 0 when every check passed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.all_passed() {
            0
        } else {
            1
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let _ = write!(out, "{:<11} line {:>3}  {}", c.status.label(), c.line, c.name);
            if let Some(ms) = c.wall_ms {
                let _ = write!(out, "  ({ms} ms)");
            }
            out.push('\n');
            for d in &c.details {
                let _ = writeln!(out, "    {d}");
            }
            if !c.assumptions.is_empty() {
                let _ = writeln!(out, "    assuming {}", c.assumptions.join(", "));
            }
        }
        if !self.assumptions.is_empty() {
            let _ = writeln!(out, "declared assumptions: {}", self.assumptions.join(", "));
        }
        let s = self.summary;
        let _ = writeln!(
            out,
            "{} checks: {} pass, {} fail, {} unsupported",
            self.checks.len(),
            s.pass,
            s.fail,
            s.unsupported
        );
        out
    }

    pub fn render_structured(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(status: Status) -> CheckReport {
        CheckReport {
            name: "jacobi sl2".into(),
            line: 1,
            status,
            details: vec![],
            assumptions: vec![],
            wall_ms: None,
        }
    }

    #[test]
    fn renderings_agree_on_status() {
        let r = Report::new(3, vec![], vec![check(Status::Pass), check(Status::Fail)]);
        let v: serde_json::Value = serde_json::from_str(&r.render_structured()).unwrap();
        let text = r.render_text();
        for (c, line) in v["checks"].as_array().unwrap().iter().zip(text.lines()) {
            let s = c["status"].as_str().unwrap().to_uppercase();
            assert!(line.starts_with(&s), "{line} vs {s}");
        }
        assert_eq!(r.exit_code(), 1);
    }

    #[test]
    fn pass_only_report_exits_zero() {
        let r = Report::new(3, vec![], vec![check(Status::Pass)]);
        assert_eq!(r.exit_code(), 0);
        assert!(!r.render_text().is_empty());
        assert!(!r.render_structured().contains("wall_ms"));
    }
}
