//! Text and JSON rendering of reports.

use std::fmt::Write;

use holonomy_core::{Check, Verdict, VerificationReport};
use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

/// The outcome of one bundled manifest against its expected outcome.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FixtureResult {
    pub name: String,
    pub expected: String,
    pub observed: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
}

impl FixtureResult {
    pub fn as_expected(&self) -> bool {
        self.expected == self.observed
    }
}

/// Top-level JSON document.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Document {
    pub schema: u32,
    pub passed: bool,
    pub reports: Vec<VerificationReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub fixtures: Vec<FixtureResult>,
}

impl Document {
    pub fn from_reports(reports: Vec<VerificationReport>) -> Self {
        Document {
            schema: SCHEMA_VERSION,
            passed: reports.iter().all(VerificationReport::passed),
            reports,
            fixtures: Vec::new(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self, color: bool) -> String {
        let mut out = String::new();
        for r in &self.reports {
            out.push_str(&render_report(r, color));
        }
        if !self.fixtures.is_empty() {
            out.push_str("fixtures:\n");
            for f in &self.fixtures {
                let tag = if f.as_expected() {
                    paint("ok", GREEN, color)
                } else {
                    paint("UNEXPECTED", RED, color)
                };
                let _ = write!(
                    out,
                    "  {tag:<4} {} expected {} observed {}",
                    f.name, f.expected, f.observed
                );
                if let Some(m) = &f.message {
                    let _ = write!(out, " ({m})");
                }
                out.push('\n');
            }
        }
        let overall = if self.passed {
            paint("PASS", GREEN, color)
        } else {
            paint("FAIL", RED, color)
        };
        let _ = writeln!(out, "overall: {overall}");
        out
    }
}

const GREEN: &str = "32";
const RED: &str = "31";
const CYAN: &str = "36";
const DIM: &str = "2";

fn paint(s: &str, code: &str, color: bool) -> String {
    if color {
        format!("\x1b[{code}m{s}\x1b[0m")
    } else {
        s.to_string()
    }
}

fn verdict_tag(c: &Check, color: bool) -> String {
    let (text, code) = match c.verdict {
        Verdict::Pass => ("PASS", GREEN),
        Verdict::Fail if c.failed() => ("FAIL", RED),
        Verdict::Fail => ("DIFF", CYAN),
        Verdict::Info => ("INFO", CYAN),
        Verdict::Vacuous => ("VAC", DIM),
    };
    paint(&format!("{text:<4}"), code, color)
}

pub fn render_report(r: &VerificationReport, color: bool) -> String {
    let mut out = String::new();
    let verdict = if r.passed() {
        paint("PASS", GREEN, color)
    } else {
        paint("FAIL", RED, color)
    };
    let _ = writeln!(out, "== {} [{}] {}", r.instance, r.mode, verdict);
    for c in &r.checks {
        let _ = write!(out, "  {} {}", verdict_tag(c, color), c.name);
        match (&c.verdict, &c.value) {
            (Verdict::Info, Some(v)) if c.hypotheses.is_empty() => {
                let _ = write!(out, " = {v}");
            }
            (_, Some(v)) => {
                let _ = write!(out, "  residual {}  {v}", c.residual);
            }
            _ => {
                let _ = write!(out, "  residual {}", c.residual);
            }
        }
        if c.failed() && !c.hypotheses.is_empty() {
            let _ = write!(
                out,
                "  [{}] => [{}]",
                c.hypotheses.join(", "),
                c.conclusions.join(", ")
            );
        }
        out.push('\n');
    }
    if !r.conventions.is_empty() {
        out.push_str("  conventions:\n");
        for (k, v) in &r.conventions {
            let _ = writeln!(out, "    {k}: {v}");
        }
    }
    out
}

/// ANSI colour unless `HF_COLOR=0` or stdout is not a terminal.
pub fn color_enabled() -> bool {
    use std::io::IsTerminal;
    match std::env::var("HF_COLOR") {
        Ok(v) if v == "0" => false,
        Ok(v) if v == "1" => true,
        _ => std::io::stdout().is_terminal(),
    }
}
