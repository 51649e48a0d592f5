//! Named residual checks and verification reports.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::scalar::{Residual, Scalar, Tolerance};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// Reported value, not judged.
    Info,
    /// An implication whose hypotheses do not hold on this instance.
    Vacuous,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    /// A failure falsifies a universal statement and fails the run.
    Asserted,
    /// The statement needs a global argument (compactness, integration) that
    /// a single left-invariant instance cannot certify; disagreement is
    /// reported but does not fail the run.
    InstanceConsistentOnly,
    Informational,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub residual: String,
    pub verdict: Verdict,
    pub anchor: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub hypotheses: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub conclusions: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
}

impl Check {
    /// An asserted identity: passes iff the residual vanishes within `tol`.
    pub fn identity<S: Scalar>(name: &str, anchor: &str, r: &Residual<S>, tol: Tolerance) -> Check {
        Check {
            name: name.to_string(),
            residual: r.render(),
            verdict: if r.passes(tol) {
                Verdict::Pass
            } else {
                Verdict::Fail
            },
            anchor: anchor.to_string(),
            status: Status::Asserted,
            hypotheses: Vec::new(),
            conclusions: Vec::new(),
            value: None,
        }
    }

    /// An identity whose hypotheses are listed; vacuous when any is false.
    pub fn conditional_identity<S: Scalar>(
        name: &str,
        anchor: &str,
        hypotheses: &[(&str, bool)],
        r: &Residual<S>,
        tol: Tolerance,
    ) -> Check {
        let mut c = Check::identity(name, anchor, r, tol);
        c.hypotheses = render_flags(hypotheses);
        if !hypotheses.iter().all(|(_, h)| *h) {
            c.verdict = Verdict::Vacuous;
        }
        c
    }

    /// A reported value.
    pub fn info(name: &str, anchor: &str, value: impl Into<String>) -> Check {
        Check {
            name: name.to_string(),
            residual: "-".to_string(),
            verdict: Verdict::Info,
            anchor: anchor.to_string(),
            status: Status::Informational,
            hypotheses: Vec::new(),
            conclusions: Vec::new(),
            value: Some(value.into()),
        }
    }

    /// A boolean flag derived from a residual (true iff the residual vanishes).
    pub fn flag<S: Scalar>(name: &str, anchor: &str, r: &Residual<S>, tol: Tolerance) -> Check {
        let holds = r.passes(tol);
        Check {
            name: name.to_string(),
            residual: r.render(),
            verdict: Verdict::Info,
            anchor: anchor.to_string(),
            status: Status::Informational,
            hypotheses: Vec::new(),
            conclusions: Vec::new(),
            value: Some(holds.to_string()),
        }
    }

    /// `hypotheses ⇒ conclusions` on this instance.
    pub fn implication(
        name: &str,
        anchor: &str,
        hypotheses: &[(&str, bool)],
        conclusions: &[(&str, bool)],
        status: Status,
    ) -> Check {
        let hyp = hypotheses.iter().all(|(_, h)| *h);
        let con = conclusions.iter().all(|(_, c)| *c);
        let verdict = match (hyp, con, status) {
            (false, _, _) => Verdict::Vacuous,
            (true, true, _) => Verdict::Pass,
            (true, false, Status::Asserted) => Verdict::Fail,
            (true, false, _) => Verdict::Info,
        };
        Check {
            name: name.to_string(),
            residual: if hyp && !con { "1" } else { "0" }.to_string(),
            verdict,
            anchor: anchor.to_string(),
            status,
            hypotheses: render_flags(hypotheses),
            conclusions: render_flags(conclusions),
            value: None,
        }
    }

    /// `left ⇔ right` on this instance.
    pub fn equivalence(
        name: &str,
        anchor: &str,
        left: &[(&str, bool)],
        right: &[(&str, bool)],
        status: Status,
    ) -> Check {
        let l = left.iter().all(|(_, h)| *h);
        let r = right.iter().all(|(_, c)| *c);
        let verdict = match (l == r, status) {
            (true, _) => Verdict::Pass,
            (false, Status::Asserted) => Verdict::Fail,
            (false, _) => Verdict::Info,
        };
        Check {
            name: name.to_string(),
            residual: if l == r { "0" } else { "1" }.to_string(),
            verdict,
            anchor: anchor.to_string(),
            status,
            hypotheses: render_flags(left),
            conclusions: render_flags(right),
            value: None,
        }
    }

    /// Restricts the check to instances where `holds`; otherwise vacuous.
    pub fn given(mut self, name: &str, holds: bool) -> Check {
        self.hypotheses.insert(0, format!("{name}={holds}"));
        if !holds {
            self.verdict = Verdict::Vacuous;
            self.residual = "0".to_string();
        }
        self
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Asserted && self.verdict == Verdict::Fail
    }
}

fn render_flags(flags: &[(&str, bool)]) -> Vec<String> {
    flags.iter().map(|(n, v)| format!("{n}={v}")).collect()
}

/// Ordered collection of checks for one instance.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub instance: String,
    pub mode: String,
    pub verdict: Verdict,
    pub conventions: BTreeMap<String, String>,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new(instance: impl Into<String>, mode: &str) -> Self {
        VerificationReport {
            instance: instance.into(),
            mode: mode.to_string(),
            verdict: Verdict::Pass,
            conventions: BTreeMap::new(),
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, check: Check) {
        if check.failed() {
            self.verdict = Verdict::Fail;
        }
        self.checks.push(check);
    }

    pub fn extend(&mut self, checks: impl IntoIterator<Item = Check>) {
        for c in checks {
            self.push(c);
        }
    }

    pub fn convention(&mut self, key: &str, value: impl Into<String>) {
        self.conventions.insert(key.to_string(), value.into());
    }

    pub fn passed(&self) -> bool {
        self.verdict != Verdict::Fail
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.failed())
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}
