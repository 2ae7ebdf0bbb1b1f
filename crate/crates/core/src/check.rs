use serde::Serialize;

use crate::algebra::{ElementId, FiniteAlgebra};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// Outcome of a single check.
///
/// `witness` is empty on pass, holds the violating tuple on fail and the unmet
/// precondition on skip. `evidence` carries illustrative tuples that do not
/// affect the status, such as where a converse breaks down.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub check_id: String,
    pub status: Status,
    pub witness: Vec<(String, String)>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub evidence: Vec<(String, String)>,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub note: String,
}

impl CheckResult {
    pub fn pass(id: impl Into<String>) -> Self {
        CheckResult {
            check_id: id.into(),
            status: Status::Pass,
            witness: Vec::new(),
            evidence: Vec::new(),
            note: String::new(),
        }
    }

    pub fn fail(id: impl Into<String>, witness: Vec<(String, String)>) -> Self {
        CheckResult {
            status: Status::Fail,
            witness,
            ..CheckResult::pass(id)
        }
    }

    pub fn skipped(id: impl Into<String>, requirement: &str) -> Self {
        CheckResult {
            status: Status::Skipped,
            witness: vec![("requires".to_string(), requirement.to_string())],
            ..CheckResult::pass(id)
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = note.into();
        self
    }

    pub fn with_evidence(mut self, evidence: Vec<(String, String)>) -> Self {
        self.evidence = evidence;
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }

    /// Value bound to `role` in the witness.
    pub fn witness_value(&self, role: &str) -> Option<&str> {
        self.witness
            .iter()
            .find(|(r, _)| r == role)
            .map(|(_, v)| v.as_str())
    }

    /// One-line human summary.
    pub fn summary(&self) -> String {
        let status = match self.status {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        };
        let mut line = format!("{:<28} {status}", self.check_id);
        if !self.witness.is_empty() {
            line.push_str(&format!("  [{}]", render_pairs(&self.witness)));
        }
        if !self.evidence.is_empty() {
            line.push_str(&format!("  evidence [{}]", render_pairs(&self.evidence)));
        }
        if !self.note.is_empty() {
            line.push_str(&format!("  ({})", self.note));
        }
        line
    }
}

pub(crate) fn render_pairs(pairs: &[(String, String)]) -> String {
    pairs
        .iter()
        .map(|(r, v)| format!("{r}={v}"))
        .collect::<Vec<_>>()
        .join(", ")
}

/// First tuple in lexicographic order (first variable outermost) where `holds`
/// is false.
pub(crate) fn first_violation(
    n: usize,
    arity: usize,
    mut holds: impl FnMut(&[ElementId]) -> bool,
) -> Option<Vec<ElementId>> {
    let mut tuple = vec![ElementId(0); arity];
    if n == 0 {
        return None;
    }
    loop {
        if !holds(&tuple) {
            return Some(tuple);
        }
        let mut k = arity;
        loop {
            if k == 0 {
                return None;
            }
            k -= 1;
            if tuple[k].0 + 1 < n {
                tuple[k].0 += 1;
                for t in tuple.iter_mut().skip(k + 1) {
                    *t = ElementId(0);
                }
                break;
            }
        }
    }
}

/// Names a tuple by role.
pub(crate) fn named(
    alg: &FiniteAlgebra,
    roles: &[&str],
    tuple: &[ElementId],
) -> Vec<(String, String)> {
    roles
        .iter()
        .zip(tuple)
        .map(|(r, &x)| (r.to_string(), alg.name(x).to_string()))
        .collect()
}

pub(crate) const XYZU: [&str; 4] = ["x", "y", "z", "u"];
