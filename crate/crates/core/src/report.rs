//! Pass/fail outcomes of the structural checks.

use serde::Serialize;

/// Outcome of one check. A check passes when every residual is exactly zero
/// and every sub-check passes.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Verdict {
    pub check: String,
    pub passed: bool,
    /// Nonzero residual components, human readable.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub residuals: Vec<String>,
    /// Informational lines that do not affect the outcome.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub subchecks: Vec<Verdict>,
}

impl Verdict {
    /// Passing iff `residuals` is empty.
    pub fn from_residuals(check: impl Into<String>, residuals: Vec<String>) -> Self {
        Verdict {
            check: check.into(),
            passed: residuals.is_empty(),
            residuals,
            notes: Vec::new(),
            subchecks: Vec::new(),
        }
    }

    pub fn failed(check: impl Into<String>, reason: impl Into<String>) -> Self {
        Verdict::from_residuals(check, vec![reason.into()])
    }

    /// Conjunction: passes iff `self` and all `subs` pass.
    pub fn with_subchecks(mut self, subs: Vec<Verdict>) -> Self {
        self.passed = self.passed && subs.iter().all(|s| s.passed);
        self.subchecks.extend(subs);
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    /// Names of failing checks in this tree, depth first.
    pub fn failing(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.passed {
            let own = !self.residuals.is_empty();
            if own {
                out.push(self.check.clone());
            }
            for s in &self.subchecks {
                out.extend(s.failing());
            }
        }
        out
    }

    /// Indented text rendering.
    pub fn render(&self, indent: usize) -> String {
        let pad = "  ".repeat(indent);
        let mut s = format!(
            "{pad}{}: {}\n",
            self.check,
            if self.passed { "pass" } else { "FAIL" }
        );
        for r in &self.residuals {
            s.push_str(&format!("{pad}  residual {r}\n"));
        }
        for n in &self.notes {
            s.push_str(&format!("{pad}  note: {n}\n"));
        }
        for sub in &self.subchecks {
            s.push_str(&sub.render(indent + 1));
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conjunction() {
        let ok = Verdict::from_residuals("a", vec![]);
        let bad = Verdict::failed("b", "x = 1");
        let v = ok.clone().with_subchecks(vec![bad]);
        assert!(!v.passed);
        assert_eq!(v.failing(), vec!["b".to_string()]);
        assert!(ok.passed);
    }
}
