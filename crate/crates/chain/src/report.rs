//! Pass/fail reports shared by every verification routine.

use std::fmt;

/// Outcome of a verification: passes until a failure is recorded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub name: String,
    pub passed: bool,
    /// Failure descriptions, first failure first.
    pub messages: Vec<String>,
}

impl Report {
    pub fn new(name: impl Into<String>) -> Self {
        Report { name: name.into(), passed: true, messages: Vec::new() }
    }

    pub fn fail(&mut self, msg: impl Into<String>) {
        self.passed = false;
        self.messages.push(msg.into());
    }

    /// Records a failure when `ok` is false.
    pub fn require(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        if !ok {
            self.fail(msg());
        }
    }

    /// Folds another report in, prefixing its messages with its name.
    pub fn absorb(&mut self, other: Report) {
        if !other.passed {
            self.passed = false;
            for m in other.messages {
                self.messages.push(format!("{}: {m}", other.name));
            }
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed {
            write!(f, "{}: pass", self.name)
        } else {
            write!(f, "{}: FAIL ({})", self.name, self.messages.join("; "))
        }
    }
}
