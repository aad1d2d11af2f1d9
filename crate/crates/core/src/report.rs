//! Verification verdicts with counterexample witnesses.
//!
//! Every checker reports the first violating index tuple in lexicographic
//! order plus a total violation count, so diagnostics are deterministic.

use serde::{Deserialize, Serialize};

use crate::rational::{format_rat, Rat};

/// One concrete counterexample: the violated equation (by its established
/// number), the basis-index tuple, and both side values.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct Witness {
    pub equation: String,
    pub indices: Vec<usize>,
    pub lhs: Vec<String>,
    pub rhs: Vec<String>,
}

impl Witness {
    pub fn new(equation: &str, indices: Vec<usize>, lhs: &[Rat], rhs: &[Rat]) -> Self {
        Witness {
            equation: equation.to_string(),
            indices,
            lhs: lhs.iter().map(format_rat).collect(),
            rhs: rhs.iter().map(format_rat).collect(),
        }
    }
}

/// Outcome of a verification: pass, or fail with the first witness and the
/// number of violations found.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct Verdict {
    pub pass: bool,
    pub violations: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl Verdict {
    pub fn pass() -> Self {
        Verdict {
            pass: true,
            violations: 0,
            witness: None,
        }
    }
}

/// Accumulates violations while keeping only the sequential-first witness.
#[derive(Debug, Default)]
pub struct Checker {
    violations: usize,
    first: Option<Witness>,
}

impl Checker {
    pub fn new() -> Self {
        Checker::default()
    }

    pub fn record(&mut self, equation: &str, indices: Vec<usize>, lhs: &[Rat], rhs: &[Rat]) {
        if self.first.is_none() {
            self.first = Some(Witness::new(equation, indices, lhs, rhs));
        }
        self.violations += 1;
    }

    /// Checks `lhs == rhs` componentwise, recording a witness otherwise.
    pub fn expect_eq(&mut self, equation: &str, indices: &[usize], lhs: &[Rat], rhs: &[Rat]) {
        if lhs != rhs {
            self.record(equation, indices.to_vec(), lhs, rhs);
        }
    }

    pub fn ok(&self) -> bool {
        self.violations == 0
    }

    pub fn finish(self) -> Verdict {
        Verdict {
            pass: self.violations == 0,
            violations: self.violations,
            witness: self.first,
        }
    }
}

/// A named family of checks, reported independently (e.g. the separate
/// equation families of a homomorphism or Nijenhuis verification).
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct NamedVerdict {
    pub name: String,
    #[serde(flatten)]
    pub verdict: Verdict,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct MultiVerdict {
    pub pass: bool,
    pub checks: Vec<NamedVerdict>,
}

impl MultiVerdict {
    pub fn from_checks(checks: Vec<(String, Verdict)>) -> Self {
        MultiVerdict {
            pass: checks.iter().all(|(_, v)| v.pass),
            checks: checks
                .into_iter()
                .map(|(name, verdict)| NamedVerdict { name, verdict })
                .collect(),
        }
    }

    pub fn check(&self, name: &str) -> Option<&Verdict> {
        self.checks
            .iter()
            .find(|c| c.name == name)
            .map(|c| &c.verdict)
    }
}
