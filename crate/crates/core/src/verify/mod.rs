//! Batch checks of the idempotent system and of the algebraic relations,
//! assembled into deterministic reports.

mod relations;
mod system;

use std::fmt::Write as _;

use serde::Serialize;

use crate::algebra::AlgebraElement;
use crate::error::{Error, Result};

pub use relations::{random_parameters, verify_relations};
pub use system::{check_system, compute_idempotents, perturb, verify_idempotent_system, Construction};

/// Largest `|G|^n * n!` accepted by the suites.
pub const SIZE_CAP: u128 = 100_000;

pub fn size_estimate(order: usize, n: usize) -> u128 {
    let fact: u128 = (1..=n as u128).product();
    (order as u128).saturating_pow(n as u32).saturating_mul(fact)
}

/// Refuse jobs above [`SIZE_CAP`].
pub fn check_cap(order: usize, n: usize) -> Result<()> {
    let estimate = size_estimate(order, n);
    if estimate > SIZE_CAP {
        return Err(Error::SizeCap { estimate, cap: SIZE_CAP });
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// The first failing instance of a check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    /// Which instance failed: a tableau, a pair of tableaux or parameter values.
    pub instance: String,
    /// Structured serialization of the offending element.
    pub element: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub label: String,
    pub identity: String,
    pub instances: usize,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

impl CheckResult {
    /// Fold per-instance outcomes (`None` means the instance holds) into one result.
    pub fn collect(label: &str, identity: &str, outcomes: impl IntoIterator<Item = (String, Option<String>)>) -> Self {
        let mut instances = 0;
        let mut counterexample = None;
        for (instance, failure) in outcomes {
            instances += 1;
            if counterexample.is_none() {
                if let Some(element) = failure {
                    counterexample = Some(Counterexample { instance, element });
                }
            }
        }
        CheckResult {
            label: label.into(),
            identity: identity.into(),
            instances,
            status: if counterexample.is_some() { Status::Fail } else { Status::Pass },
            counterexample,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// `None` when the two sides agree, else the serialized difference.
pub(crate) fn residual(lhs: &AlgebraElement, rhs: &AlgebraElement) -> Option<String> {
    if lhs == rhs {
        None
    } else {
        Some((lhs - rhs).to_structured())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub group: String,
    pub n: usize,
    pub mode: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub construction: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }

    pub fn check(&self, label: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.label == label)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_human(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "suite: {}", self.suite);
        let _ = write!(s, "group: {}  n: {}  mode: {}", self.group, self.n, self.mode);
        if let Some(c) = &self.construction {
            let _ = write!(s, "  construction: {c}");
        }
        if let Some(seed) = self.seed {
            let _ = write!(s, "  seed: {seed}");
        }
        if let Some(trials) = self.trials {
            let _ = write!(s, "  trials: {trials}");
        }
        s.push('\n');
        for c in &self.checks {
            let tag = if c.passed() { "pass" } else { "FAIL" };
            let _ = writeln!(s, "[{tag}] {:<14} {}  ({} instances)", c.label, c.identity, c.instances);
            if let Some(ce) = &c.counterexample {
                let _ = writeln!(s, "       at {}", ce.instance);
                for line in ce.element.lines() {
                    let _ = writeln!(s, "         {line}");
                }
            }
        }
        let ok = self.checks.iter().filter(|c| c.passed()).count();
        let verdict = if self.passed() { "pass" } else { "fail" };
        let _ = writeln!(s, "result: {verdict} ({ok}/{} checks)", self.checks.len());
        s
    }
}
