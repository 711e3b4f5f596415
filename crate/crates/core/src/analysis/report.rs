use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::subshift::ComplexityTable;

/// The first `n` at which an inequality failed, with both sides.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub n: usize,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InequalityCheck {
    pub name: String,
    pub relation: String,
    pub checked: Vec<usize>,
    /// Window values excluded because they fall below a threshold or
    /// outside the tables.
    pub skipped: Vec<usize>,
    /// Smallest `n₀` such that every checked `n ≥ n₀` passes.
    pub holds_from: Option<usize>,
    pub violation: Option<Violation>,
}

impl InequalityCheck {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Outcome of checking one claim over a finite window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub claim: String,
    pub constants: BTreeMap<String, String>,
    pub window: usize,
    pub checks: Vec<InequalityCheck>,
    pub table_digests: BTreeMap<String, String>,
}

impl BoundReport {
    pub fn new(claim: impl Into<String>, window: usize) -> Self {
        Self {
            claim: claim.into(),
            constants: BTreeMap::new(),
            window,
            checks: Vec::new(),
            table_digests: BTreeMap::new(),
        }
    }

    pub fn constant(mut self, name: &str, value: impl ToString) -> Self {
        self.constants.insert(name.to_string(), value.to_string());
        self
    }

    pub fn table(mut self, name: &str, table: &ComplexityTable) -> Self {
        self.table_digests.insert(name.to_string(), table.digest());
        self
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(InequalityCheck::passed)
    }

    pub fn first_failure(&self) -> Option<(&InequalityCheck, &Violation)> {
        self.checks
            .iter()
            .find_map(|c| c.violation.as_ref().map(|v| (c, v)))
    }

    pub fn check(&self, name: &str) -> Option<&InequalityCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Runs one inequality over `ns`. `eval(n)` returns `None` when `n` is
    /// out of reach of the tables, else `(lhs, rhs, holds)`.
    pub fn run<I, F>(&mut self, name: &str, relation: &str, ns: I, mut eval: F)
    where
        I: IntoIterator<Item = usize>,
        F: FnMut(usize) -> Option<(BigUint, BigUint, bool)>,
    {
        let mut check = InequalityCheck {
            name: name.to_string(),
            relation: relation.to_string(),
            checked: Vec::new(),
            skipped: Vec::new(),
            holds_from: None,
            violation: None,
        };
        let mut last_fail = None;
        for n in ns {
            match eval(n) {
                None => check.skipped.push(n),
                Some((lhs, rhs, ok)) => {
                    check.checked.push(n);
                    if !ok {
                        last_fail = Some(n);
                        if check.violation.is_none() {
                            check.violation = Some(Violation {
                                n,
                                lhs: lhs.to_string(),
                                rhs: rhs.to_string(),
                            });
                        }
                    }
                }
            }
        }
        check.holds_from = match last_fail {
            None => check.checked.first().copied(),
            Some(f) => check.checked.iter().copied().find(|&n| n > f),
        };
        self.checks.push(check);
    }

    /// Aligned plain-text rendering.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        let _ = writeln!(s, "{:<28} {verdict}  (window {})", self.claim, self.window);
        for (k, v) in &self.constants {
            let _ = writeln!(s, "  {k:<24} = {v}");
        }
        for c in &self.checks {
            let status = if c.passed() { "ok" } else { "FAIL" };
            let _ = write!(
                s,
                "  {:<24} {:<4} {}  [{} checked",
                c.name,
                status,
                c.relation,
                c.checked.len()
            );
            if !c.skipped.is_empty() {
                let _ = write!(s, ", {} skipped", c.skipped.len());
            }
            let _ = writeln!(s, "]");
            if let Some(v) = &c.violation {
                let _ = writeln!(
                    s,
                    "    first failure at n = {}: {} vs {}",
                    v.n, v.lhs, v.rhs
                );
            }
        }
        s
    }
}
