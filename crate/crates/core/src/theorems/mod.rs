//! Executable verification suites. Each suite walks a grid of parameters,
//! checks every cell exactly, and reports pass, fail, or a documented
//! discrepancy per cell.

mod checks;
mod suites;

use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::QsymError;

pub use checks::{
    alternating_sum, binom_sides, linear_extension_expansion, product_closure_cases, rank_at_rho,
    vanishing_parameters, verify_binom_lemma, verify_dimension, verify_expansion_agreement,
    verify_product_closure, verify_spanning_set, verify_symbolic_vanishing_identity, verify_vanishing,
    ClosureCase,
};
pub use suites::{run_all, run_suite};

/// Upper bounds on the degree `n` and the parameter `p` for a run.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct Bounds {
    pub max_n: usize,
    pub max_p: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CaseStatus {
    Pass,
    Fail,
    /// A known disagreement with a stated formula, reported but not failing.
    Discrepancy,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CaseResult {
    pub case: String,
    pub status: CaseStatus,
    pub detail: String,
}

impl CaseResult {
    pub fn check(case: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        CaseResult {
            case: case.into(),
            status: if ok { CaseStatus::Pass } else { CaseStatus::Fail },
            detail: detail.into(),
        }
    }

    pub fn discrepancy(case: impl Into<String>, detail: impl Into<String>) -> Self {
        CaseResult { case: case.into(), status: CaseStatus::Discrepancy, detail: detail.into() }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Basis,
    Binom,
    Coproduct,
    Counts,
    Dimension,
    Expansion,
    Gamma,
    Kernel,
    Product,
    Symbolic,
    Vanishing,
}

impl Suite {
    /// Every suite, sorted by name.
    pub const ALL: [Suite; 11] = [
        Suite::Basis,
        Suite::Binom,
        Suite::Coproduct,
        Suite::Counts,
        Suite::Dimension,
        Suite::Expansion,
        Suite::Gamma,
        Suite::Kernel,
        Suite::Product,
        Suite::Symbolic,
        Suite::Vanishing,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Basis => "basis",
            Suite::Binom => "binom",
            Suite::Coproduct => "coproduct",
            Suite::Counts => "counts",
            Suite::Dimension => "dimension",
            Suite::Expansion => "expansion",
            Suite::Gamma => "gamma",
            Suite::Kernel => "kernel",
            Suite::Product => "product",
            Suite::Symbolic => "symbolic",
            Suite::Vanishing => "vanishing",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = QsymError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| QsymError::Parse(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub suite: Suite,
    pub bounds: Bounds,
    pub cases: Vec<CaseResult>,
    pub elapsed: Duration,
}

impl VerificationReport {
    /// True when no case failed; documented discrepancies do not fail a suite.
    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.status != CaseStatus::Fail)
    }

    pub fn count(&self, status: CaseStatus) -> usize {
        self.cases.iter().filter(|c| c.status == status).count()
    }

    pub fn failures(&self) -> impl Iterator<Item = &CaseResult> {
        self.cases.iter().filter(|c| c.status == CaseStatus::Fail)
    }

    /// Deterministic JSON; timing is left out.
    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.suite,
            "bounds": self.bounds,
            "passed": self.passed(),
            "cases": self.cases,
        })
    }

    /// One summary line, then one line per failure or discrepancy.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{} {}: {} pass, {} fail, {} discrepancy\n",
            if self.passed() { "PASS" } else { "FAIL" },
            self.suite,
            self.count(CaseStatus::Pass),
            self.count(CaseStatus::Fail),
            self.count(CaseStatus::Discrepancy),
        );
        for case in self.cases.iter().filter(|c| c.status != CaseStatus::Pass) {
            let tag = match case.status {
                CaseStatus::Fail => "fail",
                _ => "discrepancy",
            };
            out.push_str(&format!("  {tag} {}: {}\n", case.case, case.detail));
        }
        out
    }
}
