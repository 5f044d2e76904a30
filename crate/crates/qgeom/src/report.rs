//! Shared check/report records emitted by every verification sweep and
//! serialized by the CLI.

use serde::Serialize;

/// One verified (or monitored) statement.
///
/// `lhs`/`rhs` are strings so that exact big-integer and rational values
/// survive serialization unchanged. `ratio` is a tightness indicator
/// where one is meaningful (lhs/rhs for bounds).
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub paper_ref: String,
    pub holds: bool,
    pub lhs: String,
    pub rhs: String,
    pub ratio: Option<f64>,
}

impl Check {
    pub fn exact<T: std::fmt::Display, U: std::fmt::Display>(
        name: String,
        statement: &str,
        lhs: &T,
        rhs: &U,
    ) -> Check {
        let (l, r) = (lhs.to_string(), rhs.to_string());
        Check {
            name,
            paper_ref: statement.to_string(),
            holds: l == r,
            lhs: l,
            rhs: r,
            ratio: None,
        }
    }

    pub fn bound(
        name: String,
        statement: &str,
        holds: bool,
        lhs: String,
        rhs: String,
        ratio: Option<f64>,
    ) -> Check {
        Check { name, paper_ref: statement.to_string(), holds, lhs, rhs, ratio }
    }

    /// Monitored quantity: recorded but never a failure.
    pub fn report(
        name: String,
        statement: &str,
        lhs: String,
        rhs: String,
        ratio: Option<f64>,
    ) -> Check {
        Check { name, paper_ref: statement.to_string(), holds: true, lhs, rhs, ratio }
    }
}

pub fn all_hold(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.holds)
}

pub fn failures(checks: &[Check]) -> Vec<&Check> {
    checks.iter().filter(|c| !c.holds).collect()
}
