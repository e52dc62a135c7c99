//! Acceptance checks for `causalreg`, each compared against an oracle from
//! [`oracles`] or against a closed-form constant.

pub mod criteria;
pub mod oracles;

use std::fmt;
use std::time::Duration;

use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct CheckOutcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub limit: Duration,
}

impl CheckOutcome {
    pub fn within_time(&self) -> bool {
        self.elapsed <= self.limit
    }

    pub fn ok(&self) -> bool {
        self.passed && self.within_time()
    }

    /// Status line without timing, stable across runs.
    pub fn line(&self) -> String {
        let status = if self.ok() { "PASS" } else { "FAIL" };
        format!("[{status}] {:02} {:<28} {}", self.id, self.name, self.detail)
    }
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} ({:.3} s, limit {} s)",
            self.line(),
            self.elapsed.as_secs_f64(),
            self.limit.as_secs()
        )
    }
}

pub const CRITERIA: u8 = 11;

/// Runs criterion `id` (1 to 11); randomized ones draw from `seed`.
pub fn run_one(id: u8, seed: u64) -> Option<CheckOutcome> {
    use criteria::*;
    Some(match id {
        1 => schwinger_mass(),
        2 => dispersion_consistency(),
        3 => transversality(seed),
        4 => oracle_equivalence(),
        5 => gauge_violation_contrast(),
        6 => anomaly_coefficient(seed),
        7 => anomaly_2d_independence(),
        8 => smearing_covariance(seed),
        9 => bosonization(seed),
        10 => clifford_identities(seed),
        11 => finite_part_engine(seed),
        _ => return None,
    })
}

pub fn run_all(seed: u64) -> Vec<CheckOutcome> {
    (1..=CRITERIA).filter_map(|id| run_one(id, seed)).collect()
}
