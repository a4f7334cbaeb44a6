//! Shared fixtures for the covering benchmarks.

use bercov_core::glue::{ConstructionParams, MatchingRule};
use bercov_core::interval::Interval;
use bercov_core::rational::rat;

/// The standard benchmark construction: p = 3, delta = 1, t0 = 0.
pub fn standard_params(truncation: u32) -> ConstructionParams {
    ConstructionParams {
        p: 3,
        skeleton: Interval::open(rat(-2), rat(2)),
        t0: rat(0),
        delta: rat(1),
        truncation,
        matching: MatchingRule::Shift,
    }
}
