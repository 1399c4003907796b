//! Shared parameter sets for the benchmarks.

use happy_core::FunctionParams;

/// Parameters in the closed-form count domain `0 < c < 3b − 3` for `b ≤ b_max`.
pub fn count_domain(b_max: u64) -> Vec<FunctionParams> {
    (2..=b_max)
        .flat_map(|b| (1..3 * b - 3).map(move |c| FunctionParams::new(c, b).expect("b ≥ 2")))
        .collect()
}
