//! Brute-force fixed-point enumeration and the structural facts it exposes:
//! consecutive runs, digit reflections, and the parity obstruction.

use rayon::prelude::*;

use crate::error::{HappyError, Result};
use crate::happy::{digit_square_sum, is_fixed_point, FunctionParams};

/// Default cap on [`search_bound`] for [`enumerate_fixed_points`] (2⁴⁰).
pub const DEFAULT_MAX_BOUND: u64 = 1 << 40;

/// A maximal run of consecutive fixed points `first, first + 1, …, last`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Run {
    pub first: u64,
    pub last: u64,
}

impl Run {
    pub fn len(&self) -> u64 {
        self.last - self.first + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Every fixed point of one function together with the structure derived
/// from it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedPointReport {
    pub params: FunctionParams,
    /// Exclusive scan limit; no fixed point is `≥ bound`.
    pub bound: u64,
    pub fixed_points: Vec<u64>,
    pub runs: Vec<Run>,
    /// Pairs `(a, ã)` with `a < ã`, both fixed.
    pub reflection_pairs: Vec<(u64, u64)>,
}

impl FixedPointReport {
    pub fn count(&self) -> usize {
        self.fixed_points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fixed_points.is_empty()
    }

    pub fn contains(&self, a: u64) -> bool {
        self.fixed_points.binary_search(&a).is_ok()
    }

    /// Runs of length two.
    pub fn consecutive_pairs(&self) -> impl Iterator<Item = &Run> {
        self.runs.iter().filter(|r| r.len() >= 2)
    }
}

/// Exclusive upper limit `B = b^(d*−1)` on fixed points, where `d*` is the
/// least `d ≥ 2` with `b^(d−1) > c + d(b−1)²`.
///
/// A `d`-digit number is at least `b^(d−1)` while its image is at most
/// `c + d(b−1)²`, and once the power wins it keeps winning for longer numbers.
pub fn search_bound(p: FunctionParams) -> Result<u64> {
    let b = u128::from(p.b());
    let c = u128::from(p.c());
    let max_sq = (b - 1) * (b - 1);
    let mut power = b; // b^(d−1)
    let mut d: u128 = 2;
    loop {
        if power > c + d * max_sq {
            return u64::try_from(power).map_err(|_| HappyError::Overflow("search bound"));
        }
        power = power
            .checked_mul(b)
            .filter(|&v| v <= u128::from(u64::MAX))
            .ok_or(HappyError::Overflow("search bound"))?;
        d += 1;
    }
}

/// Enumerates all fixed points with the default bound cap.
pub fn enumerate_fixed_points(p: FunctionParams) -> Result<FixedPointReport> {
    enumerate_fixed_points_capped(p, DEFAULT_MAX_BOUND)
}

/// Linear scan of `[1, B)`; fails with [`HappyError::BoundExceeded`] when the
/// search bound is above `cap`.
pub fn enumerate_fixed_points_capped(p: FunctionParams, cap: u64) -> Result<FixedPointReport> {
    let bound = search_bound(p)?;
    if bound > cap {
        return Err(HappyError::BoundExceeded { bound, cap });
    }
    let mut fixed_points = Vec::new();
    for a in 1..bound {
        if digit_square_sum(a, p.b())? + p.c() == a {
            fixed_points.push(a);
        }
    }
    Ok(build_report(p, bound, fixed_points))
}

/// Enumerates every `c` in `c_lo..=c_hi` for base `b`, in parallel over `c`.
/// The result is ordered by `c` regardless of the thread count.
pub fn scan_constants(b: u64, c_lo: u64, c_hi: u64, cap: u64) -> Result<Vec<FixedPointReport>> {
    if c_lo > c_hi {
        return Err(HappyError::domain(format!("empty range: {c_lo} > {c_hi}")));
    }
    FunctionParams::new(0, b)?;
    (c_lo..=c_hi)
        .into_par_iter()
        .map(|c| enumerate_fixed_points_capped(FunctionParams::new(c, b)?, cap))
        .collect()
}

fn build_report(params: FunctionParams, bound: u64, fixed_points: Vec<u64>) -> FixedPointReport {
    let mut runs: Vec<Run> = Vec::new();
    for &a in &fixed_points {
        match runs.last_mut() {
            Some(run) if run.last + 1 == a => run.last = a,
            _ => runs.push(Run { first: a, last: a }),
        }
    }
    let b = params.b();
    let reflection_pairs = fixed_points
        .iter()
        .filter_map(|&a| reflect(a, b).ok().map(|r| (a, r)))
        .filter(|&(a, r)| a < r && fixed_points.binary_search(&r).is_ok())
        .collect();
    FixedPointReport { params, bound, fixed_points, runs, reflection_pairs }
}

/// Fixed points of the form `u·bⁿ` with `0 < u < b`, checked one `u` at a time.
pub fn f_n_set(p: FunctionParams, n: u32) -> Result<Vec<u64>> {
    let b = p.b();
    let scale = b.checked_pow(n).ok_or(HappyError::Overflow("bⁿ"))?;
    let mut out = Vec::new();
    for u in 1..b {
        let a = u.checked_mul(scale).ok_or(HappyError::Overflow("u·bⁿ"))?;
        if is_fixed_point(p, a)? {
            out.push(a);
        }
    }
    Ok(out)
}

/// Replaces digit `a₁` of `a` by `b − a₁`. Requires `a₁ ≠ 0`.
pub fn reflect(a: u64, b: u64) -> Result<u64> {
    if b < 2 {
        return Err(HappyError::InvalidBase(b));
    }
    if a < b {
        return Err(HappyError::domain(format!("{a} has no digit a₁ in base {b}")));
    }
    let a1 = (a / b) % b;
    if a1 == 0 {
        return Err(HappyError::domain(format!("digit a₁ of {a} in base {b} is zero")));
    }
    // ã = a + (b − 2a₁)·b
    b.checked_mul(b)
        .and_then(|up| a.checked_add(up))
        .zip(a1.checked_mul(2 * b))
        .and_then(|(raised, down)| raised.checked_sub(down))
        .ok_or(HappyError::Overflow("reflection"))
}

/// False only when the base is odd and `c` is odd, which rules out every
/// fixed point. Even bases carry no blanket obstruction.
pub fn parity_admissible(p: FunctionParams) -> bool {
    p.b().is_multiple_of(2) || p.c().is_multiple_of(2)
}
