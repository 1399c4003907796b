//! Deserts: runs of consecutive constants `c` for which `S_[c,b]` has no
//! fixed point, found by scanning or constructed from the digit-count bounds.
//!
//! The constructed deserts for small bases sit far beyond `u64` (for `b = 2`
//! a `k`-desert starts near `2^(k+3)`), so bounds and intervals use a 256-bit
//! integer.

use std::fmt;

use bnum::types::U256;

use crate::error::{HappyError, Result};
use crate::happy::{from_digits, to_digits, DigitVector, FunctionParams};
use crate::search::{scan_constants, DEFAULT_MAX_BOUND};

/// Fixed-width integer for desert bounds and intervals.
pub type Wide = U256;

fn wide(v: u64) -> Wide {
    Wide::from(v)
}

/// The `c` for which `a` would be a fixed point: `Σ aᵢ(bⁱ − aᵢ)`.
/// Negative when no constant `c ≥ 0` works.
pub fn c_of_fixed_point(a: u64, b: u64) -> Result<i128> {
    let digits = to_digits(a, b)?;
    let mut power: i128 = 1;
    let mut c: i128 = 0;
    for (i, &d) in digits.digits().iter().enumerate() {
        if i > 0 {
            power *= i128::from(b);
        }
        let d = i128::from(d);
        c += d * (power - d);
    }
    Ok(c)
}

/// `m_{b,n}` and `M_{b,n}`: the least and greatest `c` for which `S_[c,b]`
/// has an `(n+1)`-digit fixed point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundsPair {
    pub b: u64,
    pub n: u32,
    /// `m_{b,n} = bⁿ − b² + 3b − 3`
    pub lower: Wide,
    /// `M_{b,n} = b^{n+1} − b² − (n−1)(b−1)² + (b − ⌊b/2⌋)⌊b/2⌋`
    pub upper: Wide,
}

fn check_bounds_args(b: u64, n: u32) -> Result<()> {
    if b < 2 {
        return Err(HappyError::InvalidBase(b));
    }
    if n < 2 {
        return Err(HappyError::domain(format!("n must be ≥ 2 (got {n})")));
    }
    Ok(())
}

pub fn bounds(b: u64, n: u32) -> Result<BoundsPair> {
    check_bounds_args(b, n)?;
    let overflow = || HappyError::Overflow("digit-count bounds");
    let bw = wide(b);
    let b_n = bw.checked_pow(n).ok_or_else(overflow)?;
    let b_n1 = b_n.checked_mul(bw).ok_or_else(overflow)?;
    let b_sq = bw * bw;
    let half = b / 2;
    let lower = (b_n - b_sq) + wide(3 * b - 3);
    let spread = wide(u64::from(n - 1)) * wide(b - 1) * wide(b - 1);
    let upper = b_n1
        .checked_sub(b_sq)
        .and_then(|v| v.checked_sub(spread))
        .and_then(|v| v.checked_add(wide(b - half) * wide(half)))
        .ok_or_else(overflow)?;
    Ok(BoundsPair { b, n, lower, upper })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Extremum {
    Min,
    Max,
}

/// Digit pattern of the `(n+1)`-digit fixed point attaining `m_{b,n}` (min:
/// `1 0…0 (b−1)`) or `M_{b,n}` (max: `(b−1)…(b−1) ⌊b/2⌋ 0`).
pub fn extremal_digits(b: u64, n: u32, which: Extremum) -> Result<DigitVector> {
    check_bounds_args(b, n)?;
    let len = n as usize + 1;
    let mut digits = vec![0; len];
    match which {
        Extremum::Min => {
            digits[0] = b - 1;
            digits[len - 1] = 1;
        }
        Extremum::Max => {
            digits[1] = b / 2;
            for d in &mut digits[2..] {
                *d = b - 1;
            }
        }
    }
    DigitVector::new(digits, b)
}

/// The extremal witness `a` and the constant `c` it is fixed for.
pub fn extremal_fixed_point(b: u64, n: u32, which: Extremum) -> Result<(u64, u64)> {
    let a = from_digits(&extremal_digits(b, n, which)?)?;
    let c = c_of_fixed_point(a, b)?;
    let c = u64::try_from(c)
        .map_err(|_| HappyError::Internal(format!("witness {a} base {b} has c = {c}")))?;
    Ok((a, c))
}

/// An inclusive run `[c_start, c_end]` of constants with no fixed points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DesertInterval {
    pub b: u64,
    pub c_start: Wide,
    pub c_end: Wide,
    /// The run starts at the scan window's lower edge (and `c_start > 0`),
    /// so it may extend further down.
    pub truncated_low: bool,
    /// The run ends at the scan window's upper edge.
    pub truncated_high: bool,
}

impl DesertInterval {
    pub fn length(&self) -> Wide {
        self.c_end - self.c_start + Wide::ONE
    }

    pub fn is_maximal_in_window(&self) -> bool {
        !self.truncated_low && !self.truncated_high
    }

    /// The interval as `u64` endpoints, when it fits.
    pub fn to_u64_range(&self) -> Option<(u64, u64)> {
        Some((u64::try_from(self.c_start).ok()?, u64::try_from(self.c_end).ok()?))
    }
}

impl fmt::Display for DesertInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}] length {}", self.c_start, self.c_end, self.length())?;
        if self.truncated_low || self.truncated_high {
            f.write_str(" (touches window edge)")?;
        }
        Ok(())
    }
}

/// Maximal fixed-point-free runs of `c` within `[c_lo, c_hi]`, certified by
/// full enumeration of every `c`.
pub fn desert_scan(b: u64, c_lo: u64, c_hi: u64) -> Result<Vec<DesertInterval>> {
    desert_scan_capped(b, c_lo, c_hi, DEFAULT_MAX_BOUND)
}

pub fn desert_scan_capped(b: u64, c_lo: u64, c_hi: u64, cap: u64) -> Result<Vec<DesertInterval>> {
    let reports = scan_constants(b, c_lo, c_hi, cap)?;
    let mut out: Vec<DesertInterval> = Vec::new();
    let mut open: Option<u64> = None;
    let close = |start: u64, end: u64, out: &mut Vec<DesertInterval>| {
        out.push(DesertInterval {
            b,
            c_start: wide(start),
            c_end: wide(end),
            truncated_low: start == c_lo && c_lo > 0,
            truncated_high: end == c_hi,
        })
    };
    for r in &reports {
        let c = r.params.c();
        match (r.is_empty(), open) {
            (true, None) => open = Some(c),
            (false, Some(start)) => {
                close(start, c - 1, &mut out);
                open = None;
            }
            _ => {}
        }
    }
    if let Some(start) = open {
        close(start, c_hi, &mut out);
    }
    Ok(out)
}

/// Least `n ≥ 2` with `(n − 5/4)(b−1)² ≥ k`, compared as `(4n − 5)(b−1)² ≥ 4k`.
pub fn desert_order(b: u64, k: u64) -> Result<u32> {
    if b < 2 {
        return Err(HappyError::InvalidBase(b));
    }
    if k == 0 {
        return Err(HappyError::domain("desert length k must be ≥ 1"));
    }
    let sq = u128::from(b - 1) * u128::from(b - 1);
    let need = (4 * u128::from(k)).div_ceil(sq); // 4n − 5 ≥ need
    let n = (need + 5).div_ceil(4).max(2);
    u32::try_from(n).map_err(|_| HappyError::Overflow("desert order"))
}

/// `m_{b,n+1} − M_{b,n} − 1`, the length of the desert between the
/// `(n+1)`-digit and `(n+2)`-digit regimes.
pub fn gap_length(b: u64, n: u32) -> Result<Wide> {
    let here = bounds(b, n)?;
    let next = bounds(b, n + 1)?;
    next.lower
        .checked_sub(here.upper)
        .and_then(|v| v.checked_sub(Wide::ONE))
        .ok_or_else(|| HappyError::Internal(format!("no gap after n = {n} in base {b}")))
}

/// The full gap `[M_{b,n} + 1, m_{b,n+1} − 1]` for `n` = [`desert_order`],
/// a desert of length at least `k`.
pub fn guaranteed_desert(b: u64, k: u64) -> Result<DesertInterval> {
    let n = desert_order(b, k)?;
    gap_desert(b, n)
}

/// The desert between `M_{b,n}` and `m_{b,n+1}`.
pub fn gap_desert(b: u64, n: u32) -> Result<DesertInterval> {
    let here = bounds(b, n)?;
    let next = bounds(b, n.checked_add(1).ok_or(HappyError::Overflow("n + 1"))?)?;
    if next.lower <= here.upper + Wide::ONE {
        return Err(HappyError::Internal(format!("no gap after n = {n} in base {b}")));
    }
    Ok(DesertInterval {
        b,
        c_start: here.upper + Wide::ONE,
        c_end: next.lower - Wide::ONE,
        truncated_low: false,
        truncated_high: false,
    })
}

/// Checks that `S_[c,b]` has no fixed point for the parameters in the
/// interval; `Ok(false)` names a failure, errors mean the scan was refused.
pub fn certify_desert(interval: &DesertInterval, cap: u64) -> Result<bool> {
    let (lo, hi) = interval
        .to_u64_range()
        .ok_or(HappyError::Overflow("desert interval endpoints"))?;
    FunctionParams::new(lo, interval.b)?;
    let reports = scan_constants(interval.b, lo, hi, cap)?;
    Ok(reports.iter().all(|r| r.is_empty()))
}
