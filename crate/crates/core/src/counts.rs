//! Closed-form fixed-point counts, each checked elsewhere against the
//! enumeration oracle.

use crate::error::{HappyError, Result};
use crate::happy::FunctionParams;
use crate::squares::{exact_sqrt, r2_closed};

/// One-digit fixed points: only `1`, and only when `c = 0`.
pub fn count_one_digit(p: FunctionParams) -> u8 {
    u8::from(p.c() == 0)
}

/// `|F⁽¹⁾|`: 2 if `α² − αb + c = 0` has an integer root `1 ≤ α < b/2`,
/// 1 if `b² = 4c`, otherwise 0.
pub fn count_f1(p: FunctionParams) -> u8 {
    let b = u128::from(p.b());
    let four_c = 4 * u128::from(p.c());
    let b_sq = b * b;
    if b_sq == four_c {
        return 1;
    }
    // α = (b − √(b² − 4c)) / 2 is the smaller root.
    let Some(disc) = b_sq.checked_sub(four_c) else {
        return 0;
    };
    match exact_sqrt(disc) {
        Some(s) if (b - s) % 2 == 0 => {
            let alpha = (b - s) / 2;
            if alpha >= 1 && 2 * alpha < b {
                2
            } else {
                0
            }
        }
        _ => 0,
    }
}

fn discriminant(p: FunctionParams, n: u32) -> Result<(u128, Option<u128>)> {
    let b_n = u128::from(p.b())
        .checked_pow(n)
        .ok_or(HappyError::Overflow("bⁿ"))?;
    let b_2n = b_n.checked_mul(b_n).ok_or(HappyError::Overflow("b²ⁿ"))?;
    let four_c = 4 * u128::from(p.c());
    Ok((b_n, b_2n.checked_sub(four_c)))
}

fn require_n_at_least_two(n: u32) -> Result<()> {
    if n < 2 {
        return Err(HappyError::domain(format!("n must be ≥ 2 (got {n})")));
    }
    Ok(())
}

/// `|F⁽ⁿ⁾|` for `n ≥ 2` as the literal case split: 1 if `b²ⁿ − 4c` is a
/// nonzero perfect square, else 0.
///
/// This overcounts when both roots of `u² − bⁿu + c = 0` fall outside
/// `(0, b)`; see [`count_fn_exact`].
pub fn count_fn_formula(p: FunctionParams, n: u32) -> Result<u8> {
    require_n_at_least_two(n)?;
    let (_, disc) = discriminant(p, n)?;
    Ok(match disc {
        Some(d) if d > 0 && exact_sqrt(d).is_some() => 1,
        _ => 0,
    })
}

/// The smaller root `u = (bⁿ − √(b²ⁿ − 4c)) / 2` when the discriminant is a
/// nonzero perfect square.
pub fn fn_smaller_root(p: FunctionParams, n: u32) -> Result<Option<u128>> {
    require_n_at_least_two(n)?;
    let (b_n, disc) = discriminant(p, n)?;
    Ok(disc
        .filter(|&d| d > 0)
        .and_then(exact_sqrt)
        .filter(|s| (b_n - s) % 2 == 0)
        .map(|s| (b_n - s) / 2))
}

/// True `|F⁽ⁿ⁾|` for `n ≥ 2`: the formula's condition plus the range check
/// `0 < u < b` on the smaller root. The larger root always exceeds `b`.
pub fn count_fn_exact(p: FunctionParams, n: u32) -> Result<u8> {
    let b = u128::from(p.b());
    Ok(match fn_smaller_root(p, n)? {
        Some(u) if u > 0 && u < b => 1,
        _ => 0,
    })
}

/// Number of two-digit fixed points for `c > 0`:
/// `r₂(b² − 4c + 1)/2 + |F⁽¹⁾|` for odd `b`, `r₂(b² − 4c + 1)/4 + |F⁽¹⁾|` for even `b`.
pub fn count_two_digit(p: FunctionParams) -> Result<u64> {
    if p.c() == 0 {
        return Err(HappyError::domain(
            "two-digit count formula requires c > 0",
        ));
    }
    let arg = two_digit_r2_argument(p)?;
    let r2 = r2_closed(arg);
    let divisor = if p.b() % 2 == 1 { 2 } else { 4 };
    if !r2.is_multiple_of(divisor) {
        return Err(HappyError::Internal(format!(
            "r₂({arg}) = {r2} is not divisible by {divisor} for {p}"
        )));
    }
    Ok(r2 / divisor + u64::from(count_f1(p)))
}

/// `b² − 4c + 1`, the argument of `r₂` in the two-digit count.
pub fn two_digit_r2_argument(p: FunctionParams) -> Result<i64> {
    let b = i128::from(p.b());
    let v = b * b - 4 * i128::from(p.c()) + 1;
    i64::try_from(v).map_err(|_| HappyError::Overflow("b² − 4c + 1"))
}

/// Total number of fixed points, valid for `0 < c < 3b − 3` where every
/// fixed point has at most two digits.
pub fn count_total(p: FunctionParams) -> Result<u64> {
    if !in_total_count_domain(p) {
        return Err(HappyError::domain(format!(
            "closed-form total needs 0 < c < 3b − 3 = {} (got c = {})",
            3 * u128::from(p.b()) - 3,
            p.c()
        )));
    }
    count_two_digit(p)
}

pub fn in_total_count_domain(p: FunctionParams) -> bool {
    p.c() > 0 && u128::from(p.c()) < 3 * u128::from(p.b()) - 3
}
