//! Sums of two squares: `r₂(n) = |{(x, y) ∈ ℤ² : x² + y² = n}|`, computed by
//! exhaustive scan and by the divisor-class closed form.

use std::fmt;

use crate::error::{HappyError, Result};

/// Floor square root, exact for every `u128`.
pub fn isqrt(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let bits = 128 - n.leading_zeros();
    let mut x: u128 = 1 << bits.div_ceil(2);
    loop {
        let y = (x + n / x) / 2;
        if y >= x {
            break;
        }
        x = y;
    }
    // Newton from above lands on the floor; the multiply confirms it.
    debug_assert!(x * x <= n && (x + 1).checked_mul(x + 1).is_none_or(|sq| sq > n));
    x
}

/// Returns `Some(r)` when `n = r²`.
pub fn exact_sqrt(n: u128) -> Option<u128> {
    let r = isqrt(n);
    (r * r == n).then_some(r)
}

pub fn is_perfect_square(n: u128) -> bool {
    exact_sqrt(n).is_some()
}

/// Prime-power decomposition, primes strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// Multiplies the factorization back out.
    pub fn value(&self) -> Option<u64> {
        self.factors.iter().try_fold(1u64, |acc, &(p, e)| {
            p.checked_pow(e).and_then(|pe| acc.checked_mul(pe))
        })
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (p, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(" * ")?;
            }
            if *e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Trial division by 2, 3, then `6k ± 1` up to `√n`.
pub fn factorize(n: u64) -> Result<Factorization> {
    if n < 2 {
        return Err(HappyError::domain(format!("cannot factorize {n} (need n ≥ 2)")));
    }
    let mut factors = Vec::new();
    let mut rest = n;
    let mut strip = |p: u64, rest: &mut u64| {
        let mut e = 0;
        while (*rest).is_multiple_of(p) {
            *rest /= p;
            e += 1;
        }
        if e > 0 {
            factors.push((p, e));
        }
    };
    strip(2, &mut rest);
    strip(3, &mut rest);
    let mut k = 5u64;
    while u128::from(k) * u128::from(k) <= u128::from(rest) {
        strip(k, &mut rest);
        strip(k + 2, &mut rest);
        k += 6;
    }
    if rest > 1 {
        factors.push((rest, 1));
    }
    Ok(Factorization { factors })
}

/// Counts signed ordered pairs by scanning `x ∈ [−⌊√n⌋, ⌊√n⌋]`.
///
/// `r₂(0) = 1` and `r₂(n) = 0` for negative `n`.
pub fn r2_brute(n: i64) -> u64 {
    if n < 0 {
        return 0;
    }
    let n = n as u128;
    let s = isqrt(n);
    let mut count = 0;
    for x in 0..=s {
        if let Some(y) = exact_sqrt(n - x * x) {
            let signs_x = if x == 0 { 1 } else { 2 };
            let signs_y = if y == 0 { 1 } else { 2 };
            count += signs_x * signs_y;
        }
    }
    count
}

/// `r₂(n) = 4(d₁(n) − d₃(n))`, evaluated from the factorization: zero if a
/// prime `≡ 3 (mod 4)` divides `n` to an odd power, otherwise
/// `4 Π (eᵢ + 1)` over the primes `≡ 1 (mod 4)`.
pub fn r2_closed(n: i64) -> u64 {
    match n {
        n if n < 0 => 0,
        0 => 1,
        1 => 4,
        n => {
            let f = factorize(n as u64).expect("n ≥ 2");
            let mut prod = 1u64;
            for &(p, e) in f.factors() {
                match p % 4 {
                    3 if e % 2 == 1 => return 0,
                    1 => prod *= u64::from(e) + 1,
                    _ => {}
                }
            }
            4 * prod
        }
    }
}
