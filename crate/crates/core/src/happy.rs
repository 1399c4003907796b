//! Base-b digits and evaluation of the augmented happy function
//! `S_[c,b](a) = c + Σ aᵢ²`.

use std::fmt;

use crate::error::{HappyError, Result};

/// The pair `(c, b)` selecting one augmented happy function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FunctionParams {
    c: u64,
    b: u64,
}

impl FunctionParams {
    pub fn new(c: u64, b: u64) -> Result<Self> {
        if b < 2 {
            return Err(HappyError::InvalidBase(b));
        }
        Ok(FunctionParams { c, b })
    }

    /// Additive constant.
    #[inline]
    pub fn c(&self) -> u64 {
        self.c
    }

    /// Base.
    #[inline]
    pub fn b(&self) -> u64 {
        self.b
    }
}

impl fmt::Display for FunctionParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S[{},{}]", self.c, self.b)
    }
}

/// Little-endian base-b expansion of a positive integer: `digits[i]` is the
/// coefficient of `bⁱ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DigitVector {
    digits: Vec<u64>,
    base: u64,
}

impl DigitVector {
    /// Builds a digit vector, rejecting out-of-range digits, an empty list,
    /// and a zero leading digit.
    pub fn new(digits: Vec<u64>, base: u64) -> Result<Self> {
        if base < 2 {
            return Err(HappyError::InvalidBase(base));
        }
        if let Some(&d) = digits.iter().find(|&&d| d >= base) {
            return Err(HappyError::domain(format!(
                "digit {d} out of range for base {base}"
            )));
        }
        match digits.last() {
            None => return Err(HappyError::domain("empty digit vector")),
            Some(0) => return Err(HappyError::domain("leading digit is zero")),
            Some(_) => {}
        }
        Ok(DigitVector { digits, base })
    }

    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    /// Number of digits (`n + 1` for `aₙ⋯a₀`).
    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Digit `aᵢ`, or 0 past the leading digit.
    pub fn digit(&self, i: usize) -> u64 {
        self.digits.get(i).copied().unwrap_or(0)
    }

    /// Digits most-significant first, for display.
    pub fn msb_first(&self) -> impl Iterator<Item = u64> + '_ {
        self.digits.iter().rev().copied()
    }
}

/// Expands `a ≥ 1` in base `b`.
pub fn to_digits(a: u64, b: u64) -> Result<DigitVector> {
    if b < 2 {
        return Err(HappyError::InvalidBase(b));
    }
    if a == 0 {
        return Err(HappyError::domain("a must be a positive integer"));
    }
    let mut digits = Vec::new();
    let mut rest = a;
    while rest > 0 {
        digits.push(rest % b);
        rest /= b;
    }
    Ok(DigitVector { digits, base: b })
}

/// Recombines `Σ aᵢ bⁱ`.
pub fn from_digits(d: &DigitVector) -> Result<u64> {
    d.digits.iter().rev().try_fold(0u64, |acc, &digit| {
        acc.checked_mul(d.base)
            .and_then(|v| v.checked_add(digit))
            .ok_or(HappyError::Overflow("from_digits"))
    })
}

/// Sum of squared base-b digits of `a`, without the constant.
#[inline]
pub(crate) fn digit_square_sum(a: u64, b: u64) -> Result<u64> {
    let mut rest = a;
    let mut sum = 0u64;
    while rest > 0 {
        let d = rest % b;
        sum = d
            .checked_mul(d)
            .and_then(|sq| sum.checked_add(sq))
            .ok_or(HappyError::Overflow("digit square sum"))?;
        rest /= b;
    }
    Ok(sum)
}

/// Evaluates `S_[c,b](a)`.
pub fn s_eval(p: FunctionParams, a: u64) -> Result<u64> {
    if a == 0 {
        return Err(HappyError::domain("a must be a positive integer"));
    }
    digit_square_sum(a, p.b)?
        .checked_add(p.c)
        .ok_or(HappyError::Overflow("S(a)"))
}

/// True iff `S_[c,b](a) = a`.
pub fn is_fixed_point(p: FunctionParams, a: u64) -> Result<bool> {
    Ok(s_eval(p, a)? == a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn params(c: u64, b: u64) -> FunctionParams {
        FunctionParams::new(c, b).unwrap()
    }

    #[test]
    fn digits_examples() {
        assert_eq!(to_digits(35, 10).unwrap().digits(), &[5, 3]);
        assert_eq!(to_digits(6, 2).unwrap().digits(), &[0, 1, 1]);
        for b in 2..40 {
            assert_eq!(to_digits(1, b).unwrap().digits(), &[1]);
        }
    }

    #[test]
    fn from_digits_examples() {
        let v = |d: &[u64], b| from_digits(&DigitVector::new(d.to_vec(), b).unwrap()).unwrap();
        assert_eq!(v(&[5, 3], 10), 35);
        assert_eq!(v(&[0, 1, 1], 2), 6);
        assert_eq!(v(&[9, 0, 1], 10), 109);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert_eq!(to_digits(0, 10), Err(HappyError::domain("a must be a positive integer")));
        assert_eq!(to_digits(5, 1), Err(HappyError::InvalidBase(1)));
        assert!(DigitVector::new(vec![3, 0], 10).is_err());
        assert!(DigitVector::new(vec![10], 10).is_err());
        assert!(DigitVector::new(vec![], 10).is_err());
        assert!(FunctionParams::new(0, 1).is_err());
        assert!(s_eval(params(0, 10), 0).is_err());
    }

    #[test]
    fn from_digits_overflow_is_loud() {
        let d = DigitVector::new(vec![1; 70], 2).unwrap();
        assert_eq!(from_digits(&d), Err(HappyError::Overflow("from_digits")));
    }

    #[test]
    fn eval_examples() {
        assert_eq!(s_eval(params(0, 10), 7).unwrap(), 49);
        assert_eq!(s_eval(params(1, 10), 35).unwrap(), 35);
        assert_eq!(s_eval(params(5, 2), 6).unwrap(), 7);
    }

    #[test]
    fn fixed_point_examples() {
        assert!(is_fixed_point(params(0, 10), 1).unwrap());
        assert!(is_fixed_point(params(1, 10), 35).unwrap());
        assert!(!is_fixed_point(params(1, 10), 36).unwrap());
    }

    #[test]
    fn eval_overflow_is_loud() {
        assert!(s_eval(params(u64::MAX, 10), 3).unwrap_err().is_overflow());
        let huge = FunctionParams::new(0, u64::MAX).unwrap();
        assert!(s_eval(huge, u64::MAX - 1).unwrap_err().is_overflow());
    }

    proptest! {
        #[test]
        fn round_trip(a in 1u64..10_000_000, b in 2u64..=16) {
            let d = to_digits(a, b).unwrap();
            prop_assert_eq!(from_digits(&d).unwrap(), a);
            prop_assert!(d.digits().iter().all(|&x| x < b));
            prop_assert_ne!(*d.digits().last().unwrap(), 0);
        }

        #[test]
        fn odd_base_preserves_parity(a in 1u64..1_000_000, half in 1u64..20, c in 0u64..1000) {
            let b = 2 * half + 1;
            let s = s_eval(params(c, b), a).unwrap();
            prop_assert_eq!(s % 2, (c + a) % 2);
        }

        #[test]
        fn eval_matches_digit_vector(a in 1u64..10_000_000, b in 2u64..=36, c in 0u64..10_000) {
            let d = to_digits(a, b).unwrap();
            let expected = c + d.digits().iter().map(|x| x * x).sum::<u64>();
            prop_assert_eq!(s_eval(params(c, b), a).unwrap(), expected);
        }
    }
}
