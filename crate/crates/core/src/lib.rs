//! Fixed points of the augmented generalized happy functions
//! `S_[c,b](a) = c + Σ aᵢ²`, where `aᵢ` are the base-`b` digits of `a`.
//!
//! The crate pairs a brute-force enumeration oracle with the closed-form
//! counts and bounds it is meant to confirm:
//!
//! * [`happy`] and [`orbit`]: digits, evaluation, iteration.
//! * [`squares`]: `r₂(n)` by scan and by factorization.
//! * [`search`]: the enumeration oracle and structural checks.
//! * [`counts`]: closed-form fixed-point counts.
//! * [`desert`]: runs of `c` without fixed points.
//! * [`verify`]: grid-wide checks of every identity against the oracle.
//!
//! All arithmetic is checked; overflow is reported as
//! [`HappyError::Overflow`], never wrapped.

pub mod counts;
pub mod desert;
pub mod error;
pub mod happy;
pub mod orbit;
pub mod search;
pub mod squares;
pub mod verify;

pub use counts::{
    count_f1, count_fn_exact, count_fn_formula, count_one_digit, count_total, count_two_digit,
};
pub use desert::{
    bounds, c_of_fixed_point, desert_scan, extremal_fixed_point, guaranteed_desert, BoundsPair,
    DesertInterval, Extremum, Wide,
};
pub use error::{HappyError, Result};
pub use happy::{from_digits, is_fixed_point, s_eval, to_digits, DigitVector, FunctionParams};
pub use orbit::{orbit, OrbitResult};
pub use search::{
    enumerate_fixed_points, enumerate_fixed_points_capped, f_n_set, parity_admissible, reflect,
    search_bound, FixedPointReport, Run, DEFAULT_MAX_BOUND,
};
pub use squares::{factorize, isqrt, r2_brute, r2_closed, Factorization};
