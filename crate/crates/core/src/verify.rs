//! Grid-wide checks of every structural fact and closed form against the
//! enumeration oracle. Each suite reports how many individual checks ran and
//! the first counterexample in grid order, independent of thread count.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::counts::{count_f1, count_fn_exact, count_fn_formula, count_total, count_two_digit};
use crate::counts::fn_smaller_root;
use crate::desert::{
    bounds, c_of_fixed_point, certify_desert, extremal_fixed_point, gap_desert, gap_length,
    guaranteed_desert, DesertInterval, Extremum, Wide,
};
use crate::error::{HappyError, Result};
use crate::happy::{is_fixed_point, to_digits, FunctionParams};
use crate::search::{
    enumerate_fixed_points_capped, f_n_set, parity_admissible, reflect, search_bound,
    FixedPointReport, DEFAULT_MAX_BOUND,
};
use crate::squares::{r2_brute, r2_closed};

pub const MAX_GRID_BASE: u64 = 100;
pub const MAX_GRID_C: u64 = 1_000_000;
/// Constructed-desert scans are skipped above this many evaluations.
pub const SCAN_BUDGET: u128 = 20_000_000;
/// Budget for scanning the few gap deserts at `n = 2, 3`.
pub const GAP_SCAN_BUDGET: u128 = 1_000_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    /// Consecutive fixed points come in pairs starting at multiples of b.
    Pairs,
    /// Reflecting digit a₁ maps fixed points to fixed points.
    Reflections,
    /// Parity constraints on c.
    Parity,
    /// Closed-form total count for 0 < c < 3b − 3.
    Counts,
    /// Two-digit count for every c > 0 on the grid.
    TwoDigit,
    /// |F⁽¹⁾| trichotomy.
    F1,
    /// |F⁽ⁿ⁾| formula against the exact count, with the divergence ledger.
    FnFormula,
    /// Sharpness and soundness of the digit-count bounds.
    Bounds,
    /// Gap deserts and guaranteed k-deserts.
    Deserts,
    /// r₂ closed form against brute force.
    R2,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Pairs,
        Suite::Reflections,
        Suite::Parity,
        Suite::Counts,
        Suite::TwoDigit,
        Suite::F1,
        Suite::FnFormula,
        Suite::Bounds,
        Suite::Deserts,
        Suite::R2,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Pairs => "pairs",
            Suite::Reflections => "reflections",
            Suite::Parity => "parity",
            Suite::Counts => "counts",
            Suite::TwoDigit => "two-digit",
            Suite::F1 => "f1",
            Suite::FnFormula => "fn-formula",
            Suite::Bounds => "bounds",
            Suite::Deserts => "deserts",
            Suite::R2 => "r2",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = HappyError;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| HappyError::domain(format!("unknown suite {s:?}")))
    }
}

/// Parameter grid: bases `2..=b_max`, constants `0..=c_max`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Grid {
    pub b_max: u64,
    pub c_max: u64,
    /// Cap on the enumeration search bound.
    pub cap: u64,
}

impl Grid {
    pub fn new(b_max: u64, c_max: u64) -> Result<Self> {
        if !(2..=MAX_GRID_BASE).contains(&b_max) {
            return Err(HappyError::domain(format!(
                "b-max must be in 2..={MAX_GRID_BASE} (got {b_max})"
            )));
        }
        if c_max > MAX_GRID_C {
            return Err(HappyError::domain(format!(
                "c-max must be ≤ {MAX_GRID_C} (got {c_max})"
            )));
        }
        Ok(Grid { b_max, c_max, cap: DEFAULT_MAX_BOUND })
    }

    pub fn with_cap(self, cap: u64) -> Self {
        Grid { cap, ..self }
    }

    fn bases(&self) -> std::ops::RangeInclusive<u64> {
        2..=self.b_max
    }
}

/// A grid point where the literal `|F⁽ⁿ⁾|` formula says 1 but no fixed point
/// of the form `u·bⁿ` exists.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FnDivergence {
    pub b: u64,
    pub c: u64,
    pub n: u32,
    /// Smaller root of `u² − bⁿu + c = 0`; never in `(0, b)`.
    pub root: u128,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: u64,
    pub counterexample: Option<String>,
    pub divergences: Vec<FnDivergence>,
    pub notes: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

#[derive(Debug, Default)]
struct Tally {
    checks: u64,
    failure: Option<String>,
    divergences: Vec<FnDivergence>,
    notes: Vec<String>,
    error: Option<HappyError>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(what());
        }
    }

    fn from_result(r: Result<Tally>) -> Tally {
        r.unwrap_or_else(|e| Tally { error: Some(e), ..Tally::default() })
    }

    /// Keeps the earliest failure and error so the merge is order-stable.
    fn merge(mut self, other: Tally) -> Tally {
        self.checks += other.checks;
        self.failure = self.failure.or(other.failure);
        self.error = self.error.or(other.error);
        self.divergences.extend(other.divergences);
        self.notes.extend(other.notes);
        self
    }
}

fn run_points<P, F>(points: Vec<P>, f: F) -> Tally
where
    P: Send + Sync,
    F: Fn(&P) -> Result<Tally> + Send + Sync,
{
    points
        .par_iter()
        .map(|p| Tally::from_result(f(p)))
        .reduce(Tally::default, Tally::merge)
}

fn base_c_points(grid: &Grid, c_min: u64) -> Vec<(u64, u64)> {
    grid.bases()
        .flat_map(|b| (c_min..=grid.c_max).map(move |c| (b, c)))
        .collect()
}

/// Runs one suite over the grid.
pub fn run_suite(suite: Suite, grid: &Grid) -> Result<SuiteReport> {
    let tally = match suite {
        Suite::Pairs => run_points(base_c_points(grid, 0), |&(b, c)| {
            check_pairs(&enumerate(grid, c, b)?)
        }),
        Suite::Reflections => run_points(base_c_points(grid, 0), |&(b, c)| {
            check_reflections(&enumerate(grid, c, b)?)
        }),
        Suite::Parity => run_points(base_c_points(grid, 0), |&(b, c)| {
            check_parity(&enumerate(grid, c, b)?)
        }),
        Suite::Counts => {
            let points: Vec<(u64, u64)> = grid
                .bases()
                .flat_map(|b| (1..3 * b - 3).map(move |c| (b, c)))
                .collect();
            run_points(points, |&(b, c)| check_total(&enumerate(grid, c, b)?))
        }
        Suite::TwoDigit => run_points(base_c_points(grid, 1), |&(b, c)| {
            check_two_digit(&enumerate(grid, c, b)?)
        }),
        Suite::F1 => run_points(base_c_points(grid, 0), |&(b, c)| {
            let p = FunctionParams::new(c, b)?;
            let mut t = Tally::default();
            let direct = f_n_set(p, 1)?;
            t.check(usize::from(count_f1(p)) == direct.len(), || {
                format!("{p}: |F¹| formula {} but direct check finds {direct:?}", count_f1(p))
            });
            Ok(t)
        }),
        Suite::FnFormula => {
            let points: Vec<(u64, u32)> = grid
                .bases()
                .flat_map(|b| (2..=4).map(move |n| (b, n)))
                .collect();
            run_points(points, |&(b, n)| check_fn_formula(b, n))
        }
        Suite::Bounds => {
            let points: Vec<(u64, u32)> = grid
                .bases()
                .flat_map(|b| (2..=6).map(move |n| (b, n)))
                .collect();
            run_points(points, |&(b, n)| check_bounds(b, n))
        }
        Suite::Deserts => check_deserts(grid),
        Suite::R2 => {
            let hi = 100 * grid.c_max as i64;
            let chunks: Vec<(i64, i64)> = (-100..=hi)
                .step_by(4096)
                .map(|lo| (lo, (lo + 4095).min(hi)))
                .collect();
            run_points(chunks, |&(lo, hi)| {
                let mut t = Tally::default();
                for n in lo..=hi {
                    let (closed, brute) = (r2_closed(n), r2_brute(n));
                    t.check(closed == brute, || {
                        format!("r₂({n}): closed form {closed}, brute force {brute}")
                    });
                }
                Ok(t)
            })
        }
    };
    if let Some(e) = tally.error {
        return Err(e);
    }
    Ok(SuiteReport {
        suite,
        checks: tally.checks,
        counterexample: tally.failure,
        divergences: tally.divergences,
        notes: tally.notes,
    })
}

fn enumerate(grid: &Grid, c: u64, b: u64) -> Result<FixedPointReport> {
    enumerate_fixed_points_capped(FunctionParams::new(c, b)?, grid.cap)
}

/// Consecutive fixed points: runs of length ≤ 2 that start at multiples of
/// b, and `a` fixed ⟺ `a + 1` fixed for every multiple `a` of b.
fn check_pairs(r: &FixedPointReport) -> Result<Tally> {
    let p = r.params;
    let b = p.b();
    let mut t = Tally::default();
    for run in &r.runs {
        t.check(run.len() <= 2, || format!("{p}: run {}..={} is longer than 2", run.first, run.last));
        if run.len() == 2 {
            t.check(run.first % b == 0, || {
                format!("{p}: pair ({}, {}) does not start at a multiple of {b}", run.first, run.last)
            });
        }
    }
    for &a in &r.fixed_points {
        if a % b == 0 {
            t.check(r.contains(a + 1), || format!("{p}: {a} is fixed but {} is not", a + 1));
        }
        if a > b && (a - 1) % b == 0 {
            t.check(r.contains(a - 1), || format!("{p}: {a} is fixed but {} is not", a - 1));
        }
    }
    Ok(t)
}

/// Every fixed point with `a₁ ≠ 0` reflects to a fixed point, and
/// reflecting twice is the identity.
fn check_reflections(r: &FixedPointReport) -> Result<Tally> {
    let p = r.params;
    let b = p.b();
    let mut t = Tally::default();
    for &a in &r.fixed_points {
        if a < b || (a / b).is_multiple_of(b) {
            continue;
        }
        let image = reflect(a, b)?;
        t.check(is_fixed_point(p, image)?, || format!("{p}: {a} is fixed but its reflection {image} is not"));
        t.check(reflect(image, b)? == a, || format!("base {b}: reflection of {a} is not an involution"));
    }
    for &(a, image) in &r.reflection_pairs {
        t.check(a < image && reflect(a, b)? == image && r.contains(image), || {
            format!("{p}: bad reflection pair ({a}, {image})")
        });
    }
    Ok(t)
}

/// Odd base and a fixed point force even c; for even base every fixed point
/// has `c ≡ Σ_{i≥1} aᵢ (mod 2)`.
fn check_parity(r: &FixedPointReport) -> Result<Tally> {
    let p = r.params;
    let (b, c) = (p.b(), p.c());
    let mut t = Tally::default();
    if b % 2 == 1 {
        t.check(r.is_empty() || c % 2 == 0, || {
            format!("{p}: odd base, odd c, yet fixed points {:?}", r.fixed_points)
        });
        t.check(parity_admissible(p) || r.is_empty(), || format!("{p}: inadmissible but not empty"));
    } else {
        for &a in &r.fixed_points {
            let upper: u64 = to_digits(a, b)?.digits()[1..].iter().sum();
            t.check(upper % 2 == c % 2, || {
                format!("{p}: fixed point {a} has upper digit sum {upper}, parity differs from c")
            });
        }
    }
    Ok(t)
}

/// Closed-form total against the oracle in `0 < c < 3b − 3`.
fn check_total(r: &FixedPointReport) -> Result<Tally> {
    let p = r.params;
    let mut t = Tally::default();
    let closed = count_total(p)?;
    t.check(closed == r.count() as u64, || {
        format!("{p}: closed form {closed}, oracle {} ({:?})", r.count(), r.fixed_points)
    });
    if p.b() % 2 == 1 && p.c() % 2 == 1 {
        t.check(closed == 0, || format!("{p}: odd base and odd c but count {closed}"));
    }
    Ok(t)
}

/// Two-digit closed form against the oracle's fixed points in `[b, b²)`.
fn check_two_digit(r: &FixedPointReport) -> Result<Tally> {
    let p = r.params;
    let b = p.b();
    let mut t = Tally::default();
    let closed = count_two_digit(p)?;
    let oracle = r
        .fixed_points
        .iter()
        .filter(|&&a| a >= b && u128::from(a) < u128::from(b) * u128::from(b))
        .count() as u64;
    t.check(closed == oracle, || format!("{p}: two-digit closed form {closed}, oracle {oracle}"));
    Ok(t)
}

/// `count_fn_exact` against the direct check for every `c < b^(n+1)`, then
/// the divergence ledger: every `c` making `b²ⁿ − 4c = s²` a nonzero square
/// (one per `s ≤ bⁿ` of matching parity) where the literal formula says 1
/// but the smaller root `(bⁿ − s)/2` lies outside `(0, b)`.
fn check_fn_formula(b: u64, n: u32) -> Result<Tally> {
    let mut t = Tally::default();
    let limit = b
        .checked_pow(n + 1)
        .ok_or(HappyError::Overflow("b^(n+1)"))?;
    for c in 0..limit {
        let p = FunctionParams::new(c, b)?;
        let exact = count_fn_exact(p, n)?;
        let direct = f_n_set(p, n)?.len();
        t.check(usize::from(exact) == direct, || {
            format!("{p} n={n}: exact |Fⁿ| {exact}, direct {direct}")
        });
        let formula = count_fn_formula(p, n)?;
        if formula != exact {
            let root = fn_smaller_root(p, n)?;
            let explained = formula == 1
                && exact == 0
                && root.is_some_and(|u| u == 0 || u >= u128::from(b));
            t.check(explained, || {
                format!("{p} n={n}: formula {formula}, exact {exact}, root {root:?} unexplained")
            });
        }
    }

    let b_n = u128::from(b)
        .checked_pow(n)
        .ok_or(HappyError::Overflow("bⁿ"))?;
    for s in (1..=b_n).filter(|s| (b_n - s) % 2 == 0) {
        let c = u64::try_from((b_n * b_n - s * s) / 4).map_err(|_| HappyError::Overflow("c"))?;
        let p = FunctionParams::new(c, b)?;
        let root = (b_n - s) / 2;
        let formula = count_fn_formula(p, n)?;
        let exact = count_fn_exact(p, n)?;
        let direct = f_n_set(p, n)?.len();
        t.check(formula == 1, || format!("{p} n={n}: square discriminant {s}² but formula {formula}"));
        t.check(usize::from(exact) == direct, || {
            format!("{p} n={n}: exact |Fⁿ| {exact}, direct {direct}")
        });
        let in_range = root > 0 && root < u128::from(b);
        t.check((exact == 1) == in_range, || {
            format!("{p} n={n}: root {root}, exact count {exact}")
        });
        if formula != exact {
            t.divergences.push(FnDivergence { b, c, n, root });
        }
    }
    Ok(t)
}

/// Sharpness of the bounds via the extremal witnesses, monotonicity in n,
/// and (for `n ≤ 4`) soundness over every `(n+1)`-digit number.
fn check_bounds(b: u64, n: u32) -> Result<Tally> {
    let mut t = Tally::default();
    let bp = bounds(b, n)?;
    for (which, target) in [(Extremum::Min, bp.lower), (Extremum::Max, bp.upper)] {
        let (a, c) = extremal_fixed_point(b, n, which)?;
        let p = FunctionParams::new(c, b)?;
        t.check(Wide::from(c) == target, || format!("base {b} n={n}: {which:?} witness gives c={c}, bound {target}"));
        t.check(is_fixed_point(p, a)?, || format!("{p}: {which:?} witness {a} is not fixed"));
        t.check(to_digits(a, b)?.len() == n as usize + 1, || format!("base {b}: witness {a} has wrong length"));
    }
    let next = bounds(b, n + 1)?;
    t.check(next.lower > bp.lower && next.upper > bp.upper, || {
        format!("base {b}: bounds not increasing from n={n} to n={}", n + 1)
    });
    if n <= 4 {
        let lo = b.checked_pow(n).ok_or(HappyError::Overflow("bⁿ"))?;
        let hi = lo.checked_mul(b).ok_or(HappyError::Overflow("b^(n+1)"))?;
        for a in lo..hi {
            let c = c_of_fixed_point(a, b)?;
            let Ok(c) = u64::try_from(c) else { continue };
            let p = FunctionParams::new(c, b)?;
            t.check(is_fixed_point(p, a)?, || format!("{p}: {a} should be fixed"));
            let cw = Wide::from(c);
            t.check(bp.lower <= cw && cw <= bp.upper, || {
                format!("{p}: {}-digit fixed point {a} outside [{}, {}]", n + 1, bp.lower, bp.upper)
            });
        }
    }
    Ok(t)
}

fn scan_cost(interval: &DesertInterval) -> Option<u128> {
    let (_, hi) = interval.to_u64_range()?;
    let bound = search_bound(FunctionParams::new(hi, interval.b).ok()?).ok()?;
    let len = u128::try_from(interval.length()).ok()?;
    Some(len * u128::from(bound))
}

/// Scans the interval when affordable; returns whether it was scanned.
fn certify_if_tractable(
    interval: &DesertInterval,
    budget: u128,
    grid: &Grid,
    t: &mut Tally,
) -> Result<bool> {
    match scan_cost(interval) {
        Some(cost) if cost <= budget => {
            let empty = certify_desert(interval, grid.cap)?;
            t.check(empty, || format!("base {}: interval {interval} has fixed points", interval.b));
            Ok(true)
        }
        _ => Ok(false),
    }
}

fn check_deserts(grid: &Grid) -> Tally {
    let gaps: Vec<(u64, u32)> = grid
        .bases()
        .flat_map(|b| (2..=3).map(move |n| (b, n)))
        .collect();
    let gap_tally = run_points(gaps, |&(b, n)| {
        let mut t = Tally::default();
        let d = gap_desert(b, n)?;
        t.check(d.length() == gap_length(b, n)?, || format!("base {b} n={n}: gap length mismatch"));
        let sq = Wide::from((b - 1) * (b - 1));
        t.check(Wide::from(4u64) * d.length() > Wide::from(4 * u64::from(n) - 5) * sq, || {
            format!("base {b} n={n}: gap {} not above (n − 5/4)(b−1)²", d.length())
        });
        if !certify_if_tractable(&d, GAP_SCAN_BUDGET, grid, &mut t)? {
            t.notes.push(format!("base {b}: gap {d} after n = {n} too large to scan"));
        }
        Ok(t)
    });
    let constructed: Vec<u64> = grid.bases().collect();
    let k_tally = run_points(constructed, |&b| {
        let mut t = Tally::default();
        let mut seen: Vec<DesertInterval> = Vec::new();
        for k in 1..=200u64 {
            let d = guaranteed_desert(b, k)?;
            t.check(d.length() >= Wide::from(k), || format!("base {b}: {k}-desert has length {}", d.length()));
            if !seen.contains(&d) {
                seen.push(d);
            }
        }
        let mut skipped = 0;
        for d in &seen {
            if !certify_if_tractable(d, SCAN_BUDGET, grid, &mut t)? {
                skipped += 1;
            }
        }
        if skipped > 0 {
            t.notes.push(format!(
                "base {b}: {skipped} of {} distinct constructed deserts too large to scan",
                seen.len()
            ));
        }
        Ok(t)
    });
    gap_tally.merge(k_tally)
}
