//! Grid-wide invariants, each checked against the enumeration oracle.

use happy_core::desert::{certify_desert, gap_desert, Wide};
use happy_core::{
    bounds, count_f1, count_fn_exact, count_total, count_two_digit, enumerate_fixed_points,
    f_n_set, guaranteed_desert, orbit, parity_admissible, reflect, search_bound, FunctionParams,
    DEFAULT_MAX_BOUND,
};
use proptest::prelude::*;

fn params(c: u64, b: u64) -> FunctionParams {
    FunctionParams::new(c, b).unwrap()
}

#[test]
fn total_count_matches_oracle_b_up_to_30() {
    for b in 2..=30 {
        for c in 1..3 * b - 3 {
            let p = params(c, b);
            let oracle = enumerate_fixed_points(p).unwrap();
            assert_eq!(count_total(p).unwrap(), oracle.count() as u64, "{p}");
            if b % 2 == 1 && c % 2 == 1 {
                assert!(oracle.is_empty(), "{p}");
            }
        }
    }
}

#[test]
fn two_digit_count_beyond_total_count_domain() {
    for b in 2..=16u64 {
        for c in (1..=2000).step_by(7) {
            let p = params(c, b);
            let oracle = enumerate_fixed_points(p).unwrap();
            let two_digit = oracle.fixed_points.iter().filter(|&&a| a >= b && a < b * b).count();
            assert_eq!(count_two_digit(p).unwrap(), two_digit as u64, "{p}");
            assert_eq!(usize::from(count_f1(p)), f_n_set(p, 1).unwrap().len(), "{p}");
        }
    }
}

#[test]
fn fn_exact_matches_direct_check() {
    for b in 2..=12u64 {
        for n in 2..=4u32 {
            for c in 0..b.pow(n + 1) {
                let p = params(c, b);
                assert_eq!(usize::from(count_fn_exact(p, n).unwrap()), f_n_set(p, n).unwrap().len(), "{p} n={n}");
            }
        }
    }
}

#[test]
fn bounds_increase_with_digit_count() {
    for b in 2..=12 {
        for n in 2..=20 {
            let here = bounds(b, n).unwrap();
            let next = bounds(b, n + 1).unwrap();
            assert!(here.lower <= here.upper);
            assert!(next.lower > here.lower && next.upper > here.upper, "b={b} n={n}");
        }
    }
}

#[test]
fn guaranteed_deserts_are_long_and_empty() {
    for b in 2..=10 {
        for k in 1..=200 {
            let d = guaranteed_desert(b, k).unwrap();
            assert!(d.length() >= Wide::from(k), "b={b} k={k}");
            if d.c_end <= Wide::from(5_000u64) {
                assert!(certify_desert(&d, DEFAULT_MAX_BOUND).unwrap(), "b={b} k={k}: {d}");
            }
        }
    }
}

#[test]
fn gap_deserts_scan_empty() {
    for b in 2..=10 {
        for n in 2..=3 {
            let d = gap_desert(b, n).unwrap();
            assert!(certify_desert(&d, DEFAULT_MAX_BOUND).unwrap(), "b={b} n={n}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn structure_of_fixed_point_sets(b in 2u64..=20, c in 0u64..5000) {
        let p = params(c, b);
        let r = enumerate_fixed_points(p).unwrap();
        prop_assert!(r.fixed_points.windows(2).all(|w| w[0] < w[1]));
        for run in &r.runs {
            prop_assert!(run.len() <= 2);
            if run.len() == 2 {
                prop_assert_eq!(run.first % b, 0);
            }
        }
        for &a in &r.fixed_points {
            if a % b == 0 {
                prop_assert!(r.contains(a + 1));
            }
            if a >= b && (a / b) % b != 0 {
                let image = reflect(a, b).unwrap();
                prop_assert!(r.contains(image));
                prop_assert_eq!(reflect(image, b).unwrap(), a);
            }
            prop_assert!(orbit(p, a, 10).unwrap().cycle == vec![a]);
        }
        for &(a, image) in &r.reflection_pairs {
            prop_assert!(a < image);
            prop_assert_eq!(reflect(a, b).unwrap(), image);
        }
        if !parity_admissible(p) {
            prop_assert!(r.is_empty());
        }
    }

    #[test]
    fn nothing_at_or_above_bound(b in 2u64..=20, c in 0u64..5000, offset in 0u64..10_000) {
        let p = params(c, b);
        let bound = search_bound(p).unwrap();
        let a = bound + offset;
        prop_assert!(happy_core::s_eval(p, a).unwrap() < a);
    }
}
