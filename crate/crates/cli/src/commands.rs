use std::fmt::Write;

use happy_core::counts::{in_total_count_domain, two_digit_r2_argument};
use happy_core::desert::{desert_order, desert_scan_capped, extremal_digits, gap_length};
use happy_core::search::scan_constants;
use happy_core::verify::{run_suite, Grid, Suite, SuiteReport};
use happy_core::{
    count_f1, count_one_digit, count_total, count_two_digit, enumerate_fixed_points_capped,
    factorize, r2_brute, r2_closed, s_eval, to_digits, DesertInterval, Extremum,
    FixedPointReport, FunctionParams, HappyError, DEFAULT_MAX_BOUND,
};
use serde_json::{json, Value};

use crate::output::{join, wide_json, Output};
use crate::{Failure, EXIT_VERIFY_FAILED};

pub const MAX_BOUND_ENV: &str = "HAPPY_MAX_BOUND";

/// Listed in text output before eliding the rest.
const TEXT_LIST_LIMIT: usize = 20;

pub fn max_bound_from_env() -> Result<u64, Failure> {
    match std::env::var(MAX_BOUND_ENV) {
        Err(_) => Ok(DEFAULT_MAX_BOUND),
        Ok(s) => s
            .trim()
            .parse::<u64>()
            .ok()
            .filter(|&v| v >= 1)
            .ok_or_else(|| Failure::domain(format!("{MAX_BOUND_ENV} must be a positive integer (got {s:?})"))),
    }
}

fn yes_no(v: bool) -> &'static str {
    if v { "yes" } else { "no" }
}

pub fn eval(c: u64, b: u64, a: u64) -> Result<Output, Failure> {
    let p = FunctionParams::new(c, b)?;
    let value = s_eval(p, a)?;
    let digits = to_digits(a, b)?;
    let msb: Vec<u64> = digits.msb_first().collect();
    let squares: Vec<u64> = msb.iter().map(|d| d * d).collect();
    let fixed = value == a;
    let text = format!(
        "{p}({a}) = {value}\n  digits (base {b}, most significant first): {}\n  {c} + {} = {value}\n  fixed point: {}\n",
        join(&msb, " "),
        join(&squares, " + "),
        yes_no(fixed)
    );
    Ok(Output {
        command: "eval",
        params: json!({ "c": c, "b": b, "a": a }),
        result: json!({ "value": value, "digits": msb, "squares": squares, "fixed": fixed }),
        text,
        table: Some((
            vec!["b", "c", "a", "value", "fixed"],
            vec![vec![b.to_string(), c.to_string(), a.to_string(), value.to_string(), fixed.to_string()]],
        )),
        exit_code: 0,
    })
}

pub fn orbit(c: u64, b: u64, a: u64, max_steps: usize) -> Result<Output, Failure> {
    let p = FunctionParams::new(c, b)?;
    let o = happy_core::orbit(p, a, max_steps)?;
    let text = format!(
        "{p} orbit of {a}\n  tail ({} steps): {}\n  cycle (length {}): {}\n",
        o.steps_to_cycle,
        if o.tail.is_empty() { "-".to_string() } else { join(&o.tail, " → ") },
        o.cycle.len(),
        join(&o.cycle, " → ")
    );
    Ok(Output {
        command: "orbit",
        params: json!({ "c": c, "b": b, "a": a, "max_steps": max_steps }),
        result: json!({
            "tail": o.tail,
            "cycle": o.cycle,
            "entry": o.entry,
            "steps_to_cycle": o.steps_to_cycle,
        }),
        text,
        table: None,
        exit_code: 0,
    })
}

fn report_json(r: &FixedPointReport) -> Value {
    json!({
        "c": r.params.c(),
        "b": r.params.b(),
        "bound": r.bound,
        "fixed_points": r.fixed_points,
        "runs": r.runs.iter().map(|run| [run.first, run.last]).collect::<Vec<_>>(),
        "reflection_pairs": r.reflection_pairs.iter().map(|&(a, t)| [a, t]).collect::<Vec<_>>(),
    })
}

fn report_text(r: &FixedPointReport, out: &mut String) {
    let pairs: Vec<String> = r
        .consecutive_pairs()
        .map(|run| format!("({}, {})", run.first, run.last))
        .collect();
    let reflections: Vec<String> = r
        .reflection_pairs
        .iter()
        .map(|(a, t)| format!("{a} ↔ {t}"))
        .collect();
    let _ = writeln!(out, "{}: {} fixed point(s) below {}", r.params, r.count(), r.bound);
    let _ = writeln!(out, "  fixed points: [{}]", join(&r.fixed_points, ", "));
    if !pairs.is_empty() {
        let _ = writeln!(out, "  consecutive pairs: {}", pairs.join(" "));
    }
    if !reflections.is_empty() {
        let _ = writeln!(out, "  reflection pairs: {}", reflections.join(", "));
    }
}

pub fn fixed_points(b: u64, lo: u64, hi: u64, cap: u64, single: bool) -> Result<Output, Failure> {
    FunctionParams::new(lo, b)?;
    let reports = scan_constants(b, lo, hi, cap)?;
    let mut text = String::new();
    for r in &reports {
        report_text(r, &mut text);
    }
    let rows = reports
        .iter()
        .map(|r| {
            vec![
                b.to_string(),
                r.params.c().to_string(),
                r.count().to_string(),
                join(&r.fixed_points, ";"),
            ]
        })
        .collect();
    let (params, result) = if single {
        (json!({ "c": lo, "b": b }), report_json(&reports[0]))
    } else {
        (
            json!({ "b": b, "from": lo, "to": hi }),
            json!({ "reports": reports.iter().map(report_json).collect::<Vec<_>>() }),
        )
    };
    Ok(Output {
        command: "fixed-points",
        params,
        result,
        text,
        table: Some((vec!["b", "c", "fixed_point_count", "fixed_points"], rows)),
        exit_code: 0,
    })
}

pub fn count(c: u64, b: u64, cap: u64) -> Result<Output, Failure> {
    let p = FunctionParams::new(c, b)?;
    let oracle = enumerate_fixed_points_capped(p, cap)?;
    let oracle_count = oracle.count() as u64;
    let two_digit_oracle = oracle
        .fixed_points
        .iter()
        .filter(|&&a| a >= b && u128::from(a) < u128::from(b) * u128::from(b))
        .count() as u64;
    let closed = if in_total_count_domain(p) { Some(count_total(p)?) } else { None };
    let two_digit = if c > 0 { Some(count_two_digit(p)?) } else { None };
    let r2_arg = two_digit_r2_argument(p)?;
    let r2 = r2_closed(r2_arg);
    let f1 = count_f1(p);
    let limit = 3 * u128::from(b) - 3;
    let matches = closed.map(|v| v == oracle_count);
    let note = if closed.is_none() {
        Some(format!("closed form needs 0 < c < 3b − 3 = {limit}"))
    } else {
        None
    };

    let mut text = format!("{p}\n");
    match closed {
        Some(v) => {
            let _ = writeln!(text, "  closed form: {v}");
        }
        None => {
            let why = if c == 0 { "c = 0".to_string() } else { format!("c ≥ 3b − 3 = {limit}") };
            let _ = writeln!(text, "  closed form: n/a ({why})");
        }
    }
    let _ = writeln!(text, "  oracle: {oracle_count}");
    if let Some(m) = matches {
        let _ = writeln!(text, "  match: {m}");
    }
    let _ = writeln!(text, "  r₂({r2_arg}) = {r2}, |F¹| = {f1}, one-digit = {}", count_one_digit(p));
    if let Some(t) = two_digit {
        let _ = writeln!(text, "  two-digit closed form: {t}, two-digit oracle: {two_digit_oracle}");
    }

    let opt = |v: Option<u64>| v.map_or(String::from("n/a"), |v| v.to_string());
    Ok(Output {
        command: "count",
        params: json!({ "c": c, "b": b }),
        result: json!({
            "closed_form": closed,
            "oracle": oracle_count,
            "match": matches,
            "note": note,
            "two_digit_closed_form": two_digit,
            "two_digit_oracle": two_digit_oracle,
            "r2_argument": r2_arg,
            "r2": r2,
            "f1": f1,
            "one_digit": count_one_digit(p),
        }),
        text,
        table: Some((
            vec!["b", "c", "closed_form", "oracle", "match"],
            vec![vec![
                b.to_string(),
                c.to_string(),
                opt(closed),
                oracle_count.to_string(),
                matches.map_or(String::from("n/a"), |m| m.to_string()),
            ]],
        )),
        exit_code: 0,
    })
}

fn interval_json(d: &DesertInterval) -> Value {
    json!({
        "b": d.b,
        "c_start": wide_json(d.c_start),
        "c_end": wide_json(d.c_end),
        "length": wide_json(d.length()),
        "truncated_low": d.truncated_low,
        "truncated_high": d.truncated_high,
    })
}

fn interval_row(d: &DesertInterval) -> Vec<String> {
    vec![
        d.b.to_string(),
        d.c_start.to_string(),
        d.c_end.to_string(),
        d.length().to_string(),
        d.truncated_low.to_string(),
        d.truncated_high.to_string(),
    ]
}

const DESERT_HEADER: [&str; 6] = ["b", "c_start", "c_end", "length", "truncated_low", "truncated_high"];

pub fn desert_scan(b: u64, lo: u64, hi: u64, cap: u64) -> Result<Output, Failure> {
    let deserts = desert_scan_capped(b, lo, hi, cap)?;
    let mut text = format!("deserts base {b} for c in [{lo}, {hi}]: {}\n", deserts.len());
    for d in &deserts {
        let _ = writeln!(text, "  {d}");
    }
    Ok(Output {
        command: "deserts",
        params: json!({ "b": b, "from": lo, "to": hi }),
        result: json!({ "deserts": deserts.iter().map(interval_json).collect::<Vec<_>>() }),
        text,
        table: Some((DESERT_HEADER.to_vec(), deserts.iter().map(interval_row).collect())),
        exit_code: 0,
    })
}

pub fn desert_construct(b: u64, k: u64) -> Result<Output, Failure> {
    let n = desert_order(b, k)?;
    let d = happy_core::guaranteed_desert(b, k)?;
    let text = format!(
        "guaranteed desert base {b} of length ≥ {k}: {d}\n  between M(b={b}, n={n}) and m(b={b}, n={})\n",
        n + 1
    );
    let mut result = interval_json(&d);
    result["n"] = json!(n);
    Ok(Output {
        command: "deserts",
        params: json!({ "b": b, "at_least": k }),
        result,
        text,
        table: Some((DESERT_HEADER.to_vec(), vec![interval_row(&d)])),
        exit_code: 0,
    })
}

pub fn bounds(b: u64, n: u32) -> Result<Output, Failure> {
    let bp = happy_core::bounds(b, n)?;
    let gap = gap_length(b, n)?;
    // Witnesses only exist as u64 for moderate n; report them when they fit.
    let witness = |which| match happy_core::extremal_fixed_point(b, n, which) {
        Ok((a, c)) => Ok(Some((a, c))),
        Err(HappyError::Overflow(_)) => Ok(None),
        Err(e) => Err(e),
    };
    let (min_w, max_w) = (witness(Extremum::Min)?, witness(Extremum::Max)?);
    let pattern = |which| -> Result<String, Failure> {
        Ok(join(&extremal_digits(b, n, which)?.msb_first().collect::<Vec<_>>(), " "))
    };
    let mut text = format!(
        "base {b}, {}-digit fixed points need {} ≤ c ≤ {}\n",
        n + 1,
        bp.lower,
        bp.upper
    );
    for (label, which, w) in [("min", Extremum::Min, min_w), ("max", Extremum::Max, max_w)] {
        let digits = pattern(which)?;
        match w {
            Some((a, c)) => {
                let _ = writeln!(text, "  {label} witness: a = {a} (digits {digits}) fixed for c = {c}");
            }
            None => {
                let _ = writeln!(text, "  {label} witness: digits {digits} (value exceeds 64 bits)");
            }
        }
    }
    let _ = writeln!(text, "  desert up to the next regime: length {gap}");
    let witness_json = |w: Option<(u64, u64)>| w.map(|(a, c)| json!({ "a": a, "c": c }));
    let opt = |w: Option<(u64, u64)>| w.map_or(String::new(), |(a, _)| a.to_string());
    Ok(Output {
        command: "bounds",
        params: json!({ "b": b, "n": n }),
        result: json!({
            "m": wide_json(bp.lower),
            "M": wide_json(bp.upper),
            "min_witness": witness_json(min_w),
            "max_witness": witness_json(max_w),
            "gap_to_next": wide_json(gap),
        }),
        text,
        table: Some((
            vec!["b", "n", "m", "M", "min_witness", "max_witness"],
            vec![vec![
                b.to_string(),
                n.to_string(),
                bp.lower.to_string(),
                bp.upper.to_string(),
                opt(min_w),
                opt(max_w),
            ]],
        )),
        exit_code: 0,
    })
}

fn suite_json(r: &SuiteReport) -> Value {
    json!({
        "suite": r.suite.name(),
        "passed": r.passed(),
        "checks": r.checks,
        "counterexample": r.counterexample,
        "documented_divergences": r.divergences.iter().map(|d| json!({
            "b": d.b, "c": d.c, "n": d.n, "root": d.root.to_string().parse::<serde_json::Number>().ok(),
        })).collect::<Vec<_>>(),
        "notes": r.notes,
    })
}

pub fn verify(suite: &str, b_max: u64, c_max: u64, cap: u64) -> Result<Output, Failure> {
    let suites: Vec<Suite> = if suite == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![suite.parse::<Suite>()?]
    };
    let grid = Grid::new(b_max, c_max)?.with_cap(cap);
    let reports = suites
        .iter()
        .map(|&s| run_suite(s, &grid))
        .collect::<Result<Vec<_>, _>>()?;
    let all_passed = reports.iter().all(SuiteReport::passed);

    let mut text = format!("grid: b ≤ {b_max}, c ≤ {c_max}\n");
    for r in &reports {
        let verdict = if r.passed() { "PASS" } else { "FAIL" };
        let _ = write!(text, "{:<12} {verdict} ({} checks", r.suite.name(), r.checks);
        if !r.divergences.is_empty() {
            let _ = write!(text, ", {} documented divergences", r.divergences.len());
        }
        text.push_str(")\n");
        if let Some(cx) = &r.counterexample {
            let _ = writeln!(text, "  counterexample: {cx}");
        }
        for d in r.divergences.iter().take(TEXT_LIST_LIMIT) {
            let _ = writeln!(
                text,
                "  documented divergence: b={} c={} n={}: formula 1, exact 0 (root {} outside (0, {}))",
                d.b, d.c, d.n, d.root, d.b
            );
        }
        if r.divergences.len() > TEXT_LIST_LIMIT {
            let _ = writeln!(text, "  … {} more (use --format json)", r.divergences.len() - TEXT_LIST_LIMIT);
        }
        for note in &r.notes {
            let _ = writeln!(text, "  note: {note}");
        }
    }
    Ok(Output {
        command: "verify",
        params: json!({ "suite": suite, "b_max": b_max, "c_max": c_max }),
        result: json!({
            "passed": all_passed,
            "suites": reports.iter().map(suite_json).collect::<Vec<_>>(),
        }),
        text,
        table: None,
        exit_code: if all_passed { 0 } else { EXIT_VERIFY_FAILED },
    })
}

pub fn r2(n: i64) -> Result<Output, Failure> {
    let brute = r2_brute(n);
    let closed = r2_closed(n);
    let factorization = if n >= 2 { Some(factorize(n as u64)?.to_string()) } else { None };
    let mut text = format!("r₂({n}) = {closed}\n  brute force: {brute}\n");
    if let Some(f) = &factorization {
        let _ = writeln!(text, "  {n} = {f}");
    }
    Ok(Output {
        command: "r2",
        params: json!({ "n": n }),
        result: json!({ "r2_closed": closed, "r2_brute": brute, "factorization": factorization }),
        text,
        table: Some((
            vec!["n", "r2_brute", "r2_closed"],
            vec![vec![n.to_string(), brute.to_string(), closed.to_string()]],
        )),
        exit_code: 0,
    })
}
