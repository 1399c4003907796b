use std::process::{Command, Output};

use serde_json::Value;

fn happy(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_happy"))
        .args(args)
        .env_remove("HAPPY_MAX_BOUND")
        .output()
        .expect("run happy")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let out = happy(&full);
    assert!(out.status.success(), "{args:?}: {}", stderr(&out));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn u64s(v: &Value) -> Vec<u64> {
    v.as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect()
}

#[test]
fn eval_examples() {
    let v = json(&["eval", "--c", "1", "--b", "10", "--a", "35"]);
    assert_eq!(v["result"]["value"], 35);
    assert_eq!(v["result"]["fixed"], true);
    assert_eq!(u64s(&v["result"]["digits"]), [3, 5]);

    let v = json(&["eval", "--c", "0", "--b", "10", "--a", "7"]);
    assert_eq!(v["result"]["value"], 49);
    assert_eq!(v["schema_version"], "1");
    assert_eq!(v["command"], "eval");
    assert!(v["elapsed_ms"].is_u64());

    let out = happy(&["eval", "--c", "0", "--b", "1", "--a", "7"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("base must be ≥ 2"));
    assert!(out.stdout.is_empty());

    let out = happy(&["eval", "--c", "0", "--b", "10", "--a", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn fixed_points_examples() {
    let v = json(&["fixed-points", "--c", "9", "--b", "10"]);
    assert_eq!(u64s(&v["result"]["fixed_points"]), [10, 11, 34, 74, 90, 91]);
    let runs: Vec<Vec<u64>> = v["result"]["runs"].as_array().unwrap().iter().map(u64s).collect();
    let pairs: Vec<_> = runs.iter().filter(|r| r[0] != r[1]).cloned().collect();
    assert_eq!(pairs, vec![vec![10, 11], vec![90, 91]]);

    let v = json(&["fixed-points", "--c", "0", "--b", "10"]);
    assert_eq!(u64s(&v["result"]["fixed_points"]), [1]);

    let v = json(&["fixed-points", "--c", "28", "--b", "10"]);
    assert!(v["result"]["fixed_points"].as_array().unwrap().is_empty());

    let text = stdout(&happy(&["fixed-points", "--c", "9", "--b", "10"]));
    assert!(text.contains("consecutive pairs: (10, 11) (90, 91)"), "{text}");
}

#[test]
fn fixed_points_csv_scan() {
    let out = happy(&["fixed-points", "--b", "10", "--from", "8", "--to", "10", "--format", "csv"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "b,c,fixed_point_count,fixed_points\n10,8,0,\n10,9,6,10;11;34;74;90;91\n10,10,2,23;83\n"
    );
}

#[test]
fn thread_count_does_not_change_output() {
    let run = |threads: &str| {
        let out = happy(&["fixed-points", "--b", "7", "--from", "0", "--to", "300", "--format", "csv", "--threads", threads]);
        assert!(out.status.success());
        stdout(&out)
    };
    let one = run("1");
    assert_eq!(one.lines().count(), 302);
    assert_eq!(run("4"), one);
    assert_eq!(run("8"), one);
}

#[test]
fn count_examples() {
    let v = json(&["count", "--c", "9", "--b", "10"]);
    assert_eq!((v["result"]["closed_form"].as_u64(), v["result"]["oracle"].as_u64()), (Some(6), Some(6)));
    assert_eq!(v["result"]["match"], true);

    let v = json(&["count", "--c", "1", "--b", "10"]);
    assert_eq!((v["result"]["closed_form"].as_u64(), v["result"]["oracle"].as_u64()), (Some(2), Some(2)));
    assert_eq!(v["result"]["match"], true);

    let v = json(&["count", "--c", "30", "--b", "10"]);
    assert!(v["result"]["closed_form"].is_null());
    assert_eq!(v["result"]["oracle"], 0);
    assert!(v["result"]["note"].as_str().unwrap().contains("3b − 3 = 27"));

    let out = happy(&["count", "--c", "3", "--b", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn deserts_examples() {
    let v = json(&["deserts", "--b", "10", "--from", "0", "--to", "40"]);
    let deserts = v["result"]["deserts"].as_array().unwrap();
    let d = deserts.iter().find(|d| d["c_start"] == 28).expect("desert at 28");
    assert_eq!((d["c_end"].as_u64(), d["length"].as_u64()), (Some(35), Some(8)));
    assert!(deserts.iter().any(|d| d["c_start"] == 26 && d["c_end"] == 26));

    let v = json(&["deserts", "--b", "10", "--at-least", "60"]);
    assert_eq!(v["result"]["c_start"], 845);
    assert_eq!(v["result"]["c_end"], 926);
    assert_eq!(v["result"]["length"], 82);

    let v = json(&["deserts", "--b", "3", "--from", "17", "--to", "23"]);
    let deserts = v["result"]["deserts"].as_array().unwrap();
    assert_eq!(deserts.len(), 1);
    assert_eq!((deserts[0]["c_start"].as_u64(), deserts[0]["c_end"].as_u64()), (Some(17), Some(23)));
    assert_eq!(deserts[0]["truncated_low"], true);
    assert_eq!(deserts[0]["truncated_high"], true);

    let out = happy(&["deserts", "--b", "10", "--from", "0", "--to", "4", "--at-least", "3"]);
    assert_eq!(out.status.code(), Some(2));
    let out = happy(&["deserts", "--b", "10"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn huge_desert_is_exact_in_json() {
    let out = happy(&["deserts", "--b", "2", "--at-least", "200", "--format", "json"]);
    let raw = stdout(&out);
    assert!(raw.contains("\"c_start\": 12855504354071922204335696738729300820177623950262342682410805"), "{raw}");
}

#[test]
fn deserts_csv() {
    let out = happy(&["deserts", "--b", "10", "--from", "20", "--to", "40", "--format", "csv"]);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("b,c_start,c_end,length,truncated_low,truncated_high"));
    assert!(text.contains("10,28,35,8,false,false"));
}

#[test]
fn bounds_and_r2() {
    let v = json(&["bounds", "--b", "10", "--n", "2"]);
    assert_eq!(v["result"]["m"], 27);
    assert_eq!(v["result"]["M"], 844);
    assert_eq!(v["result"]["min_witness"]["a"], 109);
    assert_eq!(v["result"]["max_witness"]["a"], 950);
    assert_eq!(v["result"]["gap_to_next"], 82);

    let v = json(&["r2", "--n", "25"]);
    assert_eq!(v["result"]["r2_closed"], 12);
    assert_eq!(v["result"]["r2_brute"], 12);
    let v = json(&["r2", "--n", "-3"]);
    assert_eq!(v["result"]["r2_closed"], 0);
    assert!(v["result"]["factorization"].is_null());
}

#[test]
fn orbit_output() {
    let v = json(&["orbit", "--c", "0", "--b", "10", "--a", "7"]);
    assert_eq!(u64s(&v["result"]["tail"]), [7, 49, 97, 130, 10]);
    assert_eq!(u64s(&v["result"]["cycle"]), [1]);
    let out = happy(&["orbit", "--c", "0", "--b", "10", "--a", "7", "--max-steps", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = happy(&["orbit", "--c", "0", "--b", "10", "--a", "7", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_examples() {
    let out = happy(&["verify", "--suite", "pairs", "--b-max", "12", "--c-max", "500"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("pairs        PASS"));

    let out = happy(&["verify", "--suite", "counts", "--b-max", "20"]);
    assert_eq!(out.status.code(), Some(0));

    let v = json(&["verify", "--suite", "fn-formula", "--b-max", "10"]);
    let suite = &v["result"]["suites"][0];
    assert_eq!(suite["passed"], true);
    let divergences = suite["documented_divergences"].as_array().unwrap();
    assert!(!divergences.is_empty());
    assert!(divergences.iter().any(|d| d["b"] == 10 && d["c"] == 2499 && d["n"] == 2 && d["root"] == 49));
    let text = stdout(&happy(&["verify", "--suite", "fn-formula", "--b-max", "10"]));
    assert!(text.contains("documented divergence"));

    let out = happy(&["verify", "--suite", "bogus"]);
    assert_eq!(out.status.code(), Some(2));
    let out = happy(&["verify", "--b-max", "1000"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn max_bound_env() {
    let out = Command::new(env!("CARGO_BIN_EXE_happy"))
        .args(["fixed-points", "--c", "9", "--b", "10"])
        .env("HAPPY_MAX_BOUND", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("exceeds the configured cap 100"));

    let out = Command::new(env!("CARGO_BIN_EXE_happy"))
        .args(["fixed-points", "--c", "9", "--b", "10"])
        .env("HAPPY_MAX_BOUND", "lots")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    let out = happy(&["fixed-points", "--c", "18446744073709551615", "--b", "2"]);
    assert_eq!(out.status.code(), Some(3));
}

/// Re-running a command from the parameters echoed in its envelope yields
/// the same result payload.
#[test]
fn json_envelope_round_trips() {
    let commands: &[&[&str]] = &[
        &["eval", "--c", "5", "--b", "2", "--a", "6"],
        &["orbit", "--c", "0", "--b", "10", "--a", "3"],
        &["fixed-points", "--c", "9", "--b", "10"],
        &["fixed-points", "--b", "5", "--from", "0", "--to", "20"],
        &["count", "--c", "9", "--b", "10"],
        &["deserts", "--b", "10", "--from", "0", "--to", "40"],
        &["deserts", "--b", "4", "--at-least", "30"],
        &["bounds", "--b", "7", "--n", "3"],
        &["r2", "--n", "65"],
        &["verify", "--suite", "parity", "--b-max", "6", "--c-max", "50"],
    ];
    for args in commands {
        let first = json(args);
        let command = first["command"].as_str().unwrap().to_string();
        let mut rebuilt = vec![command];
        for (key, value) in first["params"].as_object().unwrap() {
            rebuilt.push(format!("--{}", key.replace('_', "-")));
            rebuilt.push(match value {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            });
        }
        let rebuilt: Vec<&str> = rebuilt.iter().map(String::as_str).collect();
        let second = json(&rebuilt);
        assert_eq!(first["result"], second["result"], "{args:?}");
        assert_eq!(first["params"], second["params"], "{args:?}");
    }
}
