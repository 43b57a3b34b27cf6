//! End-to-end CLI contract tests: exit codes, report schemas, format
//! round trips, and determinism under parallelism.

use std::process::{Command, Output};

fn qseries(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qseries"))
        .args(args)
        .env_remove("QSERIES_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn verify_single_identity_json_schema() {
    let out = qseries(&[
        "verify", "--id", "cap1", "--order", "60", "--format", "json",
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let line = stdout(&out);
    let v: serde_json::Value = serde_json::from_str(line.trim()).expect("valid JSON");
    assert_eq!(v["id"], "cap1");
    assert_eq!(v["order"], 60);
    assert_eq!(v["pass"], true);
    assert!(v["first_mismatch"].is_null());
    assert!(v["elapsed_ms"].is_u64());
}

#[test]
fn verify_all_aggregates_and_passes() {
    let out = qseries(&["verify", "--id", "all", "--order", "20"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    // one line per instance, parametrized families expanded
    assert!(text.contains("PASS rr(lambda=0)"));
    assert!(text.contains("PASS rr(lambda=1)"));
    assert!(text.contains("PASS multi_cap1(k=3)"));
    assert!(text.contains("PASS a_cap"));
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 21);
}

#[test]
fn verify_unknown_id_is_usage_error() {
    let out = qseries(&["verify", "--id", "nosuch"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown identity"));
}

#[test]
fn verify_budget_guard_refuses_big_runs() {
    let out = qseries(&["verify", "--id", "cap1", "--order", "200", "--budget", "10"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget exceeded"));
    // env var supplies the default
    let out = Command::new(env!("CARGO_BIN_EXE_qseries"))
        .args(["verify", "--id", "cap1", "--order", "200"])
        .env("QSERIES_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
}

#[test]
fn verify_output_is_deterministic_across_jobs() {
    let one = qseries(&[
        "verify", "--id", "all", "--order", "16", "--jobs", "1", "--format", "json",
    ]);
    let four = qseries(&[
        "verify", "--id", "all", "--order", "16", "--jobs", "4", "--format", "json",
    ]);
    assert_eq!(code(&one), 0);
    assert_eq!(code(&four), 0);
    let strip = |s: &str| {
        s.lines()
            .map(|l| {
                let mut v: serde_json::Value = serde_json::from_str(l).unwrap();
                v.as_object_mut().unwrap().remove("elapsed_ms");
                v.to_string()
            })
            .collect::<Vec<_>>()
    };
    assert_eq!(strip(&stdout(&one)), strip(&stdout(&four)));
}

#[test]
fn coeffs_table_matches_residue_counts() {
    let out = qseries(&["coeffs", "--id", "cap1", "--side", "rhs", "--order", "6"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let expected = [
        "q^0: 1", "q^1: 0", "q^2: 1", "q^3: 1", "q^4: 1", "q^5: 1", "q^6: 2",
    ];
    for row in expected {
        assert!(text.contains(row), "missing {row} in:\n{text}");
    }

    let out = qseries(&["coeffs", "--id", "cap1", "--side", "rhs", "--order", "0"]);
    assert_eq!(stdout(&out).trim(), "q^0: 1");
}

#[test]
fn coeffs_csv_round_trips() {
    let out = qseries(&[
        "coeffs", "--id", "rr", "--side", "lhs", "--order", "10", "--format", "csv",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,coefficient"));
    let rows: Vec<(i64, i64)> = lines
        .map(|l| {
            let (n, c) = l.split_once(',').expect("two fields");
            (n.parse().unwrap(), c.parse().unwrap())
        })
        .collect();
    assert_eq!(rows.len(), 11);
    assert_eq!(rows[0], (0, 1));
    assert_eq!(rows[4], (4, 2)); // two gap-2 partitions of 4
                                 // rows are consecutive exponents
    for (i, (n, _)) in rows.iter().enumerate() {
        assert_eq!(*n, i as i64);
    }
}

#[test]
fn partitions_match_and_report() {
    let out = qseries(&[
        "partitions",
        "--family",
        "capparelli",
        "--max-n",
        "50",
        "--format",
        "csv",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,constrained,residue,match"));
    for line in lines {
        assert!(line.ends_with(",true"), "mismatch row: {line}");
    }

    let out = qseries(&[
        "partitions",
        "--family",
        "rr",
        "--lambda",
        "1",
        "--max-n",
        "60",
    ]);
    assert_eq!(code(&out), 0);

    let out = qseries(&[
        "partitions",
        "--family",
        "gg",
        "--max-n",
        "0",
        "--format",
        "csv",
    ]);
    let text = stdout(&out);
    assert_eq!(text.lines().nth(1), Some("0,1,1,true"));

    let out = qseries(&["partitions", "--family", "elliptic", "--max-n", "5"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn bailey_pair_checks() {
    let out = qseries(&[
        "bailey", "--pair", "left", "--spec", "a=1", "--max-n", "10", "--order", "40",
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("n=10: ok"));

    let out = qseries(&[
        "bailey",
        "--pair",
        "capparelli",
        "--spec",
        "1,2,3",
        "--max-n",
        "4",
        "--order",
        "40",
        "--format",
        "csv",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("capparelli,3,4,true,"));

    let out = qseries(&["bailey", "--pair", "left", "--max-n", "-1"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("max-n"));

    let out = qseries(&["bailey", "--pair", "nosuch"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn list_shows_catalog() {
    let out = qseries(&["list"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    for id in [
        "rr",
        "cap0",
        "cap1",
        "cap2",
        "a_cap",
        "multi_cap1",
        "atns_cap1",
        "theta_diff",
    ] {
        assert!(text.contains(id), "missing {id}");
    }
    assert!(text.contains("lambda 0..1"));
    assert!(text.contains("k 1..3"));
}
