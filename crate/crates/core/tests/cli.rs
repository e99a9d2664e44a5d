use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

use reductive_pairs::a2lat::{weyl_char_a2, A2Weight};
use reductive_pairs::charlat::FormalCharacter;
use reductive_pairs::sl3verdict::TableEntry;

fn redpair(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_redpair"))
        .args(args)
        .env_remove("REDPAIR_CACHE_DIR")
        .output()
        .unwrap()
}

fn code(args: &[&str]) -> i32 {
    redpair(args).status.code().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn sl2_simple_exit_codes() {
    let out = redpair(&["sl2", "simple", "-p", "5", "-l", "11"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["schema_version"], 1);
    assert_eq!(doc["verdict"]["kind"], "Yes");
    assert!(!doc["verdict"]["reasons"].as_array().unwrap().is_empty());

    assert_eq!(code(&["sl2", "simple", "-p", "2", "-l", "3"]), 3);
    let out = redpair(&["sl2", "simple", "-p", "5", "-l", "0"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["error"]["code"], "zero_weight");
}

#[test]
fn sl2_simple_oracle_and_explain() {
    let doc = json(&redpair(&[
        "sl2",
        "simple",
        "-p",
        "5",
        "-l",
        "1",
        "--oracle",
        "--explain",
    ]));
    assert_eq!(doc["oracle"]["kind"], "ProvenYes");
    assert_eq!(doc["agreement"], true);
    assert!(doc["explanation"].as_array().unwrap().len() >= 2);
    // No oracle in characteristic 2; the verdict still prints.
    let out = redpair(&["sl2", "simple", "-p", "2", "-l", "1", "--oracle"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(json(&out)["oracle"]["skipped"].is_string());
}

#[test]
fn sl2_weyl_exit_codes() {
    let doc = json(&redpair(&["sl2", "weyl", "-p", "5", "-n", "7", "--oracle"]));
    assert_eq!(doc["verdict"]["kind"], "Yes");
    assert_eq!(doc["oracle"]["kind"], "Yes");
    assert_eq!(doc["agreement"], true);
    assert_eq!(code(&["sl2", "weyl", "-p", "3", "-n", "7"]), 3);
    let out = redpair(&["sl2", "weyl", "-p", "4", "-n", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["error"]["code"], "not_prime");
}

#[test]
fn argument_errors_exit_1_and_help_exits_0() {
    assert_eq!(code(&["sl2", "weyl", "-p", "5"]), 1);
    assert_eq!(code(&["sl3", "analyze", "-p", "5", "-w", "x"]), 1);
    assert_eq!(code(&["no-such-verb"]), 1);
    let out = redpair(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("selftest"));
}

#[test]
fn verify_identities() {
    for p in ["3", "5"] {
        let out = redpair(&["verify-identities", "-p", p, "--max-m", "40"]);
        assert_eq!(out.status.code(), Some(0));
        let text = stdout(&out);
        assert!(text.starts_with("# schema_version=1\n"));
        for line in text.lines().skip(2) {
            assert!(line.ends_with("\t0"), "{line}");
        }
    }
    assert_eq!(code(&["verify-identities", "-p", "2", "--max-m", "5"]), 1);
}

#[test]
fn weyl_scan_with_oracle() {
    let out = redpair(&[
        "sl2", "scan", "--kind", "weyl", "-p", "5", "--max", "100", "--oracle",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let rows: Vec<&str> = text
        .lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .collect();
    assert_eq!(rows.len(), 100);
    assert!(rows.iter().all(|r| r.ends_with("\ttrue")));
    assert!(text.contains("disagreements=0"));
}

#[test]
fn simple_scan_matches_p3_rule() {
    let doc = json(&redpair(&[
        "sl2", "scan", "--kind", "simple", "-p", "3", "--max", "81", "--format", "json",
    ]));
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 81);
    for row in rows {
        let mut n = row["weight"].as_u64().unwrap();
        let mut digits = Vec::new();
        while n > 0 {
            digits.push(n % 3);
            n /= 3;
        }
        let lead = digits.iter().position(|&d| d != 0).unwrap();
        let yes = digits.iter().enumerate().all(|(i, &d)| i == lead || d <= 1);
        assert_eq!(row["kind"], if yes { "Yes" } else { "No" }, "{row}");
    }
}

#[test]
fn characteristic_two_scan_is_all_no() {
    let doc = json(&redpair(&[
        "sl2", "scan", "--kind", "weyl", "-p", "2", "--max", "10", "--format", "json",
    ]));
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 10);
    assert!(rows.iter().all(|r| r["kind"] == "No"));
}

#[test]
fn scan_output_is_independent_of_jobs() {
    let args = |jobs: &'static str| {
        vec![
            "sl2", "scan", "--kind", "simple", "-p", "5", "--max", "300", "--oracle", "--jobs",
            jobs,
        ]
    };
    let one = redpair(&args("1"));
    let four = redpair(&args("4"));
    assert_eq!(one.stdout, four.stdout);
    assert!(!stdout(&one).contains("micros"));
}

#[test]
fn sl3_analyze_paper_example() {
    let out = redpair(&["sl3", "analyze", "-p", "5", "-w", "5,1", "--explain"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    let weights: Vec<Value> = doc["report"]["factors"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| f["weight"].clone())
        .collect();
    assert_eq!(
        Value::Array(weights),
        serde_json::json!([[6, 6], [5, 5], [1, 1], [0, 0]])
    );
    assert_eq!(doc["report"]["verdict"]["kind"], "ProvenYes");
    assert!(doc["explanation"].is_array());
    // The strict reading leaves (6,6) open.
    assert_eq!(
        code(&["sl3", "analyze", "-p", "5", "-w", "5,1", "--strict"]),
        4
    );
}

#[test]
fn sl3_analyze_errors() {
    assert_eq!(code(&["sl3", "analyze", "-p", "3", "-w", "1,1"]), 1);
    let out = redpair(&["sl3", "analyze", "-p", "5", "-w", "4,4"]);
    assert_eq!(out.status.code(), Some(2));
    let doc = json(&out);
    assert_eq!(doc["error"]["code"], "adaptation_failure");
    assert_eq!(doc["error"]["missing_weight"], serde_json::json!([4, 4]));
}

fn chi(a: i64, b: i64) -> FormalCharacter {
    weyl_char_a2(A2Weight::new(a, b)).unwrap()
}

fn write_table(dir: &Path, entries: &[(u64, (i64, i64), FormalCharacter)]) -> String {
    let path = dir.join("table.jsonl");
    let text: String = entries
        .iter()
        .map(|(p, (a, b), character)| {
            let e = TableEntry {
                p: *p,
                weight: A2Weight::new(*a, *b),
                character: character.clone(),
            };
            serde_json::to_string(&e).unwrap() + "\n"
        })
        .collect();
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn user_table_takes_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let analyze = |table: Option<&str>| {
        let mut args = vec!["sl3", "analyze", "-p", "7", "-w", "2,1"];
        if let Some(t) = table {
            args.extend(["--table", t]);
        }
        redpair(&args)
    };
    let plain = analyze(None);
    assert_eq!(plain.status.code(), Some(0));

    // L(3,3) = chi(3,3) - chi(2,2) at p = 7 agrees with the built-in entry.
    let right = chi(3, 3).sub(&chi(2, 2)).unwrap();
    let table = write_table(dir.path(), &[(7, (3, 3), right)]);
    assert_eq!(analyze(Some(&table)).stdout, plain.stdout);

    // A wrong but well-formed entry wins over the built-in one.
    let table = write_table(dir.path(), &[(7, (3, 3), chi(3, 3))]);
    assert_ne!(analyze(Some(&table)).stdout, plain.stdout);

    // A malformed table is an input error.
    let bad = dir.path().join("bad.jsonl");
    std::fs::write(&bad, "{\"p\": 7, \"weight\": [3, 3]}\n").unwrap();
    let out = redpair(&[
        "sl3",
        "analyze",
        "-p",
        "7",
        "-w",
        "1,1",
        "--table",
        bad.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn example_machine_certificate() {
    let out = redpair(&[
        "sl3",
        "example-machine",
        "-p",
        "7",
        "-l",
        "1,1",
        "-m",
        "3,1",
        "-n",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let cert = &json(&out)["certificate"];
    assert_eq!(cert["weight"], serde_json::json!([22, 8]));
    assert_eq!(cert["twist_dimension"], 24);
    let out = redpair(&[
        "sl3",
        "example-machine",
        "-p",
        "5",
        "-l",
        "1,0",
        "-m",
        "3,0",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["error"]["code"], "dimension_divisible");
}

#[test]
fn selftest_passes_and_alarms_fire() {
    let out = redpair(&["selftest"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("0 failed"));

    let out = redpair(&["selftest", "--mutate", "tilting-recursion"]);
    assert_eq!(out.status.code(), Some(5));
    assert!(stdout(&out).contains("negative multiplicity"));

    // Claiming L(3,3) = chi(3,3) at p = 7 passes the per-entry checks but
    // breaks the fixtures and the consistency check.
    let dir = tempfile::tempdir().unwrap();
    let table = write_table(dir.path(), &[(7, (3, 3), chi(3, 3))]);
    let out = redpair(&["selftest", "--table", &table]);
    assert_eq!(out.status.code(), Some(5));
    let text = stdout(&out);
    assert!(text.contains("table_consistency\tFAIL"), "{text}");
}

#[test]
fn persistent_cache_does_not_change_results() {
    let dir = tempfile::tempdir().unwrap();
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_redpair"))
            .args(["sl3", "analyze", "-p", "7", "-w", "2,1"])
            .env("REDPAIR_CACHE_DIR", dir.path())
            .output()
            .unwrap()
    };
    let cold = run();
    let file = dir.path().join("characters.jsonl");
    assert!(file.exists());
    let warm = run();
    assert_eq!(cold.stdout, warm.stdout);
    assert_eq!(
        cold.stdout,
        redpair(&["sl3", "analyze", "-p", "7", "-w", "2,1"]).stdout
    );
    std::fs::remove_file(&file).unwrap();
    assert_eq!(run().stdout, cold.stdout);
}
