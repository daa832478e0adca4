mod common;

use std::process::Command;

use common::fixture_path;
use serde_json::Value;

struct Run {
    stdout: String,
    stderr: String,
    code: i32,
}

fn gradpi(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_gradpi"))
        .args(args)
        .output()
        .expect("binary runs");
    Run {
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
        code: out.status.code().unwrap(),
    }
}

fn with_fixture(name: &str, rest: &[&str]) -> Run {
    let path = fixture_path(name);
    let mut args = vec!["--config", path.to_str().unwrap()];
    args.extend_from_slice(rest);
    gradpi(&args)
}

fn json_records(run: &Run) -> Vec<Value> {
    run.stdout
        .lines()
        .map(|l| {
            let v: Value = serde_json::from_str(l).unwrap_or_else(|e| panic!("{l}: {e}"));
            assert!(v["kind"].is_string(), "{l}");
            v
        })
        .collect()
}

/// Every number in the human output also shows up in the JSON output.
fn numbers_covered(human: &str, json: &str) {
    let numbers = |s: &str| -> Vec<String> {
        s.split(|c: char| !c.is_ascii_digit())
            .filter(|t| !t.is_empty())
            .map(str::to_owned)
            .collect()
    };
    let available = numbers(json);
    for n in numbers(human) {
        assert!(available.contains(&n), "{n} missing from JSON output");
    }
}

#[test]
fn analyze_ut11() {
    let run = with_fixture("ut11_z2.json", &["analyze"]);
    assert_eq!(run.code, 0);
    assert_eq!(
        run.stdout,
        "n: 2\n\
         tuple: (0,1)\n\
         units: 3\n\
         coefficients: rational\n\
         support: 0, 1\n\
         component 0: dim 2, map {1->1, 2->2}\n\
         component 1: dim 1, map {1->2}\n\
         zero components: none\n"
    );
}

#[test]
fn classify_outputs() {
    let run = with_fixture("ut11_z2.json", &["classify"]);
    assert_eq!(run.code, 0);
    assert_eq!(run.stdout, "degenerate, witness x[1,1]x[1,2]; not strong\n");
    let run = with_fixture("m3_z3.json", &["classify"]);
    assert_eq!(run.stdout, "nondegenerate; strong\n");
    let run = with_fixture("m3_z3.json", &["--json", "classify"]);
    let recs = json_records(&run);
    assert_eq!(recs.len(), 1);
    assert_eq!(recs[0]["kind"], "classification");
    assert_eq!(recs[0]["degenerate"], false);
    assert_eq!(recs[0]["strong"], true);
}

#[test]
fn monomials_ut11() {
    let run = with_fixture("ut11_z2.json", &["monomials", "--max-deg", "3"]);
    assert_eq!(run.code, 0);
    assert_eq!(
        run.stdout,
        "(1,1) x[1,1]x[1,2]: irreducible\n\
         (0,1,1) x[0,1]x[1,2]x[1,3]: R1 2..3 -> (1,1)\n\
         (1,0,1) x[1,1]x[0,2]x[1,3]: R2 1 as 1 -> (1,1)\n\
         (1,1,0) x[1,1]x[1,2]x[0,3]: R1 1..2 -> (1,1)\n\
         (1,1,1) x[1,1]x[1,2]x[1,3]: R1 1..2 -> (1,1)\n\
         5 identity words up to degree 3; minimal: (1,1)\n"
    );
    let run = with_fixture("m3_z3.json", &["monomials", "--max-deg", "3"]);
    assert!(
        run.stdout.ends_with("nondegenerate up to bound\n"),
        "{}",
        run.stdout
    );
}

#[test]
fn basis_ut11() {
    let run = with_fixture("ut11_z2.json", &["basis"]);
    assert_eq!(run.code, 0);
    assert_eq!(
        run.stdout,
        "(3) x[0,1]x[0,2] - x[0,2]x[0,1]\n\
         (4:1) x[1,1]x[1,2]x[1,3] - x[1,3]x[1,2]x[1,1]\n\
         (mon) x[1,1]x[1,2]\n\
         3 generators\n"
    );
}

#[test]
fn check_exit_codes() {
    let run = with_fixture("ut11_z2.json", &["check", "-e", "x[1,1]x[1,2]"]);
    assert_eq!(run.code, 0);
    assert!(run.stdout.starts_with("identity: true\n"));

    let run = with_fixture("m3_z3.json", &["check", "-e", "x[1,1]x[2,2]"]);
    assert_eq!(run.code, 1);
    assert!(run.stdout.starts_with("identity: false\n"));
    assert!(
        run.stdout.contains("witness: x[1,1] = e12, x[2,2] = e21"),
        "{}",
        run.stdout
    );

    let run = with_fixture("ut11_z2.json", &["check", "-e", "x[1,"]);
    assert_eq!(run.code, 2);
    assert!(run.stderr.contains("cannot parse"), "{}", run.stderr);
}

#[test]
fn modular_check() {
    let f = "x[1,1]x[1,2]x[1,3] - x[1,3]x[1,2]x[1,1]";
    let run = with_fixture("m3_z3.json", &["--mod-p", "3", "check", "-e", f]);
    assert_eq!(run.code, 1);
    assert!(run.stdout.contains("coefficients: mod 3"));
    assert!(run.stdout.contains("sum 2"), "{}", run.stdout);
    let run = with_fixture("m3_z3.json", &["--mod-p", "4", "analyze"]);
    assert_eq!(run.code, 2);
}

#[test]
fn config_errors_exit_two() {
    assert_eq!(gradpi(&["analyze"]).code, 2);
    assert_eq!(
        gradpi(&["--config", "/nonexistent/x.json", "analyze"]).code,
        2
    );
    // No tensor section.
    assert_eq!(with_fixture("m3_z3.json", &["tensor"]).code, 2);
    // The universe must cover the support.
    assert_eq!(
        with_fixture("ut21_z3.json", &["--degree-universe", "0,1", "basis"]).code,
        2
    );

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(
        &path,
        r#"{"group": {"type": "cyclic", "order": 2}, "tuple": [0, 0], "units": {"blocks": [2]}}"#,
    )
    .unwrap();
    let run = gradpi(&["--config", path.to_str().unwrap(), "analyze"]);
    assert_eq!(run.code, 2, "{}", run.stderr);
    assert!(run.stderr.contains("coincide"), "{}", run.stderr);
}

#[test]
fn tensor_ut11() {
    let run = with_fixture("ut11_z2.json", &["tensor"]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let lines: Vec<&str> = run.stdout.lines().collect();
    assert_eq!(lines.len(), 14);
    assert_eq!(lines[2], "(8) y[0,1]y[0,2] + y[0,2]y[0,1]  [(3); verified]");
    assert_eq!(
        lines[7],
        "(12:1) y[1,1]x[1,2]y[1,3] + y[1,3]x[1,2]y[1,1]  [(4:1); verified]"
    );
    assert_eq!(lines[13], "model E_4: 13 verified, 0 failed, 0 skipped");
}

#[test]
fn verify_passes() {
    let run = with_fixture(
        "ut21_z3.json",
        &["verify", "--samples", "20", "--seed", "7"],
    );
    assert_eq!(run.code, 0, "{}", run.stdout);
    assert!(
        run.stdout.lines().all(|l| l.contains(": ok (")),
        "{}",
        run.stdout
    );
}

#[test]
fn json_mirrors_human_output() {
    let cases: Vec<(&str, Vec<&str>)> = vec![
        ("ut11_z2.json", vec!["analyze"]),
        ("ut21_z3.json", vec!["analyze"]),
        ("ut11_z2.json", vec!["monomials", "--max-deg", "3"]),
        ("ut11_z2.json", vec!["basis"]),
        ("ut21_z3.json", vec!["basis"]),
        ("ut11_z2.json", vec!["classify"]),
        ("ut11_z2.json", vec!["tensor"]),
        ("ut11_z2.json", vec!["verify", "--samples", "10"]),
        ("m3_z3.json", vec!["check", "-e", "x[1,1]x[2,2]"]),
    ];
    for (fixture, args) in cases {
        let human = with_fixture(fixture, &args);
        let mut json_args = vec!["--json"];
        json_args.extend(&args);
        let json = with_fixture(fixture, &json_args);
        assert_eq!(human.code, json.code, "{fixture} {args:?}");
        let recs = json_records(&json);
        assert!(!recs.is_empty());
        numbers_covered(&human.stdout, &json.stdout);
    }
}

#[test]
fn thread_count_does_not_change_output() {
    for args in [
        vec!["tensor"],
        vec!["verify", "--samples", "15"],
        vec!["monomials", "--max-deg", "4"],
    ] {
        let mut one = vec!["--threads", "1"];
        one.extend(&args);
        let mut four = vec!["--threads", "4"];
        four.extend(&args);
        assert_eq!(
            with_fixture("ut11_z2.json", &one).stdout,
            with_fixture("ut11_z2.json", &four).stdout
        );
    }
}
