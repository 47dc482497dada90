//! The `jordan` binary end to end: output formats and exit codes.

use std::process::{Command, Output};

use jordan_core::{jordan_partition, JordanRecord};

fn jordan(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jordan"))
        .args(args)
        .env_remove("JORDAN_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn compute_text_line() {
    let out = jordan(&["compute", "4", "17", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("lambda=(18,18,18,14)"), "{text}");
    assert!(text.contains("epsilon=(1,1,1,-3)"), "{text}");
    assert!(text.contains("periodicity:(4,17)->(4,8)"), "{text}");
}

#[test]
fn json_record_round_trips() {
    let out = jordan(&["--format", "json-lines", "compute", "5", "16", "11"]);
    assert_eq!(out.status.code(), Some(0));
    let rec: JordanRecord = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(rec, jordan_partition(5, 16, 11).unwrap());
    assert_eq!(rec.epsilon.to_string(), "(4,2,0,-2,-4)");
    rec.check_invariants().unwrap();
}

#[test]
fn engines_agree_through_the_cli() {
    for method in ["auto", "oracle", "recurrence"] {
        let out = jordan(&[
            "--format",
            "json-lines",
            "compute",
            "6",
            "13",
            "3",
            "--method",
            method,
        ]);
        assert_eq!(out.status.code(), Some(0), "{method}");
        let rec: JordanRecord = serde_json::from_str(stdout(&out).trim()).unwrap();
        assert_eq!(
            rec.lambda,
            jordan_partition(6, 13, 3).unwrap().lambda,
            "{method}"
        );
    }
}

#[test]
fn csv_has_header() {
    let out = jordan(&["--format", "csv", "compute", "5", "3", "2"]);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("r,s,p,m,lambda,epsilon,method,reductions")
    );
    assert!(lines.next().unwrap().starts_with("3,5,2,2,\"(7,4,4)\""));
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| jordan(args).status.code();
    assert_eq!(code(&["compute", "3", "5", "4"]), Some(2), "not prime");
    assert_eq!(code(&["compute", "0", "5", "2"]), Some(2), "r = 0");
    assert_eq!(code(&["compute", "3", "5"]), Some(2), "missing argument");
    assert_eq!(code(&["frobnicate"]), Some(2), "unknown subcommand");
    assert_eq!(
        code(&["count", "4", "--prime-bound", "5"]),
        Some(2),
        "prime bound below 3r"
    );
    assert_eq!(
        code(&[
            "compute",
            "30",
            "30",
            "2",
            "--method",
            "oracle",
            "--oracle-ceiling",
            "100"
        ]),
        Some(3),
        "oracle ceiling"
    );
    assert_eq!(
        code(&["compute", "3", "5", "0", "--method", "oracle"]),
        Some(4),
        "oracle in char 0"
    );
    assert_eq!(code(&["--help"]), Some(0));
}

#[test]
fn errors_go_to_stderr() {
    let out = jordan(&["compute", "3", "5", "4"]);
    assert!(stdout(&out).is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("not a supported prime"));
}

#[test]
fn table_and_count() {
    let out = jordan(&["table", "4"]);
    assert!(stdout(&out).contains("eps(4,s,3) s=4 mod 9: (3,1,-1,-3)"));

    let out = jordan(&["--format", "json-lines", "count", "4", "--list"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["n_r"], 8);
    assert_eq!(v["bound"], 8);
    assert_eq!(v["vectors"].as_array().unwrap().len(), 8);
}

#[test]
fn verify_reports_pass() {
    let out = jordan(&["verify", "4", "7", "2,3,5"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("violations=0"));
}

#[test]
fn output_independent_of_thread_count() {
    let run = |threads: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_jordan"))
            .args(["--format", "json-lines", "count", "7", "--list"])
            .env("JORDAN_THREADS", threads)
            .output()
            .unwrap();
        out.stdout
    };
    assert_eq!(run("1"), run("4"));
}
