use std::process::Command;

use serde_json::Value;
use sl2_cli::{run, EXIT_CAP, EXIT_FAILED_CHECKS, EXIT_NOT_SURJECTIVE, EXIT_NO_ROOTS, EXIT_OK, EXIT_USAGE};

fn sl2(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("sl2").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> (i32, Value) {
    let (code, out, _) = sl2(args);
    (code, serde_json::from_str(&out).unwrap())
}

#[test]
fn fib_prints_polynomials() {
    let (code, out, _) = sl2(&["fib", "-n", "5"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.trim(), "X^4 + 3*X^2*Y + Y^2");
    let (_, out, _) = sl2(&["fib", "-n", "6", "--homogeneous"]);
    assert_eq!(out.trim(), "X^6 - 5*X^4*Y^2 + 6*X^2*Y^4 - Y^6");
    let (_, out, _) = sl2(&["fib", "-n", "-1", "--homogeneous"]);
    assert_eq!(out.trim(), "0");
    assert_eq!(sl2(&["fib", "-n", "-1"]).0, EXIT_USAGE);
}

#[test]
fn square_census_on_f5() {
    let (code, v) = json(&["census", "--q", "5", "-n", "2", "--brute"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["c"], 5);
    assert_eq!(v["s"], 46);
    assert_eq!(v["mode"], "brute-force");
    assert_eq!(v["ratio_s"], "23/60");
    let (_, formula) = json(&["census", "--q", "5", "-n", "2"]);
    assert_eq!((formula["c"].clone(), formula["s"].clone()), (v["c"].clone(), v["s"].clone()));
    let (_, float) = json(&["census", "--q", "5", "-n", "2", "--float"]);
    assert!(float["ratio_s"].is_f64());
}

#[test]
fn square_roots_of_minus_one() {
    let (code, v) = json(&["root", "--q", "3", "-n", "2", "--elem", "2,0,0,2"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["count"], 6);
    assert_eq!(v["roots"].as_array().unwrap().len(), 6);
    let (_, v) = json(&["root", "--q", "5", "-n", "2", "--elem", "-1,0,0,-1"]);
    assert_eq!(v["count"], 30);
    let (_, one) = json(&["root", "--q", "5", "-n", "2", "--elem", "-1,0,0,-1", "--one"]);
    assert_eq!(one["roots"].as_array().unwrap().len(), 1);
}

#[test]
fn missing_roots_exit_three() {
    // a non-semisimple element with trace -2 has no square root when -1 is a non-square
    let (code, v) = json(&["root", "--q", "3", "-n", "2", "--elem", "2,1,0,2"]);
    assert_eq!(code, EXIT_NO_ROOTS);
    assert_eq!(v["count"], 0);
}

#[test]
fn power_matches_root() {
    let (code, v) = json(&["power", "--q", "7", "-n", "5", "--elem", "1,1,1,2"]);
    assert_eq!(code, EXIT_OK);
    let target = v["power"]["matrix"].as_str().unwrap().to_string();
    let (_, roots) = json(&["root", "--q", "7", "-n", "5", "--elem", &target]);
    let found = roots["roots"].as_array().unwrap().iter().any(|r| r["matrix"] == "1,1,1,2");
    assert!(found, "{roots}");
}

#[test]
fn word_exit_codes() {
    let (code, v) = json(&["word", "--q", "5", "--word", "2,2"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["surjective"], true);
    let (code, v) = json(&["word", "--q", "5", "--word", "4,4", "--missing"]);
    assert_eq!(code, EXIT_NOT_SURJECTIVE);
    assert_eq!(v["missing"].as_array().unwrap().len(), 1);
    assert_eq!(v["missing"][0]["representative"], "4,0,0,4");
    assert_eq!(v["missing_elements"], serde_json::json!(["4,0,0,4"]));
}

#[test]
fn caps_exit_five() {
    let (code, _, err) = sl2(&["census", "--q", "97", "-n", "2", "--brute"]);
    assert_eq!(code, EXIT_CAP);
    assert!(err.contains("cap"));
    let (code, _, _) = sl2(&["verify", "--max-q", "200"]);
    assert_eq!(code, EXIT_CAP);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["root", "--q", "4", "-n", "2", "--elem", "1,0,0,1"],
        vec!["root", "--q", "5", "-n", "2", "--elem", "1,1,1,1"],
        vec!["root", "--q", "5", "-n", "0", "--elem", "1,0,0,1"],
        vec!["word", "--q", "5", "--word", "2,x"],
        vec!["census", "-n", "2"],
        vec!["frobnicate"],
    ] {
        let (code, _, err) = sl2(&args);
        assert_eq!(code, EXIT_USAGE, "{args:?}");
        assert!(!err.is_empty());
    }
    assert_eq!(sl2(&["--help"]).0, EXIT_OK);
}

#[test]
fn verify_reports_each_row() {
    let (code, out, _) = sl2(&["verify", "--max-q", "3", "--max-n", "3"]);
    assert_eq!(code, EXIT_FAILED_CHECKS);
    let failed: Vec<_> = out.lines().filter(|l| l.starts_with("FAIL")).collect();
    assert_eq!(failed.len(), 1, "{out}");
    assert!(failed[0].contains("borel-census") && failed[0].contains("n=2"));
    assert!(out.trim_end().ends_with("1 failed"));
}

#[test]
fn csv_output() {
    let (code, out, _) = sl2(&["census", "--sweep", "5:11", "-n", "3", "--format", "csv"]);
    assert_eq!(code, EXIT_OK);
    let mut reader = csv::Reader::from_reader(out.as_bytes());
    let headers = reader.headers().unwrap().clone();
    assert_eq!(&headers[0], "q");
    let qs: Vec<String> = reader.records().map(|r| r.unwrap()[0].to_string()).collect();
    assert_eq!(qs, ["5", "7", "11"]);

    let (_, out, _) = sl2(&["classes", "--q", "3", "--format", "csv"]);
    assert_eq!(out.lines().count(), 8);
}

#[test]
fn classes_json_sizes_sum_to_group_order() {
    let (_, v) = json(&["classes", "--q", "7"]);
    let total: u64 = v.as_array().unwrap().iter().map(|c| c["size"].as_u64().unwrap()).sum();
    assert_eq!(total, 336);
}

#[test]
fn binary_is_deterministic() {
    let exe = env!("CARGO_BIN_EXE_sl2");
    let args = ["root", "--q", "7", "-n", "4", "--elem", "1,0,0,1"];
    let a = Command::new(exe).args(args).output().unwrap();
    let b = Command::new(exe).args(args).output().unwrap();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(String::from_utf8(a.stdout).unwrap(), sl2(&args).1);
    let bad = Command::new(exe).args(["word", "--q", "3", "--word", "3,3"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_NOT_SURJECTIVE));
}
