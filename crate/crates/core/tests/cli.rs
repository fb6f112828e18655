use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn dirfp(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_dirfp")).args(args).output().expect("spawn dirfp");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn records(csv_text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut r = csv::Reader::from_reader(csv_text.as_bytes());
    let headers = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r.records().map(|x| x.unwrap().iter().map(String::from).collect()).collect();
    (headers, rows)
}

fn column(headers: &[String], name: &str) -> usize {
    headers.iter().position(|h| h == name).unwrap_or_else(|| panic!("no column {name}"))
}

#[test]
fn dircount_both_methods_agree() {
    let (code, out, _) = dirfp(&["dircount", "--p", "5", "--n", "3", "--method", "both"]);
    assert_eq!(code, 0);
    let (h, rows) = records(&out);
    assert_eq!(h, ["method", "p", "n", "lambda", "count_fp", "predicted", "abs_error", "rel_error"]);
    assert_eq!(rows.len(), 2);
    let c = column(&h, "count_fp");
    assert!(rows.iter().all(|r| r[c] == "6"));
}

#[test]
fn dircount_reports_relative_error() {
    let (code, out, _) = dirfp(&["dircount", "--p", "1000003", "--n", "850"]);
    assert_eq!(code, 0);
    let (h, rows) = records(&out);
    let rel: f64 = rows[0][column(&h, "rel_error")].parse().unwrap();
    assert!(rel.is_finite() && rel < 0.02);
}

#[test]
fn rejects_composite_modulus() {
    let (code, _, err) = dirfp(&["dircount", "--p", "4", "--n", "2"]);
    assert_eq!(code, 2);
    assert!(err.contains("not prime"));
}

#[test]
fn nsolve_examples() {
    let (code, out, _) = dirfp(&["nsolve", "--p", "11", "--n", "3,2", "--method", "both"]);
    assert_eq!(code, 0);
    let (h, rows) = records(&out);
    let v = column(&h, "value");
    let got: Vec<&str> = rows.iter().map(|r| r[v].as_str()).collect();
    assert_eq!(got, ["4", "4", "0", "0"]);
    let (code, _, _) = dirfp(&["nsolve", "--p", "11", "--n", "4", "--method", "fast"]);
    assert_eq!(code, 2);
    let (code, out, _) = dirfp(&["nsolve", "--p", "11", "--n", "4", "--method", "brute"]);
    assert_eq!(code, 0);
    assert!(out.lines().count() == 2);
}

#[test]
fn lambdas_give_sides() {
    let (code, out, _) = dirfp(&["nsolve", "--p", "10007", "--lambdas", "0.8,0.9"]);
    assert_eq!(code, 0);
    let (h, rows) = records(&out);
    let n = column(&h, "n");
    assert_eq!(rows[0][n], "80");
    assert_eq!(rows[1][n], "90");
    assert_eq!(dirfp(&["nsolve", "--p", "10007", "--lambdas", "1.5"]).0, 2);
    assert_eq!(dirfp(&["nsolve", "--p", "10007"]).0, 2);
}

#[test]
fn curve_branch_values() {
    let (code, out, _) = dirfp(&["curve", "--grid", "0.01"]);
    assert_eq!(code, 0);
    let (h, rows) = records(&out);
    assert_eq!(h, ["lambda", "D_lambda", "lambda_squared"]);
    let rows: Vec<Vec<f64>> =
        rows.iter().map(|r| r.iter().map(|x| x.parse().unwrap()).collect()).collect();
    let branch = rows.iter().find(|r| r[0] == FRAC_1_SQRT_2).unwrap();
    assert!((branch[1] - 6.0 / (PI * PI)).abs() < 1e-15);
    assert!((branch[2] - 0.5).abs() < 1e-15);
    let r = rows.iter().find(|r| (r[0] - 1.1).abs() < 1e-9).unwrap();
    assert_eq!(r[1], 1.0);
    assert!(rows.iter().filter(|r| r[0] <= 1.0).all(|r| r[1] >= r[2]));
    assert_eq!(dirfp(&["curve", "--grid", "0.5"]).0, 2);
}

#[test]
fn sweep_over_decades() {
    let (code, out, _) = dirfp(&["sweep", "--pmin", "1000", "--pmax", "1000000", "--lambdas", "0.8"]);
    assert_eq!(code, 0);
    let (h, rows) = records(&out);
    assert_eq!(
        h,
        ["p", "lambda", "n", "exact", "main_term", "error", "error_over_p3_4", "error_over_sqrt_p"]
    );
    let p = column(&h, "p");
    let primes: Vec<&str> = rows.iter().map(|r| r[p].as_str()).collect();
    assert_eq!(primes, ["1009", "10007", "100003", "1000003"]);
    let e = column(&h, "error");
    let rel: Vec<f64> = rows
        .iter()
        .map(|r| r[e].parse::<f64>().unwrap().abs() / r[p].parse::<f64>().unwrap())
        .collect();
    assert!(rel[3] < rel[0]);
    assert_eq!(dirfp(&["sweep", "--pmin", "1000", "--pmax", "10000"]).0, 2);
    let (code, out, _) = dirfp(&["sweep", "--pmax", "10000", "--lambdas", "0.9", "--quantity", "nsolutions"]);
    assert_eq!(code, 0);
    let (h, rows) = records(&out);
    let brute = dirfp(&["nsolve", "--p", "10007", "--n", "90", "--method", "brute"]).1;
    let (bh, brows) = records(&brute);
    assert_eq!(rows[1][column(&h, "n")], "90");
    assert_eq!(rows[1][column(&h, "exact")], brows[0][column(&bh, "value")]);
}

#[test]
fn moments_example() {
    let (code, out, _) = dirfp(&["moments", "--p", "11", "--n", "3"]);
    assert_eq!(code, 0);
    let (h, rows) = records(&out);
    let even: f64 = rows[0][column(&h, "even")].parse().unwrap();
    let odd: f64 = rows[0][column(&h, "odd")].parse().unwrap();
    assert_eq!((even, odd), (9.5, 5.5));
    assert_eq!(rows[0][column(&h, "n1")], "15");
    let (code, out, _) = dirfp(&["moments", "--p", "1009"]);
    assert_eq!(code, 0);
    let (h, rows) = records(&out);
    assert_eq!(rows[0][column(&h, "n")], "30");
}

#[test]
fn equidist_rows_per_modulus() {
    let (code, out, _) = dirfp(&["equidist", "--p", "10007", "--b", "60,97,210"]);
    assert_eq!(code, 0);
    let (h, rows) = records(&out);
    assert_eq!(h, ["p", "b", "tau_b", "x", "len", "discrepancy", "et_bound", "normalizer", "ratio"]);
    assert_eq!(rows.len(), 9);
    let (d, et) = (column(&h, "discrepancy"), column(&h, "et_bound"));
    for r in &rows {
        assert!(r[d].parse::<f64>().unwrap() <= r[et].parse::<f64>().unwrap());
    }
    assert_eq!(dirfp(&["equidist", "--p", "10007"]).0, 2);
}

#[test]
fn sampled_moduli_follow_the_seed() {
    let a = dirfp(&["equidist", "--p", "100003", "--samples", "4", "--seed", "7"]).1;
    let b = dirfp(&["equidist", "--p", "100003", "--samples", "4", "--seed", "7"]).1;
    let c = dirfp(&["equidist", "--p", "100003", "--samples", "4", "--seed", "8"]).1;
    assert_eq!(a, b);
    assert_ne!(a, c);
}

#[test]
fn thread_count_does_not_change_output() {
    for args in [
        vec!["dircount", "--p", "1000003", "--lambdas", "0.75,0.9"],
        vec!["nsolve", "--p", "100003", "--lambdas", "0.95", "--method", "both"],
        vec!["sweep", "--pmax", "100000", "--lambdas", "0.85"],
        vec!["equidist", "--p", "10007", "--b", "30,97", "--samples", "3"],
    ] {
        let mut one = args.clone();
        one.extend(["--threads", "1"]);
        let mut four = args.clone();
        four.extend(["--threads", "4"]);
        let (c1, o1, _) = dirfp(&one);
        let (c4, o4, _) = dirfp(&four);
        assert_eq!((c1, c4), (0, 0));
        assert_eq!(o1, o4, "{args:?}");
    }
}

#[test]
fn json_mirrors_csv() {
    let args = ["dircount", "--p", "10007", "--n", "80,90"];
    let csv_out = dirfp(&args).1;
    let mut json_args = args.to_vec();
    json_args.extend(["--format", "json"]);
    let json: Value = serde_json::from_str(&dirfp(&json_args).1).unwrap();
    let (h, rows) = records(&csv_out);
    let arr = json.as_array().unwrap();
    assert_eq!(arr.len(), rows.len());
    for (obj, row) in arr.iter().zip(&rows) {
        let obj = obj.as_object().unwrap();
        assert_eq!(obj.len(), h.len());
        for (k, v) in h.iter().zip(row) {
            match &obj[k] {
                Value::String(s) => assert_eq!(s, v),
                Value::Number(x) => assert_eq!(x.as_f64().unwrap(), v.parse::<f64>().unwrap(), "{k}"),
                other => panic!("unexpected {other}"),
            }
        }
    }
}

#[test]
fn writes_to_file() {
    let path: PathBuf = [env!("CARGO_TARGET_TMPDIR"), "curve.csv"].iter().collect();
    let (code, out, _) = dirfp(&["curve", "--grid", "0.1", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 14);
}

#[test]
fn verify_small_suite_passes() {
    let (code, out, err) = dirfp(&["verify", "--suite", "small"]);
    assert_eq!(code, 0, "{err}");
    let (h, rows) = records(&out);
    assert_eq!(h, ["id", "name", "passed", "detail"]);
    assert_eq!(rows.len(), 10);
    assert!(rows.iter().all(|r| r[2] == "true"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(dirfp(&[]).0, 2);
    assert_eq!(dirfp(&["dircount", "--p", "abc", "--n", "2"]).0, 2);
    assert_eq!(dirfp(&["dircount", "--p", "11", "--n", "2", "--method", "slow"]).0, 2);
    assert_eq!(dirfp(&["verify", "--suite", "huge"]).0, 2);
    assert_eq!(dirfp(&["--help"]).0, 0);
}
