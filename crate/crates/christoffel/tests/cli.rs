use std::path::PathBuf;

use christoffel::cli::{run_with, EXIT_ACCEPTANCE, EXIT_INVALID, EXIT_NUMERIC, EXIT_OK};
use christoffel::io::{scan_rows_from_csv, table_from_csv};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let argv: Vec<String> = std::iter::once("christoffel").chain(args.iter().copied()).map(String::from).collect();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run_with(&argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn legendre_edge_value() {
    let (code, out, _) = run(&["christoffel", "--measure", &data("legendre.json"), "--n", "16", "--x", "1"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.trim().parse::<f64>().unwrap(), 0.0078125);
}

#[test]
fn equilibrium_on_two_bands() {
    let (code, out, _) = run(&["equilibrium", "--measure", &data("two_band.json"), "--at", "0.7"]);
    // 0.7 lies in the gap (-1/sqrt 2, 1/sqrt 2)
    assert_eq!(code, EXIT_INVALID);
    assert!(out.is_empty());
    let (code, out, _) = run(&["equilibrium", "--measure", &data("two_band.json"), "--at", "0.8"]);
    assert_eq!(code, EXIT_OK);
    // |T'(x)| / (2 pi sqrt(1 - T^2)) with T = (2x^2 - 3/2) / (1/2)
    let x: f64 = 0.8;
    let t = 4.0 * x * x - 3.0;
    let want = 8.0 * x / (2.0 * std::f64::consts::PI * (1.0 - t * t).sqrt());
    assert!((out.trim().parse::<f64>().unwrap() - want).abs() < 1e-12);
}

#[test]
fn verify_model_bulk() {
    let (code, out, _) = run(&["verify", "--suite", "model-bulk", "--alpha", "1", "--nmax", "1024"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["criterion"], 3);
}

#[test]
fn verify_failure_exits_with_four() {
    // two sizes leave no rate to fit
    let (code, out, _) = run(&["verify", "--suite", "model-bulk", "--alpha", "1", "--nmax", "256"]);
    assert_eq!(code, EXIT_ACCEPTANCE);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["pass"], false);
}

#[test]
fn usage_and_validation_errors() {
    assert_eq!(run(&["bogus"]).0, EXIT_INVALID);
    assert_eq!(run(&["christoffel", "--n", "3"]).0, EXIT_INVALID);
    assert_eq!(run(&["verify", "--suite", "nope"]).0, EXIT_INVALID);
    assert_eq!(run(&["christoffel", "--measure", "/nonexistent.json", "--n", "3", "--x", "0"]).0, EXIT_INVALID);
    let (code, _, err) = run(&["inverse-image", "--poly", "1,0,1"]);
    assert_eq!(code, EXIT_INVALID);
    assert!(err.contains("real and simple"));
    assert_eq!(run(&["--help"]).0, EXIT_OK);
}

#[test]
fn numeric_failures_exit_with_three() {
    // near the edge fewer than four zeros sit on the left of xi
    let (code, _, err) =
        run(&["zeros", "--measure", &data("legendre.json"), "--n", "8", "--x", "-0.9", "--window", "4"]);
    assert_eq!(code, EXIT_NUMERIC, "{err}");
}

#[test]
fn recurrence_export_round_trips() {
    let (code, out, _) = run(&["recur", "--measure", &data("two_band.json"), "--n", "12"]);
    assert_eq!(code, EXIT_OK);
    let table = table_from_csv(&out).unwrap();
    assert_eq!(table.size(), 12);
    assert!(out.lines().nth(1) == Some("k,b_k,a_k"));
}

#[test]
fn scans_are_deterministic_and_well_formed() {
    let args = ["scan-edge", "--measure", &data("legendre.json"), "--x", "1", "--n", "16,32,64", "--grid", "0:2:0.5"];
    let (code, first, _) = run(&args);
    assert_eq!(code, EXIT_OK);
    assert_eq!(run(&args).1, first);
    assert!(first.starts_with("# scan-edge "));
    assert!(!first.contains('\r'));
    let rows = scan_rows_from_csv(&first).unwrap();
    assert_eq!(rows.len(), 15);
    assert!(rows.iter().all(|r| r.measured > 0.0 && r.predicted > 0.0));

    let mut json_args = args.to_vec();
    json_args.extend(["--format", "json", "--tol", "0.05"]);
    let (code, summary, _) = run(&json_args);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&summary).unwrap();
    assert_eq!(v["pass"], true);
    assert!((v["fitted_order"].as_f64().unwrap() + 2.0).abs() < 0.2);
    assert_eq!(v["constants"]["edge_constant"], 1.0);
}

#[test]
fn ratio_scan_at_origin_is_one() {
    let (code, out, _) = run(&[
        "scan-bulk",
        "--measure",
        &data("two_band.json"),
        "--x",
        "0.8535533905932737",
        "--n",
        "64",
        "--a",
        "0",
        "--quantity",
        "ratio",
    ]);
    assert_eq!(code, EXIT_OK, "{out}");
    let rows = scan_rows_from_csv(&out).unwrap();
    assert_eq!(rows[0].measured, 1.0);
    assert!((rows[0].predicted - 1.0).abs() < 1e-15);
}

#[test]
fn output_file_and_limit_kernels() {
    let path = std::env::temp_dir().join(format!("christoffel-cli-{}.csv", std::process::id()));
    let p = path.display().to_string();
    let (code, out, _) =
        run(&["christoffel", "--measure", &data("legendre.json"), "--n", "4", "--grid", "-1:1:0.5", "--out", &p]);
    assert_eq!(code, EXIT_OK);
    assert!(out.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(text.lines().count(), 6);
    assert!(text.starts_with("x,lambda\n"));

    let (_, out, _) = run(&["kernel", "--kind", "edge", "--alpha", "0", "--a", "0"]);
    assert!((out.trim().parse::<f64>().unwrap() - 0.25).abs() < 1e-15);
    let (_, out, _) = run(&["kernel", "--kind", "bulk", "--alpha", "0", "--a", "-1", "--b", "1"]);
    assert!((out.trim().parse::<f64>().unwrap() - 2f64.sin() / (2.0 * std::f64::consts::PI)).abs() < 1e-14);
}
