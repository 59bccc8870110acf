use std::process::{Command, Output};

use core_moments_cli::report::{ReportDocument, Status};

const MEAN_TEXT: &str = "E[X_s] = (5*s^2*F[s+1] - 6*s*F[s] + 7*s*F[s+1] - 6*F[s])/(50*F[s+1])";
const VARIANCE_TEXT: &str = "Var(X_s) = (20*s^3*F[s]*F[s+1] + 10*s^3*F[s+1]^2 - 27*s^2*F[s]^2 \
    + 33*s^2*F[s]*F[s+1] + 57*s^2*F[s+1]^2 - 54*s*F[s]^2 - 32*s*F[s]*F[s+1] + 65*s*F[s+1]^2 \
    - 27*F[s]^2 - 45*F[s]*F[s+1])/(1875*F[s+1]^2)";

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_core-moments"))
        .args(args)
        .env_remove("CORE_MOMENTS_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} exited with {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn gf_small_cases() {
    assert_eq!(stdout(&["gf", "--s", "4"]), "1 + q + q^2 + 2*q^3\n");
    assert_eq!(stdout(&["gf", "--s", "1"]), "1\n");
    assert_eq!(
        stdout(&["gf", "--s", "5", "--method", "recurrence"]),
        "1 + q + q^2 + 2*q^3 + 2*q^4 + q^5\n"
    );
}

#[test]
fn gf_methods_agree() {
    let reference = stdout(&["gf", "--s", "9", "--method", "recurrence"]);
    for m in ["sum", "closed", "brute"] {
        assert_eq!(stdout(&["gf", "--s", "9", "--method", m]), reference, "{m}");
    }
    let cc = stdout(&["gf", "--s", "9", "--method", "cross-check"]);
    assert!(cc.starts_with(&reference));
    assert_eq!(cc.matches(": agrees").count(), 4, "{cc}");
}

#[test]
fn gf_latex_and_json() {
    assert_eq!(stdout(&["--format", "latex", "gf", "--s", "4"]), "G_{4}(q) = 1 + q + q^{2} + 2q^{3}\n");
    let v: serde_json::Value = serde_json::from_str(&stdout(&["gf", "--s", "4", "--format", "json"])).unwrap();
    assert_eq!(v["coefficients"], serde_json::json!(["1", "1", "1", "2"]));
}

#[test]
fn count_matches_fibonacci() {
    let out = stdout(&["count", "--max-s", "4"]);
    let counts: Vec<&str> = out.lines().skip(1).map(|l| l.split('\t').nth(1).unwrap()).collect();
    assert_eq!(counts, ["1", "2", "3", "5"]);
    assert!(out.lines().skip(1).all(|l| l.ends_with("yes")));
    assert_eq!(stdout(&["count", "--max-s", "1"]).lines().nth(1), Some("1\t1\t1\tyes"));
    assert_eq!(stdout(&["count", "--max-s", "30"]).lines().filter(|l| l.ends_with("yes")).count(), 30);
}

#[test]
fn central_moments_at_four() {
    assert_eq!(stdout(&["moments", "--s", "4", "--max-k", "2", "--kind", "central"]), "1\n0\n34/25\n");
    assert_eq!(stdout(&["moments", "--s", "4", "--max-k", "1"]), "1\n9/5\n");
}

#[test]
fn digits_affect_only_decimals() {
    let a = stdout(&["moments", "--s", "6", "--max-k", "3", "--kind", "standardized", "--digits", "5"]);
    let b = stdout(&["moments", "--s", "6", "--max-k", "3", "--kind", "standardized", "--digits", "12"]);
    let exact = |t: &str| t.lines().map(|l| l.split('\t').next().unwrap().to_string()).collect::<Vec<_>>();
    assert_eq!(exact(&a), exact(&b));
    assert_ne!(a, b);
}

#[test]
fn limits_follow_normal_law() {
    let out = stdout(&["limits", "--max-k", "6"]);
    let rows: Vec<Vec<&str>> = out.lines().skip(1).map(|l| l.split('\t').collect()).collect();
    let limits: Vec<&str> = rows.iter().map(|r| r[1]).collect();
    let normal: Vec<&str> = rows.iter().map(|r| r[3]).collect();
    assert_eq!(limits, ["0", "1", "0", "3", "0", "15"]);
    assert_eq!(normal, limits);
}

#[test]
fn fit_mean() {
    let out = stdout(&["fit", "--k", "1"]);
    assert_eq!(out.lines().next(), Some(MEAN_TEXT));
    assert!(out.contains("identity confirmed"));
}

#[test]
fn theorems_match_published_forms() {
    let out = stdout(&["theorems", "--max-k", "2"]);
    let claims: Vec<&str> = out.lines().map(str::trim).collect();
    assert!(claims.contains(&MEAN_TEXT), "{out}");
    assert!(claims.contains(&VARIANCE_TEXT), "{out}");
    assert!(out.contains("verified-on-range"));
    assert!(!out.to_lowercase().contains("proved"));
}

#[test]
fn theorems_json_round_trips() {
    let json = stdout(&["theorems", "--max-k", "3", "--format", "json"]);
    let doc = ReportDocument::from_json(&json).unwrap();
    assert_eq!(doc.to_json(), json);
    assert!(doc.entries.iter().all(|e| e.range.start <= e.range.end));
    assert!(doc.entries.iter().any(|e| e.status == Status::Limit));
    assert_eq!(doc.entries[0].claim, MEAN_TEXT);
}

#[test]
fn theorems_write_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("theorems.txt");
    stdout(&["theorems", "--max-k", "2", "--output", path.to_str().unwrap()]);
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(written, stdout(&["theorems", "--max-k", "2"]));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["theorems", "--max-k", "3", "--format", "latex"][..],
        &["gf", "--s", "12", "--method", "cross-check", "--format", "json"][..],
        &["moments", "--s", "10", "--max-k", "5", "--kind", "standardized"][..],
    ] {
        assert_eq!(stdout(args), stdout(args));
    }
}

#[test]
fn verify_passes() {
    let out = stdout(&["verify", "--max-s", "12", "--brute-max", "8"]);
    assert!(out.trim_end().ends_with("0 failed"), "{out}");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["gf", "--s", "0"]).status.code(), Some(2));
    assert_eq!(run(&["gf", "--bogus"]).status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_core-moments"))
        .args(["gf", "--s", "14", "--method", "brute"])
        .env("CORE_MOMENTS_BUDGET", "50")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
}

#[test]
fn cross_check_skips_brute_force_over_budget() {
    let out = Command::new(env!("CARGO_BIN_EXE_core-moments"))
        .args(["gf", "--s", "14", "--method", "cross-check"])
        .env("CORE_MOMENTS_BUDGET", "50")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("brute: skipped"));
}
