//! End-to-end runs of the `lyu` binary against the fixtures and goldens.
//! Set `UPDATE_GOLDEN=1` to rewrite the golden files.

use std::path::{Path, PathBuf};
use std::process::Command;

use lyu_core::lyubeznik::{check_lambda_consecutiveness, check_lambda_invariants, LyubeznikTable};
use lyu_core::resolution::BettiTable;
use lyu_core::strands::NuTable;

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn lyu(args: &[&str]) -> (i32, String, String) {
    lyu_env(args, &[])
}

fn lyu_env(args: &[&str], env: &[(&str, &str)]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_lyu"))
        .args(args)
        .current_dir(fixtures())
        .env_remove("LYU_BUDGET")
        .envs(env.iter().copied())
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).expect("utf8"),
        String::from_utf8(out.stderr).expect("utf8"),
    )
}

fn golden(name: &str, args: &[&str]) {
    let (code, stdout, stderr) = lyu(args);
    assert_eq!(code, 0, "{name}: {stderr}");
    let path = fixtures().join("golden").join(format!("{name}.out"));
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &stdout).unwrap();
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden {}", path.display()));
    assert_eq!(stdout, want, "{name}");
}

#[test]
fn goldens() {
    golden("lyubeznik-rp2-char0", &["lyubeznik", "rp2.ideal"]);
    golden("lyubeznik-rp2-char2", &["--char", "2", "lyubeznik", "rp2.ideal"]);
    golden("lyubeznik-rp2-char2-json", &["--char", "2", "--format", "json", "lyubeznik", "rp2.ideal"]);
    golden("lyubeznik-point-and-segments", &["lyubeznik", "point-and-segments.cx"]);
    golden("lyubeznik-six-primes", &["--check", "lyubeznik", "six-primes.json"]);
    golden("nu-rp2-dual-char2", &["--char", "2", "--check", "nu", "--dual", "rp2.ideal"]);
    golden("betti-rp2-char0", &["betti", "rp2.ideal"]);
    golden("betti-rp2-char2", &["--char", "2", "betti", "rp2.ideal"]);
    golden("betti-x1-x2", &["betti", "x1-x2.json"]);
    golden("compose-two-planes", &["compose", "two-planes.ideal", "x1-x2.json"]);
    golden("verify-paper-examples-char2", &["--char", "2", "verify", "paper-examples"]);
}

#[test]
fn oracle_and_subdivision_reproduce_tables() {
    let read = |n: &str| std::fs::read_to_string(fixtures().join("golden").join(n)).unwrap();
    let (_, hochster, _) = lyu(&["--char", "2", "--oracle", "hochster", "betti", "rp2.ideal"]);
    assert_eq!(hochster, read("betti-rp2-char2.out"));
    let (code, koszul, _) = lyu(&["--char", "2", "--oracle", "koszul", "--check", "betti", "rp2.ideal"]);
    assert_eq!(code, 0);
    assert_eq!(koszul, read("betti-rp2-char2.out") + "check: ok\n");
    let (code, sd, err) = lyu(&["--subdivide", "1", "lyubeznik", "point-and-segments.cx"]);
    assert_eq!(code, 0, "{err}");
    assert_eq!(sd, read("lyubeznik-point-and-segments.out"));
}

#[test]
fn characteristic_changes_betti_table() {
    let (_, q, _) = lyu(&["betti", "rp2.ideal"]);
    let (_, f2, _) = lyu(&["--char", "2", "betti", "rp2.ideal"]);
    assert_ne!(q, f2);
}

#[test]
fn exit_codes() {
    assert_eq!(lyu(&["lyubeznik", "missing.json"]).0, 1);
    assert_eq!(lyu(&["betti", "{\"n\": 2, \"gens\": [\"x3\"]}"]).0, 1);
    assert_eq!(lyu(&["--char", "6", "betti", "x1-x2.json"]).0, 1);
    assert_eq!(lyu(&["--rank-mode", "randomized", "nu", "x1-x2.json"]).0, 1);
    let (code, _, err) = lyu_env(&["--engine", "taylor", "betti", "rp2.ideal"], &[("LYU_BUDGET", "taylor=4")]);
    assert_eq!(code, 2, "{err}");
    assert!(err.contains("budget"));
    let (code, out, _) = lyu(&["--char", "2", "verify", "paper-examples", "--inject-fault"]);
    assert_eq!(code, 3);
    assert!(out.contains("FAIL rp2"));
    assert_eq!(lyu(&["verify", "no-such-corpus"]).0, 1);
}

#[test]
fn json_output_round_trips() {
    let v = |s: &str| serde_json::from_str::<serde_json::Value>(s).unwrap();
    let (_, l, _) = lyu(&["--char", "2", "--format", "json", "lyubeznik", "rp2.ideal"]);
    let t = LyubeznikTable::from_json(&v(&l)).unwrap();
    assert_eq!(v(&t.to_json().to_string()), v(&l));
    let (_, n, _) = lyu(&["--char", "2", "--format", "json", "nu", "--dual", "rp2.ideal"]);
    let t = NuTable::from_json(&v(&n)).unwrap();
    assert_eq!(v(&t.to_json().to_string()), v(&n));
    let (_, b, _) = lyu(&["--format", "json", "betti", "--multigraded", "rp2.ideal"]);
    let t = BettiTable::from_json(&v(&b)).unwrap();
    assert_eq!(v(&t.to_json(true).to_string()), v(&b));
}

#[test]
fn randomized_mode_is_reproducible() {
    let args = ["--char", "2", "--rank-mode", "randomized", "--seed", "42", "--format", "json", "nu", "--dual", "rp2.ideal"];
    let (code, a, _) = lyu(&args);
    let (_, b, _) = lyu(&args);
    assert_eq!(code, 0);
    assert_eq!(a, b);
    assert!(a.contains("failure_bound"));
    let (_, e, _) = lyu(&["--char", "2", "--format", "json", "nu", "--dual", "rp2.ideal"]);
    let parse = |s: &str| NuTable::from_json(&serde_json::from_str(s).unwrap()).unwrap();
    assert_eq!(parse(&a), parse(&e));
}

#[test]
fn printed_table_fixture_passes_checks() {
    let text = std::fs::read_to_string(fixtures().join("example-2-2.json")).unwrap();
    let t = LyubeznikTable::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
    assert_eq!(t.rho_sums(), vec![1, 0, 1, 1, 0]);
    assert!(check_lambda_consecutiveness(&t).is_empty());
    assert!(check_lambda_invariants(&t).is_empty());
}

#[test]
fn parse_warnings_go_to_stderr() {
    let (code, out, err) = lyu(&["lyubeznik", "path-redundant.json"]);
    assert_eq!(code, 0);
    assert!(err.contains("warning"));
    assert!(!out.contains("warning"));
}
