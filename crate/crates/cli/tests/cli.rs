//! The `nfold` binary: output, exit codes and determinism.

use std::process::{Command, Output};

fn nfold(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nfold"))
        .args(args)
        .env_remove("NFOLD_DERIV_BOUND")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("UTF-8 output")
}

#[test]
fn derive_raw_three_fold() {
    let o = nfold(&["derive", "--n", "3", "--stage", "raw"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("I_3 = V- - V+ + w2'"), "{text}");
    assert!(text.contains("I_0 = V-''' + w2*V-'' + w1*V-' + w0*V- - w0*V+ + 1/2*w0''"), "{text}");
    assert!(text.contains("display I_0: 2I_0"));
}

#[test]
fn derive_transformed_two_fold() {
    let o = nfold(&["derive", "--n", "2", "--stage", "transformed", "--preset", "paper"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("Ibar_0 = -1/2*w1*u0' - w1'*u0 - 1/4*w1'''"), "{text}");
    assert!(text.contains("display I_0: -4I_0"));
}

#[test]
fn derive_latex() {
    let o = nfold(&["derive", "--n", "2", "--stage", "eliminated", "--format", "latex"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("w_{1}"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["derive", "--n", "0"][..],
        &["derive", "--n", "9", "--stage", "raw"],
        &["derive", "--n", "5", "--stage", "transformed"],
        &["derive", "--n", "3", "--stage", "cooked"],
        &["derive", "--n", "3", "--preset", "nope"],
        &["derive", "--n", "3", "--format", "xml"],
        &["verify", "--suite", "nope"],
        &["search", "--n", "4", "--k", "4"],
        &["search", "--n", "4", "--k", "2", "--preset", "generic"],
        &["emit", "--id", "nope"],
        &["frobnicate"],
    ] {
        let o = nfold(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn bad_environment_bound_is_a_usage_error() {
    let o = Command::new(env!("CARGO_BIN_EXE_nfold"))
        .args(["search", "--n", "2", "--k", "1"])
        .env("NFOLD_DERIV_BOUND", "many")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn exhausted_search_exits_three_and_echoes_bounds() {
    let o = nfold(&["search", "--n", "4", "--k", "2", "--deriv-bound", "1"]);
    assert_eq!(o.status.code(), Some(3));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("bound 1"), "{err}");
}

#[test]
fn search_four_fold_second_integral() {
    let o = nfold(&["search", "--n", "4", "--k", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("-128*J_2 = 32*w3^2*C1 + 2*w3^2*u2''"), "{text}");
    assert!(text.contains("- 16*u1^2 +"), "{text}");
    assert!(text.contains("-128*L_20 = 2*w3"), "{text}");
    assert!(text.contains("scale: -128"));
}

#[test]
fn search_four_fold_degenerate_first_integral() {
    let o = nfold(&["search", "--n", "4", "--k", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("2*J_1 = u0"), "{text}");
    assert!(text.contains("conditions used: Ibar_1"));
    assert!(text.contains("degenerate: u0 = 2*C1 on solutions"));
}

#[test]
fn search_two_fold_integral() {
    let o = nfold(&["search", "--n", "2", "--k", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("16*J_1 = 4*w1^2*u0 + 2*w1*w1'' - w1'^2"), "{text}");
    assert!(text.contains("16*L_10 = -8*w1"), "{text}");
}

#[test]
fn json_output_is_byte_stable() {
    for args in [
        &["search", "--n", "3", "--k", "2", "--format", "json"][..],
        &["derive", "--n", "4", "--stage", "transformed", "--format", "json"],
        &["verify", "--suite", "jzero", "--format", "json"],
        &["emit", "--id", "4fC3", "--format", "json"],
    ] {
        let a = nfold(args);
        let b = nfold(args);
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
        assert!(v.get("items").is_some());
    }
}

#[test]
fn verify_suites() {
    for suite in ["products", "weights", "jzero", "integrals"] {
        let o = nfold(&["verify", "--suite", suite, "--format", "json"]);
        assert_eq!(o.status.code(), Some(0), "{suite}");
        let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        assert_eq!(v["passed"], serde_json::Value::Bool(true), "{suite}");
    }
    let o = nfold(&["verify", "--suite", "products", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["items"].as_array().unwrap().len(), 3);
}

#[test]
fn verify_goldens_reports_failures_with_residuals() {
    // The printed f_2 and f_0 brackets of the N = 4 residual do not match.
    let o = nfold(&["verify", "--suite", "goldens", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let failed: Vec<&str> = v["items"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["status"] != "pass")
        .map(|c| c["id"].as_str().unwrap())
        .collect();
    assert_eq!(failed, ["f_plus", "f_minus"]);
    let f = v["items"].as_array().unwrap().iter().find(|c| c["id"] == "f_plus").unwrap();
    assert!(f["residual"].is_string());
}

#[test]
fn emit_entry_and_listing() {
    let o = nfold(&["emit", "--id", "2fC1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("scale: 16"));
    assert!(text.contains("2fC1 = 4*w1^2*u0 + 2*w1*w1'' - w1'^2"), "{text}");
    let list = stdout(&nfold(&["emit"]));
    assert!(list.lines().count() > 100);
    assert!(list.contains("f_plus:"));
}

#[test]
fn out_flag_writes_a_file() {
    let dir = std::env::temp_dir().join(format!("nfold-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("j1.txt");
    let o = nfold(&["search", "--n", "2", "--k", "1", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("16*J_1"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn help_exits_zero() {
    assert_eq!(nfold(&["--help"]).status.code(), Some(0));
    assert_eq!(nfold(&["--version"]).status.code(), Some(0));
}
