use std::process::Command;

use roothk::cli::{run, EXIT_FAIL, EXIT_PASS, EXIT_USAGE};

fn run_args(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(std::iter::once("roothk").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(s: &str) -> serde_json::Value {
    serde_json::from_str(s).expect("valid JSON")
}

fn check<'a>(doc: &'a serde_json::Value, suffix: &str) -> &'a serde_json::Value {
    doc["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"].as_str().unwrap().ends_with(suffix))
        .unwrap_or_else(|| panic!("no check ending in {suffix}"))
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["analyze", "A", "0"][..],
        &["analyze", "Q", "3"],
        &["analyze", "E", "9"],
        &["analyze", "A", "3", "--lattice", "weight"],
        &["analyze", "A", "3", "--lattice", "index:7"],
        &["analyze", "A", "3", "--format", "xml"],
        &["report", "--suite", "nightly"],
        &["sublattices", "H", "3"],
        &["--group-cap", "0", "lemma-check"],
        &["frobnicate"],
    ] {
        let (code, out, err) = run_args(args);
        assert_eq!(code, EXIT_USAGE, "{args:?}: {out}{err}");
        assert!(out.is_empty(), "{args:?}");
        assert!(!err.is_empty(), "{args:?}");
    }
}

#[test]
fn help_exits_0() {
    assert_eq!(run_args(&["--help"]).0, EXIT_PASS);
    assert_ne!(EXIT_PASS, EXIT_FAIL);
}

#[test]
fn analyze_json_schema() {
    let (code, out, _) = run_args(&["analyze", "A", "3", "--lattice", "dual"]);
    assert_eq!(code, EXIT_PASS);
    let doc = json(&out);
    assert_eq!(doc["command"], "analyze");
    for c in doc["checks"].as_array().unwrap() {
        assert!(c["name"].is_string());
        assert!(["pass", "fail", "skipped"].contains(&c["status"].as_str().unwrap()));
        assert!(c["values"].is_object());
        assert!(c["paper_ref"].is_string());
        for v in c["values"].as_object().unwrap().values() {
            assert!(v.is_i64() || v.is_string(), "{v}");
        }
    }
    assert_eq!(check(&doc, "/known_model")["values"]["tag"], "generalized Kummer K_n(A) (birational)");
    assert_eq!(check(&doc, "/lattice")["values"]["label"], "A3*");
    assert_eq!(check(&doc, "/freeness_codim2")["values"]["min_codim"], 2);
}

#[test]
fn analyze_e8_skips_freeness() {
    let (code, out, _) = run_args(&["analyze", "E", "8"]);
    assert_eq!(code, EXIT_PASS);
    let doc = json(&out);
    assert_eq!(check(&doc, "/freeness_codim2")["status"], "skipped");
    assert_eq!(check(&doc, "/symplectic_form_dim")["values"]["dim"], 1);
    assert_eq!(check(&doc, "/resolution")["values"]["verdict"], "not_resolvable");
    assert_eq!(doc["summary"]["skipped"], 1);
}

#[test]
fn tsv_mirrors_json() {
    let (_, j, _) = run_args(&["sublattices", "B", "4"]);
    let (code, t, _) = run_args(&["sublattices", "B", "4", "--format", "tsv"]);
    assert_eq!(code, EXIT_PASS);
    let doc = json(&j);
    let lines: Vec<&str> = t.lines().collect();
    assert_eq!(lines[0], "name\tstatus\tvalues\tpaper_ref");
    let checks = doc["checks"].as_array().unwrap();
    assert_eq!(lines.len(), checks.len() + 1);
    for (line, c) in lines[1..].iter().zip(checks) {
        let cols: Vec<&str> = line.split('\t').collect();
        assert_eq!(cols[0], c["name"]);
        assert_eq!(cols[1], c["status"]);
        assert_eq!(cols[3], c["paper_ref"]);
    }
    assert!(t.contains("labels=[D4,Z4,D4*]"));
}

#[test]
fn lemma_check_covers_all_types() {
    let (code, out, _) = run_args(&["lemma-check", "--max-rank", "4"]);
    assert_eq!(code, EXIT_PASS);
    let doc = json(&out);
    let names: Vec<&str> = doc["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert_eq!(
        names,
        ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C2", "C3", "C4", "D3", "D4", "F4", "G2"].map(|s| format!("lemma/{s}"))
    );
}

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_roothk"))
}

#[test]
fn group_cap_from_env_and_flag() {
    let status = |cmd: &mut Command| {
        let out = cmd.output().unwrap();
        assert_eq!(out.status.code(), Some(EXIT_PASS));
        let doc = json(&String::from_utf8(out.stdout).unwrap());
        check(&doc, "/freeness_codim2")["status"].as_str().unwrap().to_string()
    };
    assert_eq!(status(binary().args(["analyze", "A", "3"]).env_remove("ROOTHK_GROUP_CAP")), "pass");
    assert_eq!(status(binary().args(["analyze", "A", "3"]).env("ROOTHK_GROUP_CAP", "10")), "skipped");
    assert_eq!(
        status(binary().args(["analyze", "A", "3", "--group-cap", "100"]).env("ROOTHK_GROUP_CAP", "10")),
        "pass"
    );
    let bad = binary().args(["analyze", "A", "3"]).env("ROOTHK_GROUP_CAP", "lots").output().unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_USAGE));
}

#[test]
fn binary_usage_exit_code() {
    let out = binary().args(["analyze", "A", "0"]).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_USAGE));
    assert!(out.stdout.is_empty());
}
