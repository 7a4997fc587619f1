//! Runs the quick examples, which `cargo test` has already built.

use std::path::PathBuf;
use std::process::Command;

fn example_path(name: &str) -> PathBuf {
    // target/<profile>/deps/<this test> -> target/<profile>/examples/<name>
    let exe = std::env::current_exe().unwrap();
    let dir = exe.parent().and_then(|d| d.parent()).unwrap().join("examples");
    dir.join(format!("{name}{}", std::env::consts::EXE_SUFFIX))
}

fn run(name: &str, args: &[&str]) -> String {
    let path = example_path(name);
    let out = Command::new(&path).args(args).output().unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert!(out.status.success(), "{name}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn examples_run() {
    assert!(run("root_data", &["G2"]).contains("|W| = 12"));
    assert!(run("weyl_group", &["F4"]).contains("enumerated 1152, formula 1152"));
    assert!(run("signed_permutations", &[]).contains("B5: 3840 elements"));
    assert!(run("lemma", &[]).lines().count() > 30);
    assert!(run("sublattices", &["C5"]).contains("D5*"));
    assert!(run("fixed_locus", &[]).contains("components 81 (enumerated 81)"));
    assert!(run("hk_verdict", &["E6", "root"]).contains("\"not_resolvable\""));
    let models = run("kummer_model", &[]);
    assert!(models.contains("B3 Z3   -> Sym^n(Kummer K)"), "{models}");
    assert!(models.contains("F4 F4   -> no known model"), "{models}");
}
