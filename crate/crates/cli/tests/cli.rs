use std::process::{Command, Output};

use serde_json::Value;

fn wnu(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wnu"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = wnu(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    serde_json::from_str(&stdout(&full)).unwrap()
}

fn code(args: &[&str]) -> i32 {
    wnu(args).status.code().unwrap()
}

#[test]
fn normalize_examples() {
    assert_eq!(
        stdout(&["normalize", "-k", "3", "w(y,w(x,y,z),y)"]),
        "w(w(x,y,z),y,y)\n"
    );
    assert_eq!(stdout(&["normalize", "w(x,x,x)"]), "x\n");
    assert_eq!(stdout(&["normalize", "-k", "4", "w(a,a,b,b)"]), "w(a,a,b,b)\n");
    let v = json(&["normalize", "w(y,x,x)"]);
    assert_eq!(v["normal_form"], "w(y,x,x)");
    assert_eq!(v["w_count"], 1);
}

#[test]
fn eq_and_subterm() {
    assert_eq!(json(&["eq", "w(y,w(x,y,z),y)", "w(w(x,y,z),y,y)"])["equal"], true);
    assert_eq!(json(&["eq", "w(x,y,y)", "w(y,x,x)"])["equal"], false);
    let v = json(&["subterm", "x", "w(x,y,y)"]);
    assert_eq!(v["subterm"], true);
    assert_eq!(v["in_s"], false);
    assert_eq!(json(&["subterm", "x", "y"])["in_s"], true);
}

#[test]
fn enum_lists_normal_terms() {
    let v = json(&["enum", "--vars", "x,y", "--max-w", "1"]);
    assert_eq!(v["count"], 4);
    assert_eq!(v["terms"], serde_json::json!(["x", "y", "w(x,y,y)", "w(y,x,x)"]));
}

#[test]
fn closure_examples() {
    let v = json(&["closure", "-k", "3", "--vars", "x,y,z", "--budget-w", "2"]);
    assert_eq!(v["diagonal_witness"], Value::Null);
    assert_eq!(v["s_violations"], serde_json::json!([]));
    assert_eq!(v["saturated"], true);

    let v = json(&[
        "closure",
        "--gen",
        "(x,y)",
        "--gen",
        "(y,x)",
        "--rounds",
        "1",
        "--list-pairs",
    ]);
    assert!(v["pairs"]
        .as_array()
        .unwrap()
        .contains(&serde_json::json!(["w(y,x,x)", "w(x,y,y)"])));

    let out = stdout(&["closure", "--gen", "(x,x)"]);
    assert!(out.contains("precondition violation"), "{out}");
    let v = json(&["closure", "--gen", "(x,x)"]);
    assert_eq!(v["generator_violations"], serde_json::json!([["x", "x"]]));
}

#[test]
fn check_examples() {
    let v = json(&["check", "-k", "3", "t(r,a,r,e) = t(a,r,e,a)"]);
    assert_eq!(v["classification"]["verdict"], "CandidateNontrivial");
    assert_eq!(v["trivial"], false);
    assert_eq!(v["search"]["outcome"], "absent");
    assert_eq!(v["search"]["candidates_examined"], 1480);
    assert_eq!(v["refutation"]["outcome"], "confirmed_at_budget");

    let v = json(&["check", "t(t(x,y,z),y,z) = t(x,x,z)"]);
    assert_eq!(v["trivial"], true);
    assert_eq!(v["projection_witness"], serde_json::json!({"t": 3}));

    let v = json(&["check", "-k", "3", "t(x,y,z) = t(u,y,v)"]);
    assert_eq!(v["classification"]["verdict"], "Trivial");
    assert_eq!(v["projection_witness"], serde_json::json!({"t": 2}));
    assert!(v.get("search").is_none());
}

#[test]
fn check_reads_files() {
    let path = std::env::temp_dir().join(format!("wnu-cond-{}.txt", std::process::id()));
    std::fs::write(&path, "# two symbols sharing x\nf(x,y) = g(y,x,z)\n").unwrap();
    let v = json(&["check", "--file", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(v["classification"]["shape"], "TwoSymbols");
    assert_eq!(v["trivial"], true);
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["normalize", "w(x,"]), 2);
    assert_eq!(code(&["check", "t(x = t(y)"]), 2);
    assert_eq!(code(&["normalize", "w(x,y)"]), 3);
    assert_eq!(code(&["-k", "2", "normalize", "x"]), 3);
    assert_eq!(code(&["closure", "--vars", "x,y", "--budget-rounds", "0"]), 4);
    assert_eq!(code(&["check", "t(x,y) = t(y,x)", "--budget-pairs", "0"]), 4);
    // a refuted condition is a successful run
    assert_eq!(code(&["check", "t(x,y) = t(y,x)"]), 0);
}

#[test]
fn json_output_is_byte_identical_across_runs() {
    for args in [
        &["--format", "json", "check", "t(r,a,r,e) = t(a,r,e,a)"][..],
        &["--format", "json", "closure", "--vars", "x,y,z", "--list-pairs"][..],
        &["--format", "json", "enum", "-k", "4", "--vars", "a,b,c", "--max-w", "2"][..],
    ] {
        assert_eq!(stdout(args), stdout(args));
    }
}

#[test]
fn selftest_subset() {
    let out = stdout(&["selftest", "--only", "7,10"]);
    assert_eq!(out.lines().filter(|l| l.starts_with("PASS")).count(), 2, "{out}");
}
