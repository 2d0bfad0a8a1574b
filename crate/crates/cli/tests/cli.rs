use std::process::{Command, Output};

fn truthlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_truthlab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn fixedpoints_of_bundled_liar_tt() {
    let o = truthlab(&["fixedpoints", "liar_tt"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("8 fixed points (consistent 3, complete 3, symmetric 6, mixed 2)"), "{out}");
    assert!(out.contains("#0 {L: N, U: N}"));
}

#[test]
fn missing_path_falls_back_to_bundled_stem() {
    let o = truthlab(&["fixedpoints", "examples/liar_tt.tl", "--depth", "0"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn system_file_is_read() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tt.tl");
    std::fs::write(&path, "base 0;\nname U := T(U);\n").unwrap();
    let o = truthlab(&["fixedpoints", path.to_str().unwrap(), "--depth", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("4 fixed points"), "{}", stdout(&o));
}

#[test]
fn check_ckf_json_passes_and_is_stable() {
    let args = ["check", "--theory", "ckf", "--model", "lfp-closure", "liar_tt", "--depth", "1", "--format", "json"];
    let a = truthlab(&args);
    assert_eq!(a.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["theory"], "ckf");
    assert_eq!(truthlab(&args).stdout, a.stdout);
}

#[test]
fn check_failure_exits_one() {
    let o = truthlab(&["check", "--theory", "ckf", "--model", "fp#4-closure", "liar_tt", "--depth", "1"]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
}

#[test]
fn eval_closure_and_inner_differ() {
    let s = "T(quote(T(name L) or not T(name L)))";
    let closure = truthlab(&["eval", "--model", "lfp-closure", s]);
    let inner = truthlab(&["eval", "--model", "inner", s]);
    assert_eq!(stdout(&closure).trim(), "true");
    assert_eq!(stdout(&inner).trim(), "false");
    assert_eq!(stdout(&truthlab(&["eval", "--model", "fde", "liar", "T(L)"])).trim(), "N");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(truthlab(&["fixedpoints", "no_such_system.tl"]).status.code(), Some(2));
    assert_eq!(truthlab(&["eval", "T((("]).status.code(), Some(2));
    assert_eq!(truthlab(&["check", "--theory", "nope", "liar"]).status.code(), Some(2));
    assert_eq!(truthlab(&["countermodel", "viii"]).status.code(), Some(2));
    assert_eq!(truthlab(&["bogus"]).status.code(), Some(2));
}

#[test]
fn budget_and_stabilization_exit_three() {
    assert_eq!(truthlab(&["fixedpoints", "grounded", "--max-pool", "3"]).status.code(), Some(3));
    assert_eq!(truthlab(&["check", "--theory", "ckf", "--model", "fh", "liar"]).status.code(), Some(3));
}

#[test]
fn countermodel_item_is_produced() {
    let o = truthlab(&["countermodel", "i", "--depth", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("T14-forward"));
}

#[test]
fn translate_tau_and_list() {
    let o = truthlab(&["translate", "tau", "liar", "T(L)"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(!stdout(&o).trim().is_empty());
    let l = stdout(&truthlab(&["list"]));
    assert!(l.contains("ckf") && l.contains("fh-construction") && l.contains("liar_tt"));
}
