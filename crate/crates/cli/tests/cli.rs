use std::process::{Command, Output};

use serde_json::Value;

fn homore(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_homore"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn eval_enveloping_commutator() {
    let o = homore(&["eval", "x*y", "--algebra", "enveloping", "--product", "assoc"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "y*x + y\n");
}

#[test]
fn hom_assoc_passes() {
    let o = homore(&["check", "hom-assoc", "--algebra", "quantum-plane", "--degree", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("passed"));
}

#[test]
fn assoc_fails_in_star_mode() {
    let o = homore(&[
        "check",
        "assoc",
        "--algebra",
        "enveloping",
        "--product",
        "star",
        "--degree",
        "2",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let report: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(report["check"], "assoc");
    assert_eq!(report["preset"], "enveloping");
    assert_eq!(report["mode"], "star");
    assert_eq!(report["bounds"], 2);
    assert_eq!(report["passed"], false);
    let witness = &report["witness"];
    assert_eq!(witness["inputs"].as_array().unwrap().len(), 3);
    for field in ["lhs", "rhs", "difference"] {
        assert!(witness[field].is_string());
    }
}

#[test]
fn xyy_associator_matches_closed_form() {
    let o = homore(&["associator", "x", "y", "y", "--algebra", "enveloping"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "(-k^3 + k^4)*y^2*x + (-2*k^3 + 2*k^4)*y^2\n");
    let o = homore(&["hom-associator", "x", "y", "y", "--algebra", "enveloping"]);
    assert_eq!(stdout(&o), "0\n");
}

#[test]
fn bracket_and_numeric_parameters() {
    let o = homore(&["bracket", "x", "y", "--algebra", "enveloping", "--k", "3/2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "3/2*y\n");
    let o = homore(&["eval", "x*y", "--q", "2", "--k", "1", "--product", "star"]);
    assert_eq!(stdout(&o), "2*y*x\n");
}

#[test]
fn several_checks_in_one_run_emit_json_lines() {
    let o = homore(&[
        "check",
        "hom-assoc",
        "anti-comm",
        "weak-unit",
        "alpha-mult",
        "--degree",
        "2",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let reports: Vec<Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(reports.len(), 4);
    assert!(reports
        .iter()
        .all(|r| r["passed"] == true && r.get("witness").is_none()));
}

#[test]
fn weak_unit_candidate() {
    let o = homore(&["check", "weak-unit", "--unit", "y", "--degree", "1"]);
    assert_eq!(o.status.code(), Some(1));
    let o = homore(&[
        "check",
        "weak-unit",
        "--unit",
        "1",
        "--degree",
        "4",
        "--algebra",
        "enveloping",
    ]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn deformation_checks() {
    let o = homore(&[
        "check",
        "bridge",
        "hom-lie-deform",
        "--degree",
        "2",
        "--order",
        "4",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    for line in stdout(&o).lines() {
        let r: Value = serde_json::from_str(line).unwrap();
        assert_eq!(r["order"], 4);
        assert_eq!(r["mode"], "deformation");
    }
    let o = homore(&["check", "bridge", "--k", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn deform_expand() {
    let o = homore(&["deform-expand", "y^2"]);
    assert_eq!(stdout(&o), "y^2 + 2*y^2*t + y^2*t^2\n");
    let o = homore(&["deform-expand", "y^3", "--order", "1", "--format", "json"]);
    let r: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(r["result"], "y^3 + 3*y^3*t");
    assert_eq!(r["layers"].as_array().unwrap().len(), 2);
}

#[test]
fn relation_audit_reports_both_readings() {
    let o = homore(&["relation-audit", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let r: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    let readings = r["readings"].as_array().unwrap();
    assert_eq!(readings[0]["reading"], "monomial");
    assert_eq!(readings[0]["holds"], true);
    assert_eq!(readings[1]["reading"], "star");
    assert_eq!(readings[1]["holds"], false);
    let o = homore(&["relation-audit", "--k", "1", "--format", "json"]);
    let r: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(r["readings"][1]["holds"], true);
}

#[test]
fn unparenthesized_chains_warn() {
    let o = homore(&["eval", "x*y*y"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("left-associatively"));
    let o = homore(&["eval", "x*(y*y)"]);
    assert!(stderr(&o).is_empty());
}

#[test]
fn usage_and_parse_errors_exit_2() {
    for args in [
        &["eval", "x*"][..],
        &["eval", "y^-1"],
        &["check", "nonsense"],
        &["eval", "x", "--q", "0"],
        &["eval", "x", "--algebra", "heisenberg"],
        &["frobnicate"],
    ] {
        let o = homore(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!stderr(&o).is_empty());
        assert!(stdout(&o).is_empty());
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["check", "assoc", "--degree", "3", "--format", "json"];
    let first = stdout(&homore(&args));
    for _ in 0..3 {
        assert_eq!(stdout(&homore(&args)), first);
    }
}
