use std::process::{Command, Output};

fn g2calc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_g2calc")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn parse_echoes_and_checks_jacobi() {
    let o = g2calc(&["parse", "(0,0,0,0,12,15,0)"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("(0,0,0,0,12,15,0)\n"));
    assert!(out.contains("jacobi\tPASS"));
}

#[test]
fn parse_reports_jacobi_failure() {
    assert_eq!(g2calc(&["parse", "(0,0,0,12,14,0)"]).status.code(), Some(0));
    assert_eq!(g2calc(&["parse", "(0,0,12,13+24,0)"]).status.code(), Some(1));
    let o = g2calc(&["parse", "(0,0,12,0,34,0)"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("jacobi\tFAIL"));
}

#[test]
fn syntax_errors_are_usage_errors() {
    assert_eq!(g2calc(&["parse", "(0,0,12"]).status.code(), Some(2));
    assert_eq!(g2calc(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(g2calc(&["closed-forms", "no-such-entry"]).status.code(), Some(2));
    assert_eq!(g2calc(&["paper-verify", "--format", "yaml"]).status.code(), Some(2));
}

#[test]
fn closed_forms_of_g1() {
    let o = g2calc(&["closed-forms", "g1", "--degree", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("dim 27\n"));
    assert!(out.contains("generic: c1234*1234"));
}

#[test]
fn classify_and_metric() {
    let phi = "127+347+567+135-146-236-245";
    assert!(stdout(&g2calc(&["classify", phi])).contains("\tpositive"));
    assert!(stdout(&g2calc(&["classify", "--dim", "6", "135-146-236-245"])).contains("lambda -4"));
    assert!(stdout(&g2calc(&["classify", "-127+347+567+135-146-236-245"])).contains("classify\tPASS"));
    let m = stdout(&g2calc(&["metric", phi]));
    assert!(m.contains("identity: true"));
}

#[test]
fn contact_example() {
    let o = g2calc(&["contact", "kcontact", "--xi", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("contact-metric\tPASS"));
    assert!(out.contains("k-contact\tPASS"));
    let o = g2calc(&["contact", "kcontact", "--half"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn nilsoliton_lambda() {
    let o = g2calc(&["nilsoliton", "17f"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("lambda -5/12"));
}

#[test]
fn obstruct_uses_catalog_certificate() {
    let o = g2calc(&["obstruct", "g1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = g2calc(&["obstruct", "27A", "--x", "6", "--y", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let o = g2calc(&["obstruct", "(0,0,0,0,0,0,12+34+56)", "--x", "6", "--y", "7"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn probe_is_seeded() {
    let a = g2calc(&["obstruct", "(0,0,0,0,0,0,12+34+56)", "--probe", "7", "--seed", "3", "--samples", "5"]);
    let b = g2calc(&["obstruct", "(0,0,0,0,0,0,12+34+56)", "--probe", "7", "--seed", "3", "--samples", "5"]);
    assert_eq!(stdout(&a), stdout(&b));
    assert!(stdout(&a).contains("probe\tFAIL\tlambda"));
}

#[test]
fn block_proof_and_reductions() {
    assert_eq!(g2calc(&["block-proof", "l1"]).status.code(), Some(0));
    assert_eq!(g2calc(&["block-proof", "g1"]).status.code(), Some(2));
    let o = g2calc(&["su3-reduce", "17", "127+347+567+135-146-236-245", "--x", "7"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("half-flat\tPASS\ttrue"));
    let o = g2calc(&["halfflat-lift", "(0,0,0,0,0,0)", "12+34+56", "-246+136+145+235"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("coclosed\tPASS"));
}

#[test]
fn verify_g2_on_contact_example() {
    let o = g2calc(&["verify-g2", "kcontact", "-167-237+457-124-135-256+346"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("coclosed\tPASS\ttrue"));
    assert!(out.contains("identity: true"));
}

#[test]
fn paper_verify_records_are_deterministic() {
    let a = g2calc(&["paper-verify", "--format", "records"]);
    let b = g2calc(&["paper-verify", "--format", "records"]);
    assert_eq!(a.stdout, b.stdout);
    for line in stdout(&a).lines() {
        let v: serde_json::Value = serde_json::from_str(line).expect("json record");
        for k in ["entry", "check", "status", "detail"] {
            assert!(v.get(k).is_some(), "{line}");
        }
    }
}

#[test]
fn strict_turns_flags_into_failures() {
    let o = g2calc(&["paper-verify", "--entry", "kcontact"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("printed-star\tFLAG"));
    let o = g2calc(&["paper-verify", "--entry", "kcontact", "--strict"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn bryant_elimination_is_inconclusive() {
    let o = g2calc(&["bryant", "n8f"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("bryant-display\tFLAG"));
    assert!(out.contains("elimination\tFAIL\tinconclusive"));
}
