use std::process::{Command, Output};

fn hecke(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hecke")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn multiplies_expressions() {
    let o = hecke(&["mul", "theta(1,0)", "theta(-1,0)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "s^2*chi(1,0,0)");
}

#[test]
fn json_output_parses() {
    let o = hecke(&["mul", "theta(0,-1)", "theta(0,-1)", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v.is_object() || v.is_array());
}

#[test]
fn prints_a_coefficient() {
    let o = hecke(&["coeff", "iota*iota", "--at", "1,0,0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "s^2");
}

#[test]
fn classifies_a_matrix() {
    let o = hecke(&["classify", "[[1,1],[t1,1+t1]]", "--q", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "(1,0,0)");
}

#[test]
fn counts_representatives() {
    let o = hecke(&["reps", "1", "1", "--q", "2", "--count-only"]);
    assert_eq!(stdout(&o).trim(), "4");
    let o = hecke(&["reps", "2", "-1", "--q", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(!stdout(&o).is_empty());
}

#[test]
fn oracle_agrees_with_the_table() {
    let o = hecke(&["oracle", "2,0", "2,-1", "--q", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).trim_end().ends_with("agree"));
}

#[test]
fn verifies_a_suite() {
    let o = hecke(&["verify", "im_relations"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("im_relations: PASS"));
    let o = hecke(&["verify", "subalgebra", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["suite"], "subalgebra");
}

#[test]
fn errors_exit_with_two() {
    assert_eq!(hecke(&["mul", "chi(3,0,0)", "iota"]).status.code(), Some(2));
    assert_eq!(hecke(&["classify", "[[1,1],[1]]", "--q", "2"]).status.code(), Some(2));
    assert_eq!(hecke(&["verify", "nonsense"]).status.code(), Some(2));
    assert_eq!(hecke(&["verify", "weyl", "--q", "4"]).status.code(), Some(2));
}
