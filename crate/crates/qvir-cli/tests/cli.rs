use std::process::{Command, Output};

use serde_json::Value;

fn qvir(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qvir")).args(args).output().expect("binary runs")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json on stdout")
}

#[test]
fn expand_psi_starts_with_one() {
    let o = qvir(&["expand", "--function", "psi", "--lmax", "1", "--xmax", "2", "--params", "u=2/5,s=3/7,Q=5/3,T1=1/2,T2=1/3,T3=1/5,T4=1/7"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    let first = &v["terms"][0];
    assert_eq!((first["dL"].as_i64(), first["dx"].as_i64()), (Some(0), Some(0)));
    assert_eq!(first["coeff"], "1");
    assert_eq!(v["window"]["xmin"], -1);
}

#[test]
fn expand_text_format() {
    let o = qvir(&["expand", "--function", "u", "--lmax", "1", "--params", "u=2/5,s=3/7,Q=5/3", "--format", "text"]);
    assert!(o.status.success());
    assert!(String::from_utf8_lossy(&o.stdout).lines().any(|l| l == "0 0 1"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(qvir(&["expand", "--function", "z", "--lmax", "-1", "--params", "u=2/5,s=3/7,Q=5/3"]).status.code(), Some(2));
    assert_eq!(qvir(&["verify", "--identity", "no_such_identity"]).status.code(), Some(2));
    assert_eq!(qvir(&["verify", "--identity", "qsaalschutz", "--mutate", "a2"]).status.code(), Some(2));
    assert_eq!(qvir(&["expand", "--function", "u", "--params", "u=0.5,s=1/3,Q=2"]).status.code(), Some(2));
}

#[test]
fn identity_passes_and_mutation_fails() {
    let o = qvir(&["verify", "--identity", "qsaalschutz", "--n", "3", "--symbolic"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(json(&o)["verdict"]["pass"], true);
    let o = qvir(&["verify", "--identity", "theorem20", "--lmax", "1", "--xmax", "2", "--mutate", "a2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(json(&o)["verdict"]["mismatch"].is_object());
}

#[test]
fn output_is_reproducible() {
    let args = ["verify", "--identity", "toda21", "--lmax", "2", "--seed", "11", "--trials", "2"];
    let (a, b) = (qvir(&args), qvir(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn degenerate_point_exits_3() {
    // qQ = 1 makes the Toda pivot at (1, -1) vanish.
    let o = qvir(&["verify", "--identity", "toda21", "--lmax", "1", "--params", "u=1/2,s=3/7,Q=4"]);
    assert_eq!(o.status.code(), Some(3), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn wrep_table_and_warning() {
    let o = qvir(&["wrep", "--max-iterations", "0", "--lmax", "1", "--xmin", "0", "--xmax", "1"]);
    assert!(o.status.success());
    let v = json(&o);
    for row in v["table"].as_array().unwrap() {
        assert_eq!(row["errors"].as_array().unwrap().len(), 1);
    }
    let o = qvir(&["wrep", "--max-iterations", "2", "--lmax", "1", "--params", "q=1/3,t=1/2,Q=2"]);
    assert!(o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
    assert!(json(&o)["warning"].is_string());
}

#[test]
fn list_names_every_identity() {
    let o = qvir(&["list"]);
    let text = String::from_utf8_lossy(&o.stdout);
    for name in ["theorem20", "commutator22", "wrep24", "formula_gamma"] {
        assert!(text.contains(name));
    }
}
