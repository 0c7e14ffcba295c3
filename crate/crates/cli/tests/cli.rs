use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name].iter().collect();
    p.display().to_string()
}

fn invar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_invar"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn results(args: &[&str]) -> Value {
    let out = invar(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    v["results"].clone()
}

fn code(args: &[&str]) -> i32 {
    invar(args).status.code().unwrap()
}

#[test]
fn delta_on_the_brieskorn_curve() {
    let r = results(&["delta", &data("brieskorn.json")]);
    assert_eq!(r["delta"], 1);
    assert_eq!(r["terms"], json!(["5", "2", "4", "6"]));
    assert_eq!(r["consistent"], true);
    assert_eq!(r["formulas"]["general"]["delta"], 1);
    let signs: Vec<i64> = r["formulas"]["qgorenstein"]["terms"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| t["sign"].as_i64().unwrap())
        .collect();
    assert_eq!(signs, vec![1, -1, 1, -1]);
}

#[test]
fn graph_info_reports() {
    let r = results(&["graph-info", &data("brieskorn.json")]);
    assert_eq!(r["zk"], json!(["8", "16", "24", "12", "10", "5", "10", "5"]));
    assert_eq!(r["h_order"], 5);
    assert_eq!(r["numerically_gorenstein"], true);
    assert_eq!(r["rational"], false);
    let a1 = results(&["graph-info", &data("a1.json"), "--duals"]);
    assert_eq!(a1["h_order"], 2);
    assert_eq!(a1["rational"], true);
    assert_eq!(a1["duals"], json!([{ "vertex": 0, "cycle": ["1/2"] }]));
}

#[test]
fn trace_ends_at_the_minimal_cycle() {
    let r = results(&["graph-info", &data("brieskorn.json"), "--trace"]);
    let steps = r["trace"].as_array().unwrap();
    assert!(!steps.is_empty());
    for step in steps {
        assert!(step["add"].is_u64() && step["cycle"].is_array());
    }
    assert_eq!(steps.last().unwrap()["cycle"], r["z_min"]);
    let d = results(&["delta", &data("brieskorn.json"), "--trace"]);
    assert!(d["trace"].is_array());
}

#[test]
fn iteration_cap_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_invar"))
        .args(["graph-info", &data("brieskorn.json"), "--trace"])
        .env("INVAR_ITER_CAP", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no anti-nef cycle"));
}

#[test]
fn semigroup_examples() {
    let r = results(&["semigroup", "--sf", "b0=2;legs=3/1,3/1,7/4,7/4"]);
    assert_eq!(r["gaps"], json!([1, 2, 4]));
    assert_eq!(r["genus"], json!({ "formula": 3, "direct": 3, "consistent": true }));
    assert_eq!(r["conductor"], json!({ "formula": "5", "direct": "5", "consistent": true }));
    assert_eq!(r["symmetric"]["direct"], false);

    let r = results(&["semigroup", "--sf", "b0=2;legs=3/1,3/1,3/1"]);
    assert_eq!(r["generators"], json!([2, 3]));
    assert_eq!(r["symmetric"]["direct"], true);

    let r = results(&["semigroup", "--sf", "b0=3;legs=2/1,3/2"]);
    assert_eq!(r["gaps"], json!([]));
    assert_eq!(r["genus"]["direct"], 0);

    let r = results(&["semigroup", &data("doubled.json")]);
    assert_eq!(r["gaps"], json!([1, 2, 4]));
}

#[test]
fn pg_table_for_the_brieskorn_germ() {
    let r = results(&["pg", "--sf", "b0=2;legs=2/1,3/2,5/2,5/2"]);
    assert_eq!(r["pg"], 6);
    assert_eq!(r["pg_checks"]["consistent"], true);
    let rows = r["classes"].as_array().unwrap();
    assert_eq!(rows.len(), 5);
    // the file lists legs in another order, so match the class of E*_6 there
    let f = results(&["pg", &data("brieskorn.json")]);
    let row = f["classes"]
        .as_array()
        .unwrap()
        .iter()
        .find(|row| row["class"] == json!(["0", "0", "0", "0", "3/5", "4/5", "2/5", "1/5"]))
        .unwrap();
    assert_eq!(row["pg"], 4);
}

#[test]
fn pg_falls_back_to_the_rational_identity() {
    let out = invar(&["pg", &data("a1.json")]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(out.status.success());
    let r = &v["results"];
    assert_eq!(r["pg"], 0);
    assert_eq!(r["classes"].as_array().unwrap().len(), 2);
}

#[test]
fn seifert_info_channels_agree() {
    let r = results(&["seifert-info", &data("brieskorn.json")]);
    for key in ["h_order", "o", "gamma"] {
        assert_eq!(r[key]["consistent"], true, "{key}");
    }
    assert_eq!(r["seifert"], "(-2; (2,1), (3,2), (5,2), (5,2))");
    let r = results(&["seifert-info", "--sf", "b0=2;legs=3/1,3/1,7/4,7/4"]);
    assert_eq!(r["h_order"]["direct"], "84");
    assert_eq!(r["o"]["direct"], "4");
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["graph-info", &data("bad_edges.json")]), 1);
    assert_eq!(code(&["graph-info", "/nonexistent/graph.json"]), 1);
    assert_eq!(code(&["graph-info", &data("cycle.json")]), 2);
    assert_eq!(code(&["graph-info", &data("indefinite.json")]), 2);
    assert_eq!(code(&["delta", &data("doubled.json")]), 2);
    assert_eq!(code(&["delta", &data("two_nodes.json")]), 2);
    assert_eq!(code(&["semigroup", &data("two_nodes.json")]), 2);
    assert_eq!(code(&["pg", "--sf", "b0=1;legs=2/1,3/2"]), 2);
    assert_eq!(code(&["pg", "--sf", "b0=2;legs=4/2"]), 1);
    assert_eq!(code(&["pg", "--sf", "b0=2;legs=3-1"]), 1);
    assert_eq!(code(&["pg"]), 1);
    assert_eq!(code(&["bogus"]), 1);
    assert_eq!(code(&["--help"]), 0);
}

#[test]
fn output_is_byte_identical_across_runs() {
    let args = ["semigroup", "--json", "--sf", "b0=2;legs=3/1,3/1,7/4,7/4"];
    assert_eq!(invar(&args).stdout, invar(&args).stdout);
    let a: Value = serde_json::from_slice(&invar(&args).stdout).unwrap();
    let keys: Vec<&String> = a.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["command", "input", "digest", "results", "warnings"]);
    let other: Value =
        serde_json::from_slice(&invar(&["semigroup", "--sf", "b0=2;legs=3/1,3/1,3/1"]).stdout).unwrap();
    assert_ne!(a["digest"], other["digest"]);
    assert!(a["digest"].as_str().unwrap().starts_with("sha256:"));
}

#[test]
fn selftest_passes() {
    let out = invar(&["selftest"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["results"]["mismatches"], 0);
    assert!(v["results"]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["status"] == "ok"));
}
