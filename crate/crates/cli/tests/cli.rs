use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_quiddity")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn json(args: &[&str]) -> (i32, Value) {
    let (code, text) = run(args);
    (code, serde_json::from_str(&text).unwrap_or_else(|e| panic!("{args:?}: {e}\n{text}")))
}

#[test]
fn check_examples() {
    let (code, v) = json(&["check", "--ring", "Q", "--tuple", "5, 3/5, 3, 2, 4/5"]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "ok");
    assert_eq!(v["payload"]["sign"], -1);
    let (code, v) = json(&["check", "--ring", "Z", "--tuple", "0,0"]);
    assert_eq!((code, v["payload"]["sign"].clone()), (0, Value::from(-1)));
    let (code, v) = json(&["check", "--ring", "Z", "--tuple", "1,1"]);
    assert_eq!(code, 1);
    assert_eq!(v["status"], "no");
    assert_eq!(v["payload"]["message"], "not a λ-quiddity");
}

#[test]
fn irr_examples() {
    let (code, v) = json(&["irr", "--ring", "Z", "--tuple", "2,1,2,1"]);
    assert_eq!(code, 1);
    assert_eq!(v["payload"]["verdict"], "reducible");
    assert_eq!(v["payload"]["certificate"]["b"], serde_json::json!(["1", "1", "1"]));
    let (code, v) = json(&["irr", "--ring", "Z", "--tuple", "0,7,0,-7"]);
    assert_eq!((code, v["payload"]["verdict"].as_str()), (0, Some("irreducible")));
    let (code, v) = json(&["irr", "--ring", "Z", "--tuple", "0,0"]);
    assert_eq!((code, v["payload"]["verdict"].as_str()), (3, Some("excluded")));
    assert_eq!(json(&["irr", "--ring", "Z", "--tuple", "1,1"]).0, 65);
}

#[test]
fn parse_and_usage_errors() {
    let (code, v) = json(&["check", "--ring", "Z/", "--tuple", "1"]);
    assert_eq!(code, 64);
    assert_eq!(v["status"], "error");
    assert_eq!(v["payload"]["position"], 2);
    assert_eq!(json(&["check", "--ring", "Z", "--tuple", "1,,2"]).0, 64);
    assert_eq!(run(&["check", "--ring", "Z"]).0, 64);
    assert_eq!(run(&["frobnicate"]).0, 64);
}

#[test]
fn ell_sl2_and_criteria() {
    let (code, v) = json(&["ell", "--ring", "Z/6"]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["ell"], 6);
    assert!(!v["provenance"].as_array().unwrap().is_empty());
    let (code, v) = json(&["sl2-order", "--ring", "Z/3"]);
    assert_eq!((code, v["payload"]["sl2_order"].as_u64()), (0, Some(24)));
    let (code, v) = json(&["criteria", "--ring", "Z[Y]/(Y^2)"]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["flags"][0]["flag"], "has_nilpotent");
    assert_eq!(v["payload"]["polynomial_ring"]["conclusion"], "polynomial_ring_unbounded");
}

#[test]
fn refusals() {
    let (code, v) = json(&["ell", "--ring", "Z"]);
    assert_eq!((code, v["status"].as_str()), (2, Some("refused")));
    assert_eq!(json(&["enumerate", "--ring", "Z", "--size", "4"]).0, 2);
    let (code, v) = json(&["enumerate", "--ring", "Z[X]", "--size", "8", "--height", "2", "--degree", "2", "--budget", "1000"]);
    assert_eq!(code, 2);
    assert_eq!(v["payload"]["budget"], "1000");
}

#[test]
fn enumerate_formats() {
    let (code, tsv) = run(&["enumerate", "--ring", "Z/3", "--size", "4", "--format", "tsv"]);
    assert_eq!(code, 0);
    assert_eq!(tsv, "0\t0\t0\t0\n0\t1\t0\t2\n1\t2\t1\t2\n");
    let (code, v) = json(&["enumerate", "--ring", "Z", "--size", "3", "--height", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["tuples"], serde_json::json!([["1", "1", "1"], ["-1", "-1", "-1"]]));
    let (_, v) = json(&["enumerate", "--ring", "Z/2", "--size", "4", "--raw"]);
    assert_eq!(v["payload"]["count"], 3);
}

#[test]
fn family_output() {
    let (code, v) = json(&["family", "--name", "zeta8", "--param", "l=2", "--verify"]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["members"][0]["size"], 16);
    assert_eq!(v["payload"]["members"][0]["verdict"], "irreducible");
    let (code, v) = json(&["family", "--name", "irr_Z", "--param", "a=1"]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["members"][2]["claimed_irreducible"], false);
    let (_, v) = json(&["family", "--name", "irr_ZkX", "--param", "k=3", "--param", "P=X^2+2"]);
    assert_eq!(v["payload"]["ring"], "Z/3[X]");
    assert_eq!(json(&["family", "--name", "q_field", "--param", "n=1"]).0, 64);
    assert_eq!(json(&["family", "--name", "nope"]).0, 64);
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["ell", "--ring", "Z/6"][..],
        &["enumerate", "--ring", "Z/4", "--size", "6", "--jobs", "1"],
        &["criteria", "--ring", "Z[Y]/(Y^2+Y+1)"],
    ] {
        assert_eq!(run(args), run(args), "{args:?}");
    }
    let one = run(&["enumerate", "--ring", "Z/5", "--size", "6", "--jobs", "1"]);
    let four = run(&["enumerate", "--ring", "Z/5", "--size", "6", "--jobs", "4"]);
    assert_eq!(one, four);
}

#[test]
fn printed_tuples_round_trip() {
    let cases: [(&str, &[&str]); 4] = [
        ("Z/6", &["enumerate", "--ring", "Z/6", "--size", "6", "--irreducible"]),
        ("Z[X]", &["enumerate", "--ring", "Z[X]", "--size", "4", "--height", "1", "--degree", "1"]),
        ("Z[X]/(X^4+1)", &["family", "--name", "zeta8", "--param", "l=1"]),
        ("Q", &["family", "--name", "q_field", "--param", "n=5"]),
    ];
    for (ring, args) in cases {
        let (_, v) = json(args);
        let tuples: Vec<Value> = match v["payload"].get("tuples") {
            Some(ts) => ts.as_array().unwrap().clone(),
            None => v["payload"]["members"].as_array().unwrap().iter().map(|m| m["tuple"].clone()).collect(),
        };
        assert!(!tuples.is_empty(), "{args:?}");
        for t in tuples {
            let text: Vec<&str> = t.as_array().unwrap().iter().map(|e| e.as_str().unwrap()).collect();
            let (code, back) = json(&["check", "--ring", ring, "--tuple", &text.join(", ")]);
            assert_eq!(code, 0, "{ring} {text:?}");
            assert_eq!(back["payload"]["tuple"], t);
        }
    }
}
