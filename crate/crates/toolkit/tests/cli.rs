use hypergrid::ca::{ConfigurationFile, Rule};
use hypergrid_toolkit::cli::run;
use serde_json::Value;

fn call(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("hypergrid").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn ok(args: &[&str]) -> String {
    let (code, out, err) = call(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    out
}

fn ok_json(args: &[&str]) -> Value {
    let mut v = args.to_vec();
    v.push("--json");
    serde_json::from_str(&ok(&v)).unwrap()
}

#[test]
fn encode_and_decode() {
    assert_eq!(ok(&["encode", "12"]), "10101\n");
    assert_eq!(ok(&["decode", "10101"]), "12\n");
    assert_eq!(ok(&["encode", "89"]), "1000000000\n");
    let v = ok_json(&["encode", "100000000000000000000000000000"]);
    let word = v["word"].as_str().unwrap();
    assert_eq!(ok(&["decode", word]), "100000000000000000000000000000\n");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(call(&["encode", "0"]).0, 2);
    assert_eq!(call(&["encode", "-3"]).0, 2);
    assert_eq!(call(&["decode", "0110"]).0, 2);
    assert_eq!(call(&["neighbors", "P5:6:1"]).0, 2);
    assert_eq!(call(&["neighbors", "Q9:C"]).0, 2);
    assert_eq!(call(&["frobnicate"]).0, 2);
    assert_eq!(call(&["path", "P5:1:1", "H7:1:1"]).0, 2);
    assert_eq!(call(&["oracle", "verify", "--grid", "p5", "--radius", "9"]).0, 2);
    assert_eq!(call(&["render", "--grid", "p5", "--radius", "7", "-o", "x.svg"]).0, 2);
    assert_eq!(call(&["broadcast", "P5:C", "7"]).0, 2);
    assert_eq!(call(&["--help"]).0, 0);
}

#[test]
fn tree_relations() {
    assert_eq!(ok(&["parent", "P5:2:1001"]), "P5:2:10 (rank 2)\n");
    assert_eq!(ok(&["parent", "H7:3:1"]), "H7:C (rank 3)\n");
    assert_eq!(call(&["parent", "P5:C"]).0, 1);
    assert_eq!(ok(&["sons", "P5:1:1"]), "P5:1:10\nP5:1:100\nP5:1:101\n");
    assert_eq!(ok(&["sons", "P5:1:10"]), "P5:1:1000\nP5:1:1001\n");
    let v = ok_json(&["sons", "H7:C"]);
    assert_eq!(v["sons"].as_array().unwrap().len(), 7);
}

#[test]
fn neighbors_and_paths() {
    let out = ok(&["neighbors", "P5:C"]);
    assert_eq!(out.lines().collect::<Vec<_>>(), ["P5:1:1", "P5:2:1", "P5:3:1", "P5:4:1", "P5:5:1"]);
    assert_eq!(ok(&["neighbors", "H7:4:101"]).lines().count(), 7);
    let v = ok_json(&["path", "P5:1:1001", "P5:4:1010"]);
    let path = v["path"].as_array().unwrap();
    assert_eq!(path.len() as u64, v["distance"].as_u64().unwrap() + 1);
    assert_eq!(path[0], "P5:1:1001");
    assert_eq!(path[path.len() - 1], "P5:4:1010");
}

#[test]
fn rings() {
    assert_eq!(ok(&["ring", "p5", "2"]), "15\n");
    assert_eq!(ok(&["ring", "h7", "3"]), "56\n");
    assert_eq!(ok(&["ring", "pentagrid", "0"]), "1\n");
    assert_eq!(ok_json(&["ring", "P5", "6"])["count"], "720");
}

#[test]
fn recentering() {
    assert_eq!(ok(&["recenter", "H7:2:1001", "H7:2:1001"]), "H7:C\n");
    let r = ok(&["recenter", "P5:C", "P5:3:1"]);
    assert_eq!(r, "P5:1:1\n");
}

#[test]
fn broadcast_lists_the_ball() {
    let v = ok_json(&["broadcast", "P5:2:101", "2"]);
    let deliveries = v["deliveries"].as_array().unwrap();
    assert_eq!(deliveries.len(), 21);
    let origin = deliveries.iter().find(|d| d["address"] == "P5:2:101").unwrap();
    assert_eq!(origin["relative"], serde_json::json!([]));
    let plain = ok(&["broadcast", "P5:2:101", "1"]);
    assert_eq!(plain.lines().count(), 6);
    assert!(plain.lines().any(|l| l == "P5:2:101 0"));
}

#[test]
fn oracle_verify() {
    let (code, out, _) = call(&["oracle", "verify", "--grid", "h7", "--radius", "3"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("bijection: OK\n"));
    let v = ok_json(&["oracle", "verify", "--grid", "p5", "--radius", "2"]);
    assert_eq!(v["bijection"], true);
    assert_eq!(v["tiles"], 21);
}

#[test]
fn ca_run_floods() {
    let dir = tempfile::tempdir().unwrap();
    let rule = dir.path().join("flood.json");
    let config = dir.path().join("seed.json");
    std::fs::write(&rule, serde_json::to_string(&Rule::flood(5).to_file()).unwrap()).unwrap();
    std::fs::write(&config, r#"{"grid": "P5", "cells": [{"address": "P5:C", "state": 1}]}"#).unwrap();
    let (r, c) = (rule.to_str().unwrap(), config.to_str().unwrap());
    let v = ok_json(&["ca", "run", "--rule", r, "--config", c, "--steps", "3"]);
    assert_eq!(v["supports"], serde_json::json!([1, 6, 21, 61]));
    let plain = ok(&["ca", "run", "--rule", r, "--config", c, "--steps", "1"]);
    let file: ConfigurationFile = serde_json::from_str(&plain).unwrap();
    assert_eq!(file.cells.len(), 6);

    std::fs::write(&config, r#"{"grid": "H7", "cells": [{"address": "H7:C", "state": 1}]}"#).unwrap();
    assert_eq!(call(&["ca", "run", "--rule", r, "--config", c, "--steps", "1"]).0, 1);
    std::fs::write(&config, "not json").unwrap();
    assert_eq!(call(&["ca", "run", "--rule", r, "--config", c, "--steps", "1"]).0, 1);
    let missing = dir.path().join("missing.json");
    assert_eq!(call(&["ca", "run", "--rule", missing.to_str().unwrap(), "--config", c, "--steps", "1"]).0, 2);
}

#[test]
fn render_writes_svg() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("h7.svg");
    ok(&["render", "--grid", "h7", "--radius", "2", "-o", file.to_str().unwrap()]);
    let svg = std::fs::read_to_string(&file).unwrap();
    assert!(svg.starts_with("<?xml"));
    assert_eq!(svg.matches("<path").count(), 29);
    ok(&["render", "--grid", "p5", "--radius", "1", "--center", "P5:2:1001", "-o", file.to_str().unwrap()]);
    assert_eq!(std::fs::read_to_string(&file).unwrap().matches("<path").count(), 6);
    assert_eq!(call(&["render", "--grid", "p5", "--radius", "1", "--center", "H7:C", "-o", "x.svg"]).0, 2);
}
