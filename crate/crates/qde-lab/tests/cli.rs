//! The binary's documented examples, exit codes and determinism.

use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qde-lab"))
        .args(args)
        .env_remove("QDELAB_SEED")
        .output()
        .expect("spawn qde-lab")
}

fn json(args: &[&str]) -> Value {
    let o = run(args);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    serde_json::from_slice(&o.stdout).expect("valid JSON")
}

#[test]
fn walls_example() {
    let v = json(&["walls", "--n", "3", "--slope", "-1/6"]);
    assert_eq!(v["schema"], "qde-lab/1");
    assert_eq!(
        v["result"]["window"],
        serde_json::json!(["-1", "-2/3", "-1/2", "-1/3"])
    );
    assert_eq!(v["result"]["alcove"], serde_json::json!(["-1/3", "0"]));
}

#[test]
fn trees_example() {
    let v = json(&["trees", "--lambda", "4,3,1"]);
    assert_eq!(v["result"]["count"], 4);
    let mut signs: Vec<i64> = v["result"]["sign"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_i64().unwrap())
        .collect();
    signs.sort();
    assert_eq!(signs, vec![-1, -1, 1, 1]);
}

#[test]
fn qde_verify_example() {
    let v = json(&[
        "qde-verify",
        "--n",
        "2",
        "--slope",
        "-1/4",
        "--order",
        "2",
        "--draws",
        "1",
    ]);
    assert_eq!(v["ok"], true);
    assert_eq!(v["result"][0]["cx"], "1");
}

#[test]
fn slope_on_a_wall_is_rejected() {
    assert_eq!(
        run(&["walls", "--n", "3", "--slope", "-1/3"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["stab", "--n", "0"]).status.code(), Some(2));
    assert_eq!(run(&["trees"]).status.code(), Some(2));
    assert_eq!(run(&["walls", "--slope", "x"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let args = [
        "stab", "--n", "2", "--slope", "1/3", "--seed", "7", "--draws", "2",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn out_file_matches_stdout() {
    let path = std::env::temp_dir().join(format!("qde-lab-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    let o = run(&[
        "bethe", "--mu", "2,1", "--order", "1", "--draws", "1", "--out", p,
    ]);
    assert_eq!(o.status.code(), Some(0));
    let written = std::fs::read(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(
        written,
        run(&["bethe", "--mu", "2,1", "--order", "1", "--draws", "1"]).stdout
    );
}
