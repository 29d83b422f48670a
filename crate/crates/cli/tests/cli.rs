use std::process::{Command, Output};

use serde_json::Value;

fn qgrass(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qgrass")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("JSON on stdout")
}

#[test]
fn kappa_example() {
    let o = qgrass(&["kappa", "--n", "4", "--I", "1,2", "--J", "3,4"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "kappa(I,J) = 0\nkappa(J,I) = 2\nlambda = 2\n");
    let o = qgrass(&["kappa", "--n", "4", "--I", "1,2", "--J", "3,4", "--json"]);
    assert_eq!(json(&o), serde_json::json!({"kappa": 0, "reverseKappa": 2, "lambda": 2}));
}

#[test]
fn c_reports_crossing_and_exponent() {
    let o = qgrass(&["c", "--n", "4", "--I", "1,3", "--J", "2,4"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "crossing\n");
    let o = qgrass(&["c", "--n", "5", "--I", "1,4", "--J", "2,3", "--json"]);
    let v = json(&o);
    assert_eq!(v["crossing"], false);
    assert_eq!(v["c"], 0);
    assert_eq!(v["case_ii"], serde_json::json!({"before": [1], "after": [4]}));
}

#[test]
fn verify_lz_gr24() {
    let o = qgrass(&["verify", "lz", "--m", "2", "--n", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "15 pairs, 0 violations\n");
}

#[test]
fn verify_suites_exit_zero() {
    for args in [
        &["verify", "compat", "--m", "3", "--n", "6", "--depth", "4", "--samples", "10"][..],
        &["verify", "plucker", "--m", "2", "--n", "5", "--depth", "2"][..],
        &["verify", "laurent", "--m", "2", "--n", "5", "--samples", "5"][..],
    ] {
        let o = qgrass(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stdout(&o));
        assert!(stdout(&o).ends_with("0 violations\n"), "{}", stdout(&o));
    }
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["kappa", "--n", "4", "--I", "1,2"][..],
        &["kappa", "--n", "4", "--I", "1,2", "--J", "3"][..],
        &["c", "--n", "4", "--I", "1,5", "--J", "2,3"][..],
        &["seed", "--m", "4", "--n", "4"][..],
        &["mutate", "--m", "2", "--n", "5", "--path", "1,3"][..],
        &["verify", "lz", "--m", "0", "--n", "3"][..],
        &["frobnicate"][..],
    ] {
        let o = qgrass(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn seed_prints_rectangle_seed() {
    let o = qgrass(&["seed", "--m", "2", "--n", "4", "--json"]);
    let v = json(&o);
    assert_eq!(v["positions"][0], serde_json::json!({"label": [1, 3], "frozen": false}));
    assert_eq!(v["B"], serde_json::json!([[0], [1], [-1], [1], [-1]]));
    let text = stdout(&qgrass(&["seed", "--m", "2", "--n", "4"]));
    assert!(text.starts_with("Gr(2,4): 5 positions, 1 mutable"), "{text}");
}

#[test]
fn mutate_reports_each_step() {
    let o = qgrass(&["mutate", "--m", "2", "--n", "4", "--path", "1", "--json"]);
    assert!(o.status.success());
    let v = json(&o);
    let step = &v["steps"][0];
    assert_eq!(step["geometricExchange"], true);
    assert_eq!(step["oldLabel"], serde_json::json!([1, 3]));
    assert_eq!(step["newLabel"], serde_json::json!([2, 4]));
    assert_eq!(v["seed"]["history"], serde_json::json!([1]));

    // twice at the same position is the identity
    let back = json(&qgrass(&["mutate", "--m", "3", "--n", "6", "--path", "2,2", "--json"]));
    let start = json(&qgrass(&["seed", "--m", "3", "--n", "6", "--json"]));
    assert_eq!(back["seed"], start);

    let text = stdout(&qgrass(&["mutate", "--m", "2", "--n", "4", "--path", "1"]));
    assert!(text.starts_with("step 1: position 1: {1,3} -> {2,4} (geometric"), "{text}");
}

#[test]
fn explore_summary() {
    let o = qgrass(&["explore", "--m", "2", "--n", "6", "--max-seeds", "100", "--max-depth", "20", "--geometric-only"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["seeds"], 14);
    assert_eq!(v["labels"].as_array().unwrap().len(), 9);
    assert_eq!(v["truncated"], false);

    let v = json(&qgrass(&["explore", "--m", "2", "--n", "7", "--max-seeds", "3", "--max-depth", "20"]));
    assert_eq!((v["seeds"].as_u64(), v["truncated"].as_bool()), (Some(3), Some(true)));
}
