use std::process::{Command, Output};

use serde_json::Value;

fn pet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pet")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn eisenstein_weight_four() {
    let out = pet(&["eis", "--weight", "4", "--terms", "5"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["trunc"], 5);
    let coeffs: Vec<(i64, String)> = v["coeffs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| (c[0].as_i64().unwrap(), c[1].as_str().unwrap().to_string()))
        .collect();
    let want: Vec<(i64, String)> =
        [(0, "1/120"), (1, "2"), (2, "18"), (3, "56"), (4, "146")].iter().map(|(e, c)| (*e, c.to_string())).collect();
    assert_eq!(coeffs, want);
}

#[test]
fn trace_of_empty_partition_is_one() {
    let out = pet(&["--format", "text", "trace", "--k", "0", "--phi", "crank", "--terms", "6"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "1 + O(q^6)");
}

#[test]
fn moment_generating_suite_passes() {
    let out = pet(&["verify", "--suite", "theorem2", "--k", "3", "--terms", "20"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["pass"], true);
    assert_eq!(v["suite"], "theorem2");
    assert!(v["first_discrepancy"].is_null());
}

#[test]
fn verify_output_is_byte_identical() {
    let args = ["verify", "--suite", "theorem3", "--zorder", "4", "--terms", "6"];
    let a = pet(&args);
    let b = pet(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn crank_moment_routes_agree() {
    let outs: Vec<Value> = ["definition", "corollary", "lambert"]
        .iter()
        .map(|m| json(&pet(&["crank-moments", "--k", "2", "--method", m, "--terms", "12"])))
        .collect();
    assert_eq!(outs[0], outs[1]);
    assert_eq!(outs[0], outs[2]);
}

#[test]
fn jacobi_trace_expansion_of_theta() {
    let out = pet(&["jacobi", "--divisor", "1@0,0", "--zorder", "4", "--terms", "3"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["var"], "Z");
}

#[test]
fn lattice_report() {
    let out = pet(&["lattice", "--k", "1", "--tau", "0,2", "--radius", "60"]);
    assert!(out.status.success());
    let v = json(&out);
    assert!(v["abs_error"].as_f64().unwrap() < 1e-2);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(pet(&["bogus"]).status.code(), Some(2));
    assert_eq!(pet(&["eis", "--weight", "3"]).status.code(), Some(2));
    assert_eq!(pet(&["lattice", "--k", "1", "--tau", "0,-1"]).status.code(), Some(2));
    assert_eq!(pet(&["verify", "--suite", "theorem3", "--divisor", "2@0,0;-2@0,1/2"]).status.code(), Some(2));
    assert_eq!(pet(&["eis", "--weight", "4", "--unknown"]).status.code(), Some(2));
}

#[test]
fn dump_partitions_lists_all() {
    let v = json(&pet(&["dump-partitions", "--k", "5"]));
    assert_eq!(v.as_array().unwrap().len(), 7);
    assert_eq!(v[0]["partition"], "(1,1,1,1,1)");
}
