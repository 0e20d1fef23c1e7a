use std::process::{Command, Output};

use serde_json::Value;

fn qinv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qinv")).args(args).env_remove("QINV_JOBS").output().unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = qinv(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn construct_external_q3() {
    let v = json(&["construct", "--field", "3^1:4", "--case", "1"]);
    assert_eq!(v["measured"], 16);
    assert_eq!(v["predicted"]["exact"], 16);
    assert_eq!(v["geometry"]["line_position"], "external");
}

#[test]
fn construct_tangent_q4() {
    let v = json(&["construct", "--field", "2^2:8", "--case", "3"]);
    assert_eq!(v["measured"], 27);
}

#[test]
fn census_rows_and_worker_independence() {
    let one = qinv(&["classify", "census", "--field", "5^1:4", "--jobs", "1"]);
    let many = qinv(&["classify", "census", "--field", "5^1:4", "--jobs", "4"]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, many.stdout);
    let text = String::from_utf8(one.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("count,pairs"));
    let rows: Vec<(u64, u64)> = lines
        .map(|l| {
            let (c, n) = l.split_once(',').unwrap();
            (c.parse().unwrap(), n.parse().unwrap())
        })
        .collect();
    assert_eq!(rows.iter().map(|r| r.1).sum::<u64>(), 156 * 156);
    assert!(rows.contains(&(40, 1248)));
    assert!(rows.contains(&(48, 312)));
}

#[test]
fn census_default_field_from_q() {
    let out = qinv(&["classify", "census", "--q", "4"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l == "27,340"));
}

#[test]
fn orbit_counts() {
    let v = json(&["classify", "orbits", "--q", "3", "--target", "16"]);
    assert_eq!(v["classes"], 1);
    assert_eq!(v["classes_by_action"].as_array().unwrap().len(), 1);
}

#[test]
fn certify_subfield_pair() {
    let v = json(&["certify", "--field", "2^1:4", "--A", "1;0,0,1", "--B", "1;0,0,1"]);
    assert!(v["certificate_ok"].as_bool().unwrap());
    assert!(v["bounds"]["within"].as_bool().unwrap());
}

#[test]
fn certify_affine() {
    let v = json(&["certify", "--field", "3^1:5", "--A", "1;0,1", "--B", "0,0,1;0,0,0,1", "--alpha", "0,0,0,0,1", "--beta", "1,1"]);
    assert!(v["certificate_ok"].as_bool().unwrap());
    assert!(v["certificate_degree"].as_u64().unwrap() <= v["degree_bound"].as_u64().unwrap());
}

#[test]
fn eform_commands() {
    let v = json(&["eform", "identities", "--p", "5"]);
    assert_eq!(v["exc1"], true);
    assert_eq!(v["exc2"], true);
    let v = json(&["eform", "build", "--field", "3^1:2", "--a", "0;0;0", "--b", "1;1;1"]);
    assert_eq!(v["terms"].as_array().unwrap().len(), 1);
    assert_eq!(v["terms"][0]["exponent"], serde_json::json!([1, 1, 1]));
    let v = json(&["eform", "factors", "--field", "5^1:1", "--a", "1;1;1", "--b", "1;1;1"]);
    assert_eq!(v["shape"], "EXC2");
    assert_eq!(v["reexpands"], true);
    let v = json(&["eform", "coords", "--field", "3^1:6", "--A", "1;0,1;0,0,1", "--B", "1;0,0,0,1;0,0,0,0,0,1"]);
    assert!(v["defined_over_fq"].is_boolean());
    assert_eq!(v["gammas"].as_array().unwrap().len(), 3);
    assert_eq!(v["transition"].as_array().unwrap().len(), 3);
}

#[test]
fn smoke_level_passes() {
    let out = qinv(&["verify-all", "--level", "smoke"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("[PASS]"));
}

#[test]
fn deterministic_output_and_manifest() {
    let dir = std::env::temp_dir().join(format!("qinv-manifest-{}", std::process::id()));
    let path = dir.to_str().unwrap();
    let a = qinv(&["--seed", "9", "--manifest", path, "construct", "--field", "5^1:4", "--case", "2"]);
    let b = qinv(&["--seed", "9", "construct", "--field", "5^1:4", "--case", "2"]);
    assert_eq!(a.stdout, b.stdout);
    let m: Value = serde_json::from_str(&std::fs::read_to_string(&dir).unwrap()).unwrap();
    assert_eq!(m["seed"], 9);
    assert_eq!(m["field"], "5^1:4");
    std::fs::remove_file(dir).unwrap();
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(qinv(&["nonsense"]).status.code(), Some(2));
    assert_eq!(qinv(&["field", "--field", "6^1:2"]).status.code(), Some(2));
    assert_eq!(qinv(&["construct", "--field", "3^1:4", "--case", "9"]).status.code(), Some(2));
    assert_eq!(qinv(&["certify", "--field", "3^1:4", "--A", "1;2", "--B", "1"]).status.code(), Some(2));
}
