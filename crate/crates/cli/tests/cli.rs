use std::process::{Command, Output};

use serde_json::Value;

fn qcb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcb")).args(args).output().expect("binary runs")
}

fn stdout_json(args: &[&str]) -> Value {
    let out = qcb(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn marsh_b4_expansion() {
    let v = stdout_json(&["--type", "B", "--rank", "4", "marsh", "--column", "0,0,0,0"]);
    let indices: Vec<u64> = v["path"].as_array().unwrap().iter().map(|s| s[0].as_u64().unwrap()).collect();
    assert_eq!(indices, [4, 3, 2, 1, 4, 3, 2, 4, 3, 4]);
    assert_eq!(v["global"]["terms"].as_array().unwrap().len(), 6);
    assert_eq!(v["start"], "1,2,3,4");
}

#[test]
fn columns_b2_height_two() {
    let v = stdout_json(&["--type", "B", "--rank", "2", "columns", "--height", "2"]);
    assert_eq!(v["count"], 11);
    assert_eq!(v["admissible"], 10);
    let out = qcb(&["--type", "B", "--rank", "2", "columns", "--height", "2", "--admissible-only", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 11);
    assert!(text.starts_with("column,admissible\n"));
}

#[test]
fn apath_worked_tableau() {
    let v = stdout_json(&[
        "--type",
        "B",
        "--rank",
        "3",
        "apath",
        "--lambda",
        "1,1,2",
        "--tableau",
        "2,2,3/0,-3/0",
        "--rows",
    ]);
    assert_eq!(v["monomial"], "f_2 f_1^(3) f_3^(3) f_2^(2) f_3");
    assert_eq!(v["chain"].as_array().unwrap().len(), 5);
    assert_eq!(v["base"], "1,2,3/1,2/1");
    // the same tableau in column form
    let w = stdout_json(&["--type", "B", "--rank", "3", "apath", "--lambda", "1,1,2", "--tableau", "2,0,0/2,-3/3"]);
    assert_eq!(v, w);
}

#[test]
fn canonical_weight_space() {
    let args = ["--type", "B", "--rank", "3", "canonical", "--lambda", "1,1,2", "--weight", "0,2,-1"];
    let v = stdout_json(&args);
    assert_eq!(v["weight2"], serde_json::json!([0, 4, -2]));
    assert_eq!(v["cols"].as_array().unwrap().len(), 11);
    assert_eq!(v["rows"].as_array().unwrap().len(), 40);
    assert_eq!(v["gamma"].as_array().unwrap().len(), 3);

    let mut tex_args = args.to_vec();
    tex_args.extend(["--format", "tex"]);
    let tex = String::from_utf8(qcb(&tex_args).stdout).unwrap();
    assert!(tex.contains("\\begin{tabular}{l|ccccccccccc}"));
    assert!(tex.contains("$221/\\bar{3}0/\\bar{1}$ & $q^{8}$ & ."));
    assert_eq!(tex.lines().filter(|l| l.ends_with("\\\\")).count(), 41);
}

#[test]
fn output_independent_of_jobs() {
    let base = ["--type", "B", "--rank", "2", "canonical", "--lambda", "1,2", "--format", "csv"];
    let one = qcb(&[&base[..], &["--jobs", "1"]].concat());
    let four = qcb(&[&base[..], &["--jobs", "4"]].concat());
    assert!(one.status.success());
    assert_eq!(one.stdout, four.stdout);
    let text = String::from_utf8(one.stdout).unwrap();
    assert!(text.starts_with("weight,row,col,entry\n"));
}

#[test]
fn crystal_spin_edges() {
    let out = qcb(&["--type", "B", "--rank", "2", "crystal", "--lambda", "0,1", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 4);
    let v = stdout_json(&["--type", "D", "--rank", "4", "crystal", "--lambda", "1,0,0,0"]);
    assert_eq!(v["vertices"].as_array().unwrap().len(), 8);
}

#[test]
fn check_small_range_passes() {
    let v = stdout_json(&["check", "--b-max", "3", "--d-max", "3", "--level", "2", "--jobs", "2"]);
    assert_eq!(v["passed"], true);
    let names: Vec<&str> = v["properties"].as_array().unwrap().iter().map(|p| p["name"].as_str().unwrap()).collect();
    for required in ["crystal_congruence", "unitriangularity", "gamma_bar_symmetry", "wedge_oracle"] {
        assert!(names.contains(&required), "{required} missing");
    }
}

#[test]
fn writes_output_file() {
    let path = std::env::temp_dir().join(format!("qcb-cli-test-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    let out = qcb(&["--type", "D", "--rank", "3", "marsh", "--column", "2,-2", "--output", p]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(v["column"], "2,-2");
}

#[test]
fn exit_codes() {
    assert_eq!(qcb(&["columns", "--height", "2"]).status.code(), Some(64));
    assert_eq!(qcb(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(qcb(&["--type", "B", "--rank", "2", "marsh", "--column", "1,-1"]).status.code(), Some(1));
    assert_eq!(qcb(&["--type", "B", "--rank", "2", "canonical", "--lambda", "1"]).status.code(), Some(1));
    assert_eq!(qcb(&["--type", "D", "--rank", "2", "columns", "--height", "1"]).status.code(), Some(1));
    assert_eq!(
        qcb(&["--type", "D", "--rank", "2", "--experimental", "columns", "--height", "1"]).status.code(),
        Some(0)
    );
    assert_eq!(qcb(&["--help"]).status.code(), Some(0));
}
