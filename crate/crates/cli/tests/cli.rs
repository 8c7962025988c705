use std::process::{Command, Output};

use serde_json::Value;

fn locdom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_locdom")).args(args).output().unwrap()
}

fn records(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn construct_examples() {
    let out = locdom(&["construct", "--gen", "prism:3", "--gen", "k4"]);
    assert!(out.status.success());
    let r = records(&out);
    assert_eq!(r[0]["constructed_size"], 3);
    assert_eq!(r[0]["status"], "ok");
    assert_eq!(r[1]["status"], "skipped_input");
    assert_eq!(r[1]["twin_pair"], "0 1 closed");
}

#[test]
fn a_hundred_random_graphs_give_a_hundred_records() {
    let out = locdom(&["construct", "--gen", "random:12", "--count", "100", "--seed", "3"]);
    assert!(out.status.success());
    let r = records(&out);
    assert_eq!(r.len(), 100);
    for (i, rec) in r.iter().enumerate() {
        assert_eq!(rec["seed"], 3 + i as u64);
        match rec["status"].as_str().unwrap() {
            "ok" => assert!(rec["constructed_size"].as_u64().unwrap() <= 6),
            "skipped_input" => assert!(rec["reason"].is_string()),
            s => panic!("{s}"),
        }
    }
}

#[test]
fn oracle_examples() {
    let out = locdom(&["oracle", "--gen", "prism:4", "--gen", "subset:3", "--gen", "petersen"]);
    let values: Vec<u64> = records(&out).iter().map(|r| r["oracle_value"].as_u64().unwrap()).collect();
    assert_eq!(values, vec![4, 3, 4]);

    let out = locdom(&["oracle", "--gen", "prism:6", "--budget", "3"]);
    assert!(out.status.success());
    assert_eq!(records(&out)[0]["status"], "failed");
}

#[test]
fn extremal_examples() {
    let args = ["extremal", "--gen", "prism:3", "--gen", "prism:4", "--gen", "prism:5", "--gen", "petersen"];
    let v: Value = serde_json::from_slice(&locdom(&args).stdout).unwrap();
    let ids: Vec<&str> =
        v["extremal"].as_array().unwrap().iter().map(|e| e["id"].as_str().unwrap()).collect();
    assert_eq!(ids, vec!["prism:3", "prism:4"]);
    assert_eq!(v["eligible"], 4);

    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.g6");
    std::fs::write(&empty, "").unwrap();
    let v: Value =
        serde_json::from_slice(&locdom(&["extremal", "--in", empty.to_str().unwrap()]).stdout).unwrap();
    assert_eq!(v["graphs"], 0);
    assert_eq!(v["extremal_count"], 0);

    let out = locdom(&["extremal", "--gen", "random:10", "--count", "50"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["graphs"], 50);
    assert_eq!(v["failed"], 0);
}

#[test]
fn output_is_reproducible_across_job_counts() {
    let base = ["construct", "--gen", "random:14", "--count", "40", "--gen", "petersen", "--check"];
    let one = locdom(&[&base[..], &["--jobs", "1"]].concat());
    let many = locdom(&[&base[..], &["--jobs", "4"]].concat());
    assert!(one.status.success());
    assert_eq!(one.stdout, many.stdout);
    let csv1 = locdom(&[&base[..], &["--csv", "--jobs", "3"]].concat());
    let csv2 = locdom(&[&base[..], &["--csv"]].concat());
    assert_eq!(csv1.stdout, csv2.stdout);
    let text = String::from_utf8(csv1.stdout).unwrap();
    assert!(text.starts_with("id,seed,n,"));
    assert_eq!(text.lines().count(), 42);
}

#[test]
fn input_errors_exit_two() {
    assert_eq!(locdom(&["construct", "--in", "/definitely/not/here.g6"]).status.code(), Some(2));
    assert_eq!(locdom(&["construct", "--gen", "prism:2"]).status.code(), Some(2));
    assert_eq!(locdom(&["construct", "--gen", "random:7:0"]).status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("mixed.g6");
    std::fs::write(&path, "E{Sw\nnot graph6 at all\n").unwrap();
    let out = locdom(&["construct", "--in", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    // every line still gets a record
    let r = records(&out);
    assert_eq!(r.len(), 2);
    assert_eq!(r[0]["status"], "ok");
    assert_eq!(r[1]["status"], "skipped_input");
    assert_eq!(r[1]["id"], "line:2");
}

#[test]
fn twins_and_matching_verbs() {
    let r = records(&locdom(&["twins", "--gen", "k33", "--gen", "petersen"]));
    assert_eq!(r[0]["twin_pair"], "0 1 open");
    assert_eq!(r[1]["twin_free"], true);

    let r = records(&locdom(&["matching", "--gen", "petersen", "--gen", "subset:3"]));
    assert_eq!(r[0]["matching_number"], 5);
    assert_eq!(r[1]["matching_number"], 3);
    assert_eq!(r[1]["barrier_size"], 3);
}

#[test]
fn dot_and_out_files() {
    let dir = tempfile::tempdir().unwrap();
    let dots = dir.path().join("dots");
    let out_file = dir.path().join("out.jsonl");
    let out = locdom(&[
        "construct",
        "--gen",
        "prism:4",
        "--out",
        out_file.to_str().unwrap(),
        "--dot",
        dots.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&out_file).unwrap().lines().count(), 1);
    let files: Vec<_> = std::fs::read_dir(&dots).unwrap().collect();
    assert_eq!(files.len(), 1);
    let text = std::fs::read_to_string(files[0].as_ref().unwrap().path()).unwrap();
    assert!(text.starts_with("digraph"));
}
