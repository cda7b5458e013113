use std::process::{Command, Output};

fn bailey(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bailey")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn list_is_sorted() {
    let out = bailey(&["list"]);
    assert!(out.status.success());
    let ids: Vec<String> = stdout(&out).lines().map(str::to_string).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
    assert!(ids.contains(&"RR-4.11".to_string()));
    assert!(ids.len() >= 35);
}

#[test]
fn list_json() {
    let out = bailey(&["list", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(v.as_array().unwrap().iter().any(|r| r["id"] == "JTP" && r["engine"] == "B"));
}

#[test]
fn verify_json_report() {
    let out = bailey(&["verify", "RR-4.11", "--order", "50", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let r = &v[0];
    assert_eq!(r["id"], "RR-4.11");
    assert_eq!(r["status"], "pass");
    assert_eq!(r["order"], 50);
    assert_eq!(r["seed"], 42);
    assert!(r["first_mismatch"].is_null());
}

#[test]
fn human_report() {
    let out = bailey(&["verify", "SUM-SAALSCHUTZ", "--trials", "5", "--seed", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("SUM-SAALSCHUTZ"));
    assert!(text.contains("pass"));
    assert!(text.contains("trials=5"));
    assert!(text.contains("seed=3"));
    assert!(text.ends_with("1/1 passed\n"));
}

#[test]
fn families_expand() {
    let out = bailey(&["verify", "FAM-5.13", "--max-s", "1", "--order", "15", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 1);
    assert_eq!(v[0]["id"], "FAM-5.13[1]");
}

#[test]
fn out_file_and_jobs() {
    let path = std::env::temp_dir().join(format!("bailey-cli-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    let out = bailey(&["verify", "PAIR-4.8", "--trials", "4", "--jobs", "2", "--json", "--out", p]);
    assert!(out.status.success());
    assert!(stdout(&out).is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v[0]["status"], "pass");
    std::fs::remove_file(path).unwrap();
}

#[test]
fn reruns_are_byte_identical() {
    let args = ["verify", "THM-2.2", "--seed", "42", "--trials", "10", "--json"];
    assert_eq!(bailey(&args).stdout, bailey(&args).stdout);
}

#[test]
fn bad_input_exits_two() {
    assert_eq!(bailey(&["verify", "NOPE-1"]).status.code(), Some(2));
    assert_eq!(bailey(&["verify", "RR-4.11", "--trials", "0"]).status.code(), Some(2));
    assert_eq!(bailey(&["verify", "RR-4.11", "--order", "x"]).status.code(), Some(2));
    assert_eq!(bailey(&["frobnicate"]).status.code(), Some(2));
}
