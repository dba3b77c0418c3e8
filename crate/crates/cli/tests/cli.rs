use serde_json::Value;
use std::process::{Command, Output};

fn typec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_typec"))
        .args(args)
        .env_remove("REPORT_DIR")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn checks(v: &Value) -> &Vec<Value> {
    v["reports"][0]["checks"].as_array().unwrap()
}

#[test]
fn relations_pass() {
    for (m, n) in [("1", "2"), ("2", "3")] {
        let out = typec(&["relations", "--m", m, "--n", n]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
        let v = json(&out);
        assert_eq!(v["suite"], "relations");
        assert_eq!(v["status"], "pass");
        assert!(checks(&v).iter().any(|c| c["name"] == "kink at q=1"));
    }
}

#[test]
fn guards_exit_two() {
    for args in [
        vec!["relations", "--m", "0", "--n", "2"],
        vec!["relations", "--m", "1", "--n", "1"],
        vec!["truncate", "--m", "2", "--m0", "2", "--n", "2"],
        vec!["counts", "--n-max", "0"],
        vec!["--mode", "modp", "--prime", "15", "duality", "--m", "1", "--n", "2"],
        vec!["--threads", "0", "counts"],
        vec!["duality", "--m", "1"],
        vec!["nonsense"],
    ] {
        let out = typec(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn duality_dimensions() {
    let v = json(&typec(&["duality", "--m", "1", "--n", "2", "--mode", "exact"]));
    let r = &v["reports"][0];
    assert_eq!(r["params"]["dim_psi_image"], 10);
    assert_eq!(r["params"]["dim_phi_image"], 2);
    assert_eq!(r["mode"], "exact");
    assert_eq!(v["status"], "pass");
    let v = json(&typec(&["duality", "--m", "2", "--n", "2"]));
    assert_eq!(v["reports"][0]["params"]["dim_phi_image"], 3);
    assert_eq!(v["reports"][0]["mode"], "exact");
}

#[test]
fn counts_lines() {
    let out = typec(&["--format", "text", "counts", "--n-max", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().filter(|l| l.starts_with("PASS")).collect();
    assert_eq!(lines.len(), 8);
    assert!(lines[7].ends_with("actual=2027025"), "{}", lines[7]);
    assert!(text.ends_with("overall PASS\n"));
}

#[test]
fn oehms_and_truncate() {
    let v = json(&typec(&["oehms", "--m", "1", "--n", "3"]));
    assert_eq!(v["reports"][0]["params"]["functionals"], 20);
    assert_eq!(v["status"], "pass");
    let v = json(&typec(&["truncate", "--m", "1", "--m0", "2", "--n", "2"]));
    assert_eq!(checks(&v).len(), 3);
    assert_eq!(v["status"], "pass");
    assert_eq!(v["reports"][0]["params"]["m0_at_least_n"], true);
}

#[test]
fn projectors_and_bimodule() {
    let v = json(&typec(&["projectors", "--m", "1", "--n", "2"]));
    assert_eq!(v["status"], "pass");
    assert_eq!(checks(&v).len(), 3);
    let v = json(&typec(&["bimodule", "--m", "3", "--n", "3"]));
    assert_eq!(checks(&v)[0]["actual"], 216);
    let v = json(&typec(&["bimodule", "--m", "1", "--n", "3"]));
    assert_eq!(checks(&v)[0]["status"], "skipped");
    assert_eq!(v["status"], "pass");
}

#[test]
fn output_is_deterministic() {
    let args = ["--mode", "modp", "--seed", "5", "duality", "--m", "1", "--n", "3"];
    let a = typec(&args);
    let mut one = vec!["--threads", "1"];
    one.extend(args);
    let b = typec(&one);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["seed"], 5);
    assert!(v["reports"][0]["evaluation"]["p"].as_u64().unwrap() > 1 << 30);
    assert!(v["reports"][0].get("runtime_ms").is_none());
    let names: Vec<&str> = checks(&v).iter().map(|c| c["name"].as_str().unwrap()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
}

#[test]
fn timing_flag() {
    let v = json(&typec(&["--timing", "counts", "--n-max", "3"]));
    assert!(v["reports"][0]["runtime_ms"].is_u64());
}

#[test]
fn report_dir_and_out() {
    let dir = std::env::temp_dir().join(format!("typec-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_typec"))
        .args(["counts", "--n-max", "4"])
        .env("REPORT_DIR", &dir)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(dir.join("counts.json")).unwrap()).unwrap();
    assert_eq!(checks(&v).len(), 4);
    let file = dir.join("explicit.txt");
    let out = typec(&["--format", "text", "--out", file.to_str().unwrap(), "bimodule", "--m", "1", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(std::fs::read_to_string(&file).unwrap().contains("bimodule dimension m=1 n=2"));
    std::fs::remove_dir_all(&dir).unwrap();
}
