use std::process::{Command, Output};

fn quadsum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quadsum"))
        .args(args)
        .env_remove("QUADSUM_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is json")
}

#[test]
fn exit_codes() {
    assert_eq!(quadsum(&["verify-tuple", "5,1,2,2,1,1", "--limit", "2000"]).status.code(), Some(0));
    assert_eq!(quadsum(&["verify-tuple", "2,0,2,0,2,0", "--limit", "100"]).status.code(), Some(1));
    assert_eq!(quadsum(&["represent", "1,2", "5"]).status.code(), Some(2));
    assert_eq!(quadsum(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(quadsum(&["exceptions", "0", "1", "1", "--limit", "5"]).status.code(), Some(2));
}

#[test]
fn failing_tuple_reports_first_counterexample() {
    let out = quadsum(&["verify-tuple", "2,0,2,0,2,0", "--limit", "100", "--no-timing"]);
    let v = stdout_json(&out);
    assert_eq!(v["checks"][0]["status"], "fail");
    assert_eq!(v["checks"][0]["counterexample"]["n"], 7);
}

#[test]
fn small_golden_outputs() {
    let out = quadsum(&["exceptions", "1", "5", "10", "--limit", "10"]);
    assert_eq!(stdout_json(&out)["members"], serde_json::json!([2, 3, 7, 8]));

    let out = quadsum(&["represent", "diag(1,3,21)", "25", "--count"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "14");
    let out = quadsum(&["represent", "1,6,12,-6,0,0", "25", "--count"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "14");

    let out = quadsum(&["descend", "--rule", "R2.1+", "diag(1,5,10)", "1,1,1"]);
    let v = stdout_json(&out);
    assert_eq!(v["output"], serde_json::json!([-4, -4, 4]));
    assert_eq!(v["output_value"], 256);

    let out = quadsum(&["descend", "--driver", "diag(1,5,10)", "6,2,0"]);
    assert_eq!(stdout_json(&out)["result"], serde_json::json!([-1, 3, 1]));

    let out = quadsum(&["ratio-check", "diag(1,3,21)", "--primes", "5,11"]);
    assert!(out.status.success());
    assert_eq!(stdout_json(&out)[0]["lhs"], "7");
}

#[test]
fn reports_do_not_depend_on_jobs() {
    let run = |jobs: &str| quadsum(&["verify-theorems", "--limit", "20000", "--no-timing", "--jobs", jobs]).stdout;
    let base = run("1");
    assert!(!base.is_empty());
    assert_eq!(run("4"), base);
    assert_eq!(run("1"), base);
}

#[test]
fn report_conversion_and_cache() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("r.json");
    let csv = dir.path().join("r.csv");
    let js = json.to_str().unwrap();
    let out = quadsum(&["verify-lemmas", "--limit", "500", "--no-timing", "--out", js]);
    assert!(out.status.success());
    let out = quadsum(&["report", "--format", "csv", "--input", js, "--out", csv.to_str().unwrap()]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("id,group,status"));
    assert_eq!(text.lines().count(), 6);

    let cache = dir.path().join("cache");
    std::fs::create_dir(&cache).unwrap();
    let genus = || {
        Command::new(env!("CARGO_BIN_EXE_quadsum"))
            .args(["genus", "diag(1,1,32)", "--primes", "3,5,7"])
            .env("QUADSUM_CACHE_DIR", &cache)
            .output()
            .unwrap()
    };
    let cold = genus();
    assert!(cold.status.success());
    assert_eq!(std::fs::read_dir(&cache).unwrap().count(), 1);
    let warm = genus();
    assert_eq!(cold.stdout, warm.stdout);
    assert_eq!(stdout_json(&warm)["classes"].as_array().unwrap().len(), 3);
}
