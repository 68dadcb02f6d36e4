use std::process::Command;

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_zq-hybrid"))
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = bin().args(args).output().expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn verify_reports_forty_certificates() {
    let (code, stdout, _) = run(&["verify", "--q", "3", "--n", "5", "--weight", "1"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["certificates"].as_array().unwrap().len(), 40);
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["engine"], "factored");
    assert_eq!(v["params"]["K"], 9);
    assert!(v["wall_time_ms"].is_u64());
}

#[test]
fn bound_for_q2_n5() {
    let (code, stdout, _) = run(&["bound", "--q", "2", "--n", "5"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["bound"]["num"], 6);
    assert_eq!(v["bound"]["den"], 1);
    assert_eq!(v["KM"], 8);
    assert_eq!(v["exceeds"], true);
}

#[test]
fn invalid_configs_exit_one() {
    let (code, _, stderr) = run(&["verify", "--q", "2", "--n", "4"]);
    assert_eq!(code, 1);
    assert!(stderr.contains("n must be odd"), "{stderr}");
    assert_eq!(run(&["verify", "--q", "1", "--n", "5"]).0, 1);
    assert_eq!(run(&["verify", "--q", "3", "--n", "5", "--weight", "0"]).0, 1);
    assert_eq!(run(&["verify", "--q", "3", "--n", "5", "--weight", "6"]).0, 1);
    assert_eq!(run(&["verify", "--q", "3", "--n", "5", "--engine", "sparse"]).0, 1);
    assert_eq!(run(&["split", "--q", "3", "--n", "3", "--coordinate", "b1"]).0, 1);
    assert_eq!(run(&["split", "--q", "3", "--n", "5", "--coordinate", "b2"]).0, 1);
    assert_eq!(run(&["frobnicate"]).0, 1);
}

#[test]
fn violations_exit_two() {
    let (code, stdout, _) = run(&["verify", "--q", "2", "--n", "3", "--weight", "2"]);
    assert_eq!(code, 2);
    let v: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["verdict"], "fail");
    assert!(v["counts"]["violations"].as_u64().unwrap() > 0);

    let (code, stdout, _) = run(&["verify-union", "--q", "2", "--n", "5"]);
    assert_eq!(code, 2);
    let v: Value = serde_json::from_str(&stdout).unwrap();
    let bad: Vec<&str> = v["certificates"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["status"] == "violation")
        .map(|c| c["error"]["label"].as_str().unwrap())
        .collect();
    assert_eq!(bad, ["X1Z0@5"]);
}

#[test]
fn split_emits_code_and_report() {
    let (code, stdout, _) = run(&["split", "--q", "2", "--n", "5", "--coordinate", "b1"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["code"]["K"], 2);
    assert_eq!(v["code"]["M"], 4);
    assert_eq!(v["code"]["splits"][0], "b1");
    assert_eq!(v["report"]["verdict"], "pass");
}

#[test]
fn build_writes_output_file() {
    let dir = std::env::temp_dir().join(format!("zq-hybrid-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("code.json");
    let (code, stdout, _) = run(&["build", "--q", "3", "--n", "3", "--output", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["M"], 3);
    assert_eq!(v["K"], 1);
    assert_eq!(v["norm_exp"], 3);
    assert_eq!(v["labels"][2][0]["b"][0], 2);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn output_is_byte_identical_across_thread_counts() {
    for cmd in ["verify", "verify-union"] {
        let outputs: Vec<String> = ["1", "2", "7"]
            .iter()
            .map(|t| {
                let (_, stdout, _) =
                    run(&[cmd, "--q", "3", "--n", "5", "--weight", "2", "--threads", t, "--no-timing"]);
                stdout
            })
            .collect();
        assert!(outputs.windows(2).all(|w| w[0] == w[1]), "{cmd}");
    }
    // the environment variable sets the default
    let out = bin()
        .args(["verify", "--q", "2", "--n", "5", "--no-timing"])
        .env("ZQ_HYBRID_THREADS", "3")
        .output()
        .unwrap();
    let (_, baseline, _) = run(&["verify", "--q", "2", "--n", "5", "--no-timing", "--threads", "1"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), baseline);
}
