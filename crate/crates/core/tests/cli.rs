//! The `logverlinde` binary: exit codes, output formats and determinism.

use std::process::{Command, Output};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_logverlinde")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn grothendieck_table_json() {
    let o = bin(&["fusion", "--p", "3", "--ring", "grothendieck", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let basis: Vec<&str> = v["basis"].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
    assert_eq!(basis, ["X+1", "X-1", "X+2", "X-2", "X+3", "X-3"]);
}

#[test]
fn verify_all_p2_passes() {
    let o = bin(&["verify", "--p", "2", "--suite", "all", "--tol", "1e-8"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
}

#[test]
fn bogus_tau_is_usage_error() {
    let o = bin(&["verify", "--p", "2", "--suite", "modular", "--tau", "bogus"]);
    assert_eq!(code(&o), 2);
    assert!(o.stdout.is_empty());
}

#[test]
fn out_of_range_parameters() {
    for args in [
        &["verify", "--p", "1"][..],
        &["verify", "--trunc", "49"],
        &["verify", "--tol", "-1"],
        &["sf", "--d", "0"],
        &["verify", "--unknown-flag"],
        &["verify", "--format", "xml"],
    ] {
        assert_eq!(code(&bin(args)), 2, "{args:?}");
    }
}

#[test]
fn json_report_schema() {
    let o = bin(&["verify", "--p", "2", "--suite", "fusion", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["suite"], "fusion");
    assert_eq!(v["p"], 2);
    for c in v["checks"].as_array().unwrap() {
        assert!(c["name"].is_string());
        assert!(c["status"] == "pass" || c["status"] == "fail");
        assert!(c["residual"].is_null() || c["residual"].is_number());
        assert!(c["detail"].is_string());
    }
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["verify", "--p", "3", "--suite", "all", "--format", "json"][..],
        &["smatrix", "--p", "3", "--format", "json"],
        &["hopf", "--p", "3", "--kind", "log", "--insertion", "x", "--format", "csv"],
    ] {
        assert_eq!(bin(args).stdout, bin(args).stdout, "{args:?}");
    }
}

#[test]
fn every_subcommand_runs() {
    for args in [
        &["fusion", "--p", "2"][..],
        &["fusion", "--ring", "sf", "--d", "2", "--format", "csv"],
        &["fusion", "--ring", "affine", "--p", "4"],
        &["fusion", "--ring", "semisimple", "--p", "3", "--format", "json"],
        &["hopf", "--p", "3", "--kind", "open", "--format", "json"],
        &["hopf", "--p", "3", "--kind", "ordinary"],
        &["smatrix", "--p", "2", "--basis", "tilde"],
        &["chars", "--p", "2", "--tau", "0.3+1.7i", "--format", "csv"],
        &["jordan", "--p", "3", "--ring", "wp", "--format", "json"],
        &["sf", "--d", "2", "--tau", "2i"],
    ] {
        let o = bin(args);
        assert_eq!(code(&o), 0, "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(!o.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn hopf_json_schema() {
    let o = bin(&["hopf", "--p", "2", "--kind", "log", "--insertion", "modP", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["kind"], "log");
    assert_eq!(v["insertion"], "modP");
    let e = &v["entries"][0];
    for k in ["V", "W", "id", "nil"] {
        assert!(e[k].is_string(), "{k}");
    }
}

#[test]
fn jordan_json_lists_blocks() {
    let o = bin(&["jordan", "--p", "4", "--ring", "wp", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let blocks = v["blocks"].as_array().unwrap();
    assert_eq!(blocks.len(), 5);
    assert_eq!(blocks[1]["sizes"], serde_json::json!([1, 3]));
}

#[test]
fn fixture_override() {
    let o = Command::new(env!("CARGO_BIN_EXE_logverlinde"))
        .args(["verify", "--p", "2", "--suite", "fusion"])
        .env("LOGVERLINDE_FIXTURES", "/nonexistent/fixtures")
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);

    let copy = std::env::temp_dir().join(format!("logverlinde-fixtures-{}", std::process::id()));
    std::fs::create_dir_all(&copy).unwrap();
    let src = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/v1");
    for f in std::fs::read_dir(src).unwrap() {
        let f = f.unwrap();
        std::fs::copy(f.path(), copy.join(f.file_name())).unwrap();
    }
    // A wrong reference product must surface as a verification failure.
    let path = copy.join("fusion.json");
    let text = std::fs::read_to_string(&path).unwrap().replacen("{\"P+1\": 1}", "{\"P-1\": 1}", 1);
    std::fs::write(&path, text).unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_logverlinde"))
        .args(["verify", "--p", "2", "--suite", "fusion"])
        .env("LOGVERLINDE_FIXTURES", &copy)
        .output()
        .unwrap();
    std::fs::remove_dir_all(&copy).unwrap();
    assert_eq!(code(&o), 1, "{}", String::from_utf8_lossy(&o.stdout));
}
