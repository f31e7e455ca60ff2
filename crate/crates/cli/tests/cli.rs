use std::process::{Command, Output};

use cwkit_core::tree::level_iter;
use cwkit_core::Fraction;

fn cwkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cwkit"))
        .args(args)
        .env_remove("CWKIT_MAX_DEPTH")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = cwkit(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn level_text() {
    assert_eq!(stdout(&["level", "1"]), "1/1\n");
    assert_eq!(stdout(&["level", "3"]), "1/3 3/2 2/3 3/1\n");
}

#[test]
fn level_csv_rows() {
    let s = stdout(&["level", "4", "--format", "csv"]);
    let mut lines = s.lines();
    assert_eq!(lines.next(), Some("level,position,num,den"));
    assert_eq!(lines.count(), 8);
}

#[test]
fn level_json_roundtrips() {
    for n in [1, 5, 12] {
        let s = stdout(&["level", &n.to_string(), "--format", "json"]);
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["level"], n);
        let fractions: Vec<Fraction> = serde_json::from_value(v["fractions"].clone()).unwrap();
        assert_eq!(v["count"], fractions.len());
        assert!(fractions.into_iter().eq(level_iter(n)));
    }
}

#[test]
fn dot_outputs() {
    let tree = stdout(&["dot", "tree", "--depth", "2"]);
    assert_eq!(tree.matches("[label=").count(), 3);
    assert_eq!(tree.matches(" -- ").count(), 2);
    for label in ["\"1/1\"", "\"1/2\"", "\"2/1\""] {
        assert!(tree.contains(label));
    }
    assert!(stdout(&["dot", "diagonals", "--depth", "3"]).contains("\"(3j+2)/(2j+1)\""));
    assert!(stdout(&["dot", "qmark-diagonals", "--depth", "3"]).contains("\"1/2+x/4\""));
}

#[test]
fn dot_is_deterministic() {
    let args = ["dot", "qmark-diagonals", "--depth", "6"];
    assert_eq!(stdout(&args), stdout(&args));
}

#[test]
fn unknown_dot_kind_is_usage_error() {
    let out = cwkit(&["dot", "forest", "--depth", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn queries() {
    assert_eq!(stdout(&["query", "cf", "7/5"]), "[1; 2, 2]\n");
    assert_eq!(stdout(&["query", "qmark 2/3"]), "3/4\n");
    assert_eq!(stdout(&["query", "diag", "6"]), "(3j+2)/(2j+1)\n");
    assert_eq!(
        stdout(&["query", "eval", "[0;", "1,", "1,", "1,", "2]"]),
        "5/8\n"
    );
    assert_eq!(stdout(&["query", "unrank", "11"]), "5/2\n");
}

#[test]
fn query_reduces_with_notice() {
    let out = cwkit(&["query", "rank", "6/4"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout), "5\n");
    assert!(String::from_utf8_lossy(&out.stderr).contains("6/4 reduced to 3/2"));
}

#[test]
fn query_usage_error_names_token() {
    let out = cwkit(&["query", "member", "5/8", "eleven"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("`eleven`"));
}

#[test]
fn verify_trace_sum() {
    let out = cwkit(&["verify", "--depth", "2", "--select", "trace-sum"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let check = &v["checks"][0];
    assert_eq!(check["name"], "trace-sum");
    assert!(check["instances"].as_u64().unwrap() >= 2);
    assert_eq!(
        check["observations"],
        serde_json::json!(["n=1: 2", "n=2: 6"])
    );
    assert!(String::from_utf8_lossy(&out.stderr).contains("trace-sum"));
}

#[test]
fn verify_level_sum_value() {
    let out = cwkit(&["verify", "--depth", "3", "--select", "level-sum"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let obs = v["checks"][0]["observations"].as_array().unwrap();
    assert!(obs.iter().any(|o| o == "n=3: 11/2"));
}

#[test]
fn verify_all_at_depth_10() {
    let out = cwkit(&["verify", "--depth", "10", "--seed-check"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.len() >= 15);
    assert!(checks.iter().all(|c| c["status"] == "pass"));
    assert!(checks.iter().any(|c| c["name"] == "golden-renderings"));
}

#[test]
fn verify_deeper_run_covers_shallower() {
    let report = |d: &str| -> serde_json::Value {
        serde_json::from_slice(&cwkit(&["verify", "--depth", d]).stdout).unwrap()
    };
    let (a, b) = (report("5"), report("6"));
    let (a, b) = (
        a["checks"].as_array().unwrap(),
        b["checks"].as_array().unwrap(),
    );
    assert_eq!(a.len(), b.len());
    for (x, y) in a.iter().zip(b) {
        assert_eq!(x["name"], y["name"]);
        assert!(
            y["instances"].as_u64() >= x["instances"].as_u64(),
            "{}",
            x["name"]
        );
    }
}

#[test]
fn verify_rejects_bad_selection_and_depth() {
    assert_eq!(
        cwkit(&["verify", "--depth", "4", "--select", "nope"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(cwkit(&["verify", "--depth", "1"]).status.code(), Some(2));
}

#[test]
fn refuses_large_depths() {
    let out = cwkit(&["level", "21"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("CWKIT_MAX_DEPTH"));
    assert_eq!(
        cwkit(&["dot", "qmark-diagonals", "--depth", "15"])
            .status
            .code(),
        Some(2)
    );
    let allowed = Command::new(env!("CARGO_BIN_EXE_cwkit"))
        .args(["level", "21", "--format", "csv"])
        .env("CWKIT_MAX_DEPTH", "21")
        .output()
        .unwrap();
    assert!(allowed.status.success());
    assert_eq!(
        allowed.stdout.iter().filter(|&&b| b == b'\n').count(),
        (1 << 20) + 1
    );
}
