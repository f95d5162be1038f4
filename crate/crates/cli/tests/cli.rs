use std::process::Command;

fn levelforge(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_levelforge")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned(), String::from_utf8_lossy(&out.stderr).into_owned())
}

fn without_runtime(json: &str) -> serde_json::Value {
    let mut v: serde_json::Value = serde_json::from_str(json).expect("valid JSON");
    v.as_object_mut().unwrap().remove("runtime_ms");
    v
}

#[test]
fn passing_run_exits_zero() {
    let (code, out, _) = levelforge(&["flatness", "--p", "2", "--q", "2"]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(out.matches("[PASS]").count(), 4);
}

#[test]
fn failing_check_exits_one() {
    let (code, out, _) = levelforge(&["kmd"]);
    assert_eq!(code, 1);
    assert!(out.contains("[FAIL]"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(levelforge(&["nonsense"]).0, 2);
    assert_eq!(levelforge(&["flatness", "--order", "weird"]).0, 2);
    assert_eq!(levelforge(&["flatness", "--p", "4"]).0, 2);
    assert_eq!(levelforge(&["flatness", "--p", "3", "--q", "27"]).0, 2);
    assert_eq!(levelforge(&["km", "--p", "0"]).0, 2);
    let (code, _, err) = levelforge(&["g3", "--p", "3"]);
    assert_eq!(code, 2);
    assert!(err.contains("--heavy"));
}

#[test]
fn budget_overrun_exits_two() {
    let (code, _, err) = levelforge(&["flatness", "--p", "3", "--budget-pairs", "1"]);
    assert_eq!(code, 2, "{err}");
    assert!(err.contains("budget"));
}

#[test]
fn json_is_canonical_and_deterministic() {
    let args = ["gl2-invariance", "--p", "3", "--chart", "1,0", "--seed", "7", "--json"];
    let (code, a, _) = levelforge(&args);
    assert_eq!(code, 0);
    let (_, b, _) = levelforge(&args);
    assert_eq!(without_runtime(&a), without_runtime(&b));
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    for k in ["subcommand", "config", "checks", "runtime_ms", "pass"] {
        assert!(v.get(k).is_some(), "missing {k}");
    }
    let check = &v["checks"][0];
    for k in ["name", "computed", "expected", "provenance", "pass"] {
        assert!(check.get(k).is_some(), "missing {k}");
    }
    // serialized order follows the sorted keys
    let text = a.replace(char::is_whitespace, "");
    assert!(text.find("\"checks\"").unwrap() < text.find("\"config\"").unwrap());
}

#[test]
fn seed_changes_sampled_elements() {
    let a = levelforge(&["gl2-invariance", "--p", "3", "--chart", "1,0", "--seed", "1"]).1;
    let b = levelforge(&["gl2-invariance", "--p", "3", "--chart", "1,0", "--seed", "2"]).1;
    assert_ne!(a.lines().nth(2), b.lines().nth(2));
}

#[test]
fn flags_win_over_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.toml");
    std::fs::write(&path, "p = 3\nn = 3\n").unwrap();
    let path = path.to_str().unwrap();
    let (_, out, _) = levelforge(&["teichmuller", "--config", path, "--json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!((v["config"]["p"].as_u64(), v["config"]["n"].as_u64()), (Some(3), Some(3)));
    let (_, out, _) = levelforge(&["teichmuller", "--config", path, "--p", "5", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!((v["config"]["p"].as_u64(), v["config"]["n"].as_u64()), (Some(5), Some(3)));
    std::fs::write(dir.path().join("bad.toml"), "prime = 3\n").unwrap();
    assert_eq!(levelforge(&["teichmuller", "--config", dir.path().join("bad.toml").to_str().unwrap()]).0, 2);
}

#[test]
fn teichmuller_table_matches_enumeration() {
    let (code, out, _) = levelforge(&["teichmuller", "--p", "3", "--n", "2"]);
    assert_eq!(code, 0);
    assert!(out.contains("chi(2) mod 3^2: computed 8, expected 8"));
}
