use std::process::Command;

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_qmoment")).args(args).output().unwrap();
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["verify", "--space", "double", "--n", "1", "--samples", "50", "--seed", "42"]).0, 0);
    assert_eq!(run(&["verify", "--space", "double", "--n", "0"]).0, 2);
    assert_eq!(run(&["verify", "--space", "double", "--n", "4"]).0, 2);
    assert_eq!(run(&["verify", "--space", "nowhere"]).0, 2);
    assert_eq!(run(&["verify", "--space", "double", "--samples", "0"]).0, 2);
    assert_eq!(run(&["verify", "--space", "double", "--h", "-1"]).0, 2);
    assert_eq!(run(&["boundary", "--ts", "0.5,0.2,0.1,0.05"]).0, 0);
    // An impossible tolerance turns a passing suite into a failing one.
    assert_eq!(run(&["verify", "--space", "double", "--samples", "5", "--tol-axiom-one", "0"]).0, 1);
}

#[test]
fn json_schema() {
    let (code, out) = run(&["verify", "--space", "hpn", "--n", "2", "--samples", "10"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    for key in ["suite", "space", "n", "samples", "seed", "h", "checks", "conformance_notes"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    let names: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert!(names.contains(&"chart_vs_homogeneous") && names.contains(&"chart_vs_fd_pullback"));
    for c in v["checks"].as_array().unwrap() {
        for key in ["name", "max_residual", "mean_residual", "tolerance", "pass"] {
            assert!(c.get(key).is_some());
        }
    }
}

#[test]
fn output_file_and_text_format() {
    let dir = std::env::temp_dir().join(format!("qmoment-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("r.json");
    let (code, out) = run(&["roundtrip", "--n", "3", "--samples", "100", "--output", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["max_residual"].as_f64().unwrap() <= 1e-10));
    std::fs::remove_dir_all(&dir).unwrap();
    let (code, out) = run(&["forms", "--n", "2", "--format", "text"]);
    assert_eq!(code, 0);
    assert!(out.contains("chart_vs_fd_pullback") && out.contains("PASS"));
}
