use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pdm-channel"))
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = bin().args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn verify_algebra2d_report() {
    let (code, out, _) = run(&["verify", "--scope", "algebra2d"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["command"], "verify");
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.len() >= 10);
    assert!(checks.iter().all(|c| c["pass"] == true));
    assert_eq!(v["summary"]["total"], v["summary"]["passed"]);
    for key in ["id", "pass", "lhs", "rhs", "abs_err", "rel_err"] {
        assert!(checks[0].get(key).is_some(), "{key}");
    }
}

#[test]
fn quadratic_scope_has_casimir_value() {
    let (code, out, _) = run(&["verify", "--scope", "quadratic", "--k", "1", "--q", "1"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let c = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["id"] == "casimir-on-psi00")
        .unwrap();
    assert_eq!(c["rhs"].as_f64().unwrap(), -256.0);
    assert!((c["lhs"].as_f64().unwrap() + 256.0).abs() < 1e-8);
}

#[test]
fn matelem_and_fdcheck() {
    let (code, out, _) = run(&["matelem", "--N", "4"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 9);
    let (code, out, _) = run(&["fdcheck", "--k", "2", "--q", "1", "--l", "0", "--format", "csv"]);
    assert_eq!(code, 0);
    let first = out.lines().nth(1).unwrap();
    assert!(first.ends_with(",1.00000000000e1"), "{first}");
}

#[test]
fn output_file_and_field_export() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("field.csv");
    let (code, _, _) = run(&[
        "export-field",
        "--state",
        "psi:0,0",
        "--grid",
        "50x50",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 2501);
    assert_eq!(text.lines().next().unwrap(), "x,y,value");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["verify", "--nope"]).0, 2);
    assert_eq!(run(&["spectrum", "--model", "box", "--q", "0"]).0, 2);
    assert_eq!(run(&["export-field", "--state", "psi:0,0", "--output", "/nonexistent/dir/x.csv"]).0, 4);
    // A box this narrow cannot hold two bound levels.
    assert_eq!(run(&["fdcheck", "--nodes", "200", "--x-max", "0.5"]).0, 3);
    // The δ² = 85 group lies far above this cutoff.
    let (code, out, _) = run(&["spectrum3d-degeneracy", "--e-max", "20"]);
    assert_eq!(code, 0);
    assert!(!out.contains("accidental-85"));
    let (code, _, err) = run(&["fdcheck", "--delta", "1.0", "--k", "1", "--nodes", "200", "--x-max", "12"]);
    assert_eq!(code, 0, "{err}");
}

#[test]
fn help_documents_exit_codes() {
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("Exit codes"));
    for cmd in ["verify", "spectrum", "matelem", "fdcheck", "export-field", "spectrum3d-degeneracy"] {
        assert!(out.contains(cmd), "{cmd}");
    }
}
