use serde_json::Value;
use std::path::Path;
use std::process::{Command, Output};

fn tricurve(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tricurve")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = tricurve(&all);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)));
    (out.status.code().expect("exit code"), v)
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_string()
}

#[test]
fn verify_phi_reports_the_determinant() {
    let (code, v) = json(&["verify", "hesse-phi"]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "verified");
    let det = v["report"]["checks"].as_array().unwrap().iter().find(|c| c["name"] == "det").unwrap();
    assert!(det["detail"].as_str().unwrap().contains("64/(3^12*49)"));
}

#[test]
fn verify_prop1a() {
    let (code, v) = json(&["verify", "prop1a"]);
    assert_eq!(code, 0);
    let names: Vec<&str> = v["report"]["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    for n in ["identity", "census", "delta"] {
        assert!(names.contains(&n), "{n}");
    }
}

#[test]
fn corrupted_quartic_is_falsified() {
    let dir = tempfile::tempdir().unwrap();
    let file = path(dir.path(), "prop1b.json");
    assert!(tricurve(&["gallery", "export", "--id", "prop1b", "--out", &file]).status.success());
    let mut curves: Value = serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    // z(t) = 2t³ − 1 becomes 2t³ − 2
    curves[0]["polys"][2]["terms"][0]["coef"] = Value::String("-2".into());
    std::fs::write(&file, curves.to_string()).unwrap();
    let (code, v) = json(&["verify", "prop1b", "--curve", &file]);
    assert_eq!(code, 1);
    assert_eq!(v["status"], "falsified");
}

#[test]
fn unknown_target_is_a_usage_error() {
    assert_eq!(tricurve(&["verify", "prop9"]).status.code(), Some(3));
    assert_eq!(tricurve(&["frobnicate"]).status.code(), Some(3));
}

#[test]
fn recursion_files() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b, zero) = (path(dir.path(), "a.json"), path(dir.path(), "b.json"), path(dir.path(), "zero.json"));
    let (code, v) = json(&["recurse", "--order", "2", "--out", &a]);
    assert_eq!(code, 0);
    assert_eq!(v["report"]["layers"], 3);
    assert_eq!(v["report"]["order_check"]["passed"], true);
    assert_eq!(tricurve(&["recurse", "--order", "2", "--out", &b]).status.code(), Some(0));
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());

    assert_eq!(tricurve(&["recurse", "--order", "0", "--out", &zero]).status.code(), Some(0));
    let s: Value = serde_json::from_str(&std::fs::read_to_string(&zero).unwrap()).unwrap();
    assert_eq!(s["a"].as_array().unwrap().len(), 1);
    assert_eq!(s["a"][0][0], "-1/3");
    assert_eq!(s["a"][0][6], "37/42");

    let (code, _) = json(&["check-order", "--state", &a]);
    assert_eq!(code, 0);
    assert_eq!(tricurve(&["recurse", "--order", "1", "--out", "/nonexistent/dir/s.json"]).status.code(), Some(3));
}

#[test]
fn instantiation() {
    let dir = tempfile::tempdir().unwrap();
    let (state, curve) = (path(dir.path(), "s.json"), path(dir.path(), "c.json"));
    assert!(tricurve(&["recurse", "--order", "1", "--out", &state]).status.success());
    assert_eq!(tricurve(&["instantiate", "--state", &state, "--u", "0", "--out", &curve]).status.code(), Some(3));
    let (code, v) = json(&["instantiate", "--state", &state, "--u", "1/100", "--out", &curve]);
    assert_eq!(code, 0);
    assert_eq!(v["report"]["degree"], 10);
    let c: tricurve::curve::CurveJson = serde_json::from_str(&std::fs::read_to_string(&curve).unwrap()).unwrap();
    match c.to_curve().unwrap() {
        tricurve::curve::Curve::Param(p) => assert_eq!(p.degree(), 10),
        _ => panic!("expected a parametrization"),
    }
}

#[test]
fn census_of_the_quartics() {
    let dir = tempfile::tempdir().unwrap();
    let file = path(dir.path(), "prop1b.json");
    assert!(tricurve(&["gallery", "export", "--id", "prop1b", "--out", &file]).status.success());
    let (code, v) = json(&["census", &file]);
    assert_eq!(code, 0);
    assert_eq!(v["report"]["points"], 19);
    assert_eq!(v["report"]["histogram"]["3"], 19);
    assert_eq!(v["report"]["all_ordinary"], true);
}

#[test]
fn low_precision_is_refused() {
    let dir = tempfile::tempdir().unwrap();
    let (state, curve) = (path(dir.path(), "s.json"), path(dir.path(), "c.json"));
    assert!(tricurve(&["recurse", "--order", "3", "--out", &state]).status.success());
    assert!(tricurve(&["instantiate", "--state", &state, "--u", "1/100", "--out", &curve]).status.success());
    let out = tricurve(&["census", &curve, "--precision", "64"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("retry with --precision"));
}

#[test]
fn implicitize_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let (file, out) = (path(dir.path(), "prop1a.json"), path(dir.path(), "f.json"));
    assert!(tricurve(&["gallery", "export", "--id", "prop1a", "--out", &file]).status.success());
    let (code, v) = json(&["implicitize", &file, "--out", &out]);
    assert_eq!(code, 0);
    assert_eq!(v["report"]["degree"], 10);
    let c: tricurve::curve::CurveJson = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert!(matches!(c.to_curve().unwrap(), tricurve::curve::Curve::Implicit { .. }));
}

#[test]
fn gallery_listing() {
    let (code, v) = json(&["gallery", "list"]);
    assert_eq!(code, 0);
    let ids: Vec<&str> = v["report"].as_array().unwrap().iter().map(|e| e["id"].as_str().unwrap()).collect();
    assert_eq!(ids, tricurve::gallery::IDS);
    assert_eq!(tricurve(&["gallery", "export", "--id", "nope"]).status.code(), Some(3));
}

#[test]
fn plots() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b, line) = (path(dir.path(), "a.svg"), path(dir.path(), "b.svg"), path(dir.path(), "line.json"));
    let (code, v) = json(&["plot", "--gallery", "dual-hesse", "--mark", "1:1:1", "--out", &a]);
    assert_eq!(code, 0);
    assert_eq!(v["report"]["marks"], 1);
    // (1, 1) in the default window [-3, 3]² is at pixel (400, 200)
    assert!(std::fs::read_to_string(&a).unwrap().contains(r#"cx="400.000" cy="200.000""#));
    assert!(tricurve(&["plot", "--gallery", "dual-hesse", "--mark", "1:1:1", "--out", &b]).status.success());
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());

    let l0 = tricurve::curve::ParamCurve::from_ints(&[0, 1], &[1, -1], &[1], "L0").unwrap();
    std::fs::write(&line, serde_json::to_string(&tricurve::curve::CurveJson::from(&l0)).unwrap()).unwrap();
    let (code, v) = json(&["plot", &line, "--out", &a]);
    assert_eq!(code, 0);
    assert_eq!(v["report"]["segments"], 1);

    let (code, v) = json(&["plot", "--gallery", "prop1a", "--window=-20,20,-20,20", "--out", &a]);
    assert_eq!(code, 0);
    assert!(v["report"]["segments"].as_u64().unwrap() > 0);
    assert_eq!(tricurve(&["plot", "--gallery", "prop1a", "--window=1,0,0,1", "--out", &a]).status.code(), Some(3));
}
