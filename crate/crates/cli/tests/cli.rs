use serde_json::Value;
use std::process::{Command, Output};

fn wcs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wcs")).args(args).output().unwrap()
}

fn json(out: &[u8]) -> Value {
    serde_json::from_slice(out).unwrap()
}

fn strip_time(mut v: Value) -> Value {
    if let Some(o) = v.as_object_mut() {
        o.remove("wall_time_ms");
    }
    v
}

#[test]
fn ypq_report() {
    let out = wcs(&["ypq", "--p", "7", "--q", "3", "--rel-tol", "1e-7"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out.stdout);
    let exact = -5184.0 * std::f64::consts::PI.powi(3) / 1225.0;
    assert!((v["value"].as_f64().unwrap() - exact).abs() < 1e-7 * exact.abs());
    assert_eq!(v["constant_c3"].as_f64(), Some(0.6));
    assert!(v["sign_convention"].as_str().unwrap().contains("-K"));
    assert!(v["warnings"].as_array().unwrap().is_empty());
    assert!(v["error_estimate"].as_f64().unwrap() >= 0.0);
}

#[test]
fn reports_are_reproducible() {
    let a = wcs(&["ypq", "--p", "7", "--q", "3", "--grid", "8"]);
    let b = wcs(&["ypq", "--p", "7", "--q", "3", "--grid", "8"]);
    assert_eq!(strip_time(json(&a.stdout)), strip_time(json(&b.stdout)));
    let c = wcs(&["cs3-check", "--dim", "3", "--trials", "50", "--seed", "9"]);
    let d = wcs(&["cs3-check", "--dim", "3", "--trials", "50", "--seed", "9"]);
    assert_eq!(c.stdout, d.stdout);
}

#[test]
fn floats_carry_seventeen_digits() {
    let out = wcs(&["h4", "--coeffs", "4,6"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"constant_c3\": 5.9999999999999998e-1"), "{text}");
    assert_eq!(json(text.as_bytes())["result"]["order"], 2);
}

#[test]
fn cs3_check() {
    let out = wcs(&["cs3-check", "--dim", "3", "--trials", "1000", "--seed", "42"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(json(&out.stdout)["result"]["max_abs"].as_f64().unwrap() < 1e-12);
}

#[test]
fn wcs_equiv() {
    let out = wcs(&["wcs-equiv", "--k", "3", "--trials", "20", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out.stdout);
    assert!(v["result"]["max_rel"].as_f64().unwrap() < 1e-10);
    assert!(v["warnings"].as_array().unwrap().is_empty());
}

#[test]
fn sasaki_surfaces() {
    let cp2 = json(&wcs(&["sasaki", "--surface", "cp2", "--p", "1"]).stdout);
    assert!(cp2["result"]["integrand"].as_f64().unwrap().abs() < 1e-10);
    let t4 = json(&wcs(&["sasaki", "--surface", "t4", "--p", "-1", "--lambda", "2"]).stdout);
    assert!((t4["result"]["integrand"].as_f64().unwrap() - 115.2).abs() < 1e-12);
    assert!((t4["result"]["integral"].as_f64().unwrap() - 230.4).abs() < 1e-12);
    let s = json(&wcs(&["sasaki", "--surface", "s2xs2", "--p", "2", "--a", "1", "--b", "2"]).stdout);
    assert!((s["result"]["integrand"].as_f64().unwrap() - 6912.0).abs() < 1e-8);
    let k3 = json(&wcs(&["sasaki", "--surface", "k3", "--p", "1", "--seed", "3"]).stdout);
    assert!(k3["result"]["integrand"].as_f64().unwrap() > 0.0);
    assert!(k3["result"]["integral"].is_null());
}

#[test]
fn threshold_and_einstein() {
    let v = json(&wcs(&["threshold", "--r-inf", "4", "--vol", "4.934802200544679", "--sigma", "1"]).stdout);
    assert_eq!(v["result"]["p0"], 3);
    assert_eq!(v["result"]["verdicts"].as_array().unwrap().len(), 3);
    let e = json(&wcs(&["ypq-einstein", "--p", "7", "--q", "3", "--samples", "20"]).stdout);
    assert!((e["result"]["lambda"].as_f64().unwrap() - 4.0).abs() < 1e-8);
}

#[test]
fn validation_errors_exit_one_with_json() {
    for args in [
        vec!["ypq", "--p", "4", "--q", "2"],
        vec!["ypq", "--p", "7", "--q", "3", "--rel-tol", "-1"],
        vec!["sasaki", "--surface", "s2xs2", "--p", "1", "--a", "0"],
        vec!["cs3-check", "--dim", "5"],
        vec!["frobnicate"],
        vec!["h4", "--coeffs", "0"],
    ] {
        let out = wcs(&args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        let err = json(&out.stderr);
        assert!(err["error"]["message"].is_string(), "{args:?}");
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn non_convergence_exits_two() {
    let out = wcs(&["ypq", "--p", "7", "--q", "3", "--rel-tol", "1e-15", "--max-refine", "0", "--grid", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out.stdout);
    assert!(!v["warnings"].as_array().unwrap().is_empty());
    assert_eq!(json(&out.stderr)["error"]["kind"], "NotConverged");
}

#[test]
fn config_file_and_override() {
    let dir = std::env::temp_dir().join(format!("wcs-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("job.toml");
    std::fs::write(&cfg, "command = \"sasaki\"\nsurface = \"t4\"\np = 2\nlambda = 1.0\n").unwrap();
    let cfg_s = cfg.to_str().unwrap();
    let v = json(&wcs(&["--config", cfg_s]).stdout);
    assert_eq!(v["params_echo"]["p"], 2);
    let v = json(&wcs(&["--config", cfg_s, "sasaki", "--p", "3"]).stdout);
    assert_eq!(v["params_echo"]["p"], 3);
    std::fs::write(&cfg, "command = \"sasaki\"\nsurface = \"t4\"\np = 2\nbogus = 1\n").unwrap();
    let out = wcs(&["--config", cfg_s]);
    assert_eq!(out.status.code(), Some(1));
    assert!(json(&out.stderr)["error"]["message"].as_str().unwrap().contains("bogus"));
    std::fs::write(&cfg, "command = [\n").unwrap();
    assert_eq!(wcs(&["--config", cfg_s]).status.code(), Some(1));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn output_file_and_report_roundtrip() {
    let dir = std::env::temp_dir().join(format!("wcs-cli-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("r.json");
    let p = path.to_str().unwrap();
    let out = wcs(&["h4", "--coeffs", "6,9", "--output", p]);
    assert!(out.stdout.is_empty() && out.status.success());
    let back = wcs(&["report", "--in", p]);
    assert_eq!(back.stdout, std::fs::read(&path).unwrap());
    std::fs::remove_dir_all(&dir).unwrap();
    assert_eq!(wcs(&["report", "--in", "/nonexistent/x.json"]).status.code(), Some(1));
}

#[test]
fn thread_cap_is_honoured() {
    let out = Command::new(env!("CARGO_BIN_EXE_wcs"))
        .env("WCS_THREADS", "1")
        .args(["ypq", "--p", "7", "--q", "3", "--grid", "6"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let bad = Command::new(env!("CARGO_BIN_EXE_wcs")).env("WCS_THREADS", "many").args(["h4", "--coeffs", "2"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(1));
}
