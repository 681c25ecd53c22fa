use std::process::Command;

use fmethod_core::cli::{run, EXIT_OK, EXIT_USAGE, EXIT_VERIFY};
use serde_json::Value;

fn call(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("fmethod").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let (code, out, err) = call(&full);
    assert_eq!(code, EXIT_OK, "{err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn help_and_version_succeed() {
    let (code, out, _) = call(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("singular") && out.contains("verify"));
    let (code, out, _) = call(&["--version"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains(env!("CARGO_PKG_VERSION")));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["singular", "--geometry", "so", "--n", "1", "--a", "2"][..],
        &["singular", "--geometry", "xx", "--n", "3", "--a", "2"],
        &[
            "orthopoly",
            "--family",
            "jacobi",
            "--degree",
            "2",
            "--alpha",
            "a",
        ],
        &["rc", "--k1", "3", "--k2", "4", "--a", "1"],
        &[
            "verify",
            "--geometry",
            "so",
            "--n",
            "3",
            "--a",
            "1",
            "--lambda",
            "2",
        ],
        &["frobnicate"],
    ] {
        let (code, out, err) = call(args);
        assert_eq!(code, EXIT_USAGE, "{args:?}: {out}");
        assert!(!err.is_empty());
    }
}

#[test]
fn failed_delta_check_exits_one() {
    let (code, out, _) = call(&["rc", "--k1", "4", "--k2", "4", "--a", "0", "--check-delta"]);
    assert_eq!(code, EXIT_VERIFY);
    assert!(out.contains("not proportional"));
}

#[test]
fn bracket_of_weights_four_and_six_is_a_multiple_of_delta() {
    let v = json(&[
        "rc",
        "--k1",
        "4",
        "--k2",
        "6",
        "--a",
        "1",
        "--terms",
        "20",
        "--check-delta",
    ]);
    assert_eq!(v["delta_ratio"], "3456");
    assert_eq!(v["series"]["weight"], 12);
    assert_eq!(v["series"]["coeffs"][2], "-82944");
}

#[test]
fn singular_json_matches_text_and_is_stable() {
    let args = ["singular", "--geometry", "so", "--n", "3", "--a", "2"];
    let v = json(&args);
    assert_eq!(v["geometry"], "so");
    assert_eq!(v["params"], serde_json::json!(["l"]));
    let symbol = v["symbol"].as_array().unwrap();
    assert_eq!(symbol.len(), 3);
    assert!(symbol
        .iter()
        .any(|t| t["zeta_monomial"] == serde_json::json!([0, 0, 2]) && t["coeff"] == "1"));
    let text = serde_json::to_string(&v).unwrap();
    let again: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(again, v);
    assert_eq!(call(&args), call(&args));
}

#[test]
fn numeric_lambda_is_substituted() {
    let (code, out, _) = call(&[
        "singular",
        "--geometry",
        "so",
        "--n",
        "3",
        "--a",
        "2",
        "--lambda",
        "3",
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.trim(), "d[z_3]^2 + 1/6*d[z_2]^2 + 1/6*d[z_1]^2");
}

#[test]
fn verify_passes_where_the_oracle_applies() {
    for args in [
        &["verify", "--geometry", "so", "--n", "3", "--a", "2"][..],
        &["verify", "--geometry", "uu", "--n", "1", "--a", "2"],
        &["verify", "--geometry", "sp", "--n", "2", "--a", "2"],
        &["verify", "--geometry", "sp", "--n", "3", "--a", "2"],
    ] {
        let (code, out, _) = call(args);
        assert_eq!(code, EXIT_OK, "{args:?}: {out}");
        assert!(!out.contains("FAIL"));
    }
    let v = json(&["verify", "--geometry", "so", "--n", "3", "--a", "1"]);
    let lines = v.as_array().unwrap();
    assert!(lines.iter().any(|l| l["check"] == "closed form"));
    assert!(lines
        .iter()
        .all(|l| l["passed"] == true && l["residual"] == "0"));
}

#[test]
fn classical_odes() {
    let (code, out, _) = call(&[
        "ode",
        "--geometry",
        "uu",
        "--n",
        "1",
        "--a",
        "2",
        "--classical",
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(
        out.trim(),
        "(-s^2 + 1)*d^2 + ((-lpp + 2)*s + (2*lp + lpp - 6))*d + ((2*lpp - 2))"
    );
    let v = json(&["ode", "--geometry", "so", "--n", "3", "--a", "2"]);
    assert_eq!(v["tag"], "de3");
    assert_eq!(v["theta_form"], true);
}

#[test]
fn orthopoly_outputs() {
    let v = json(&[
        "orthopoly",
        "--family",
        "gegenbauer",
        "--degree",
        "2",
        "--alpha",
        "1",
    ]);
    assert_eq!(v["coeffs"], serde_json::json!(["-1", "0", "4"]));
    let (code, out, _) = call(&[
        "orthopoly",
        "--family",
        "jacobi",
        "--degree",
        "1",
        "--alpha",
        "0",
        "--beta",
        "0",
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("P_1 = "));
}

#[test]
fn geometry_lists_generators() {
    let v = json(&["geometry", "--geometry", "sp", "--n", "2"]);
    assert_eq!(
        v["zeta_vars"],
        serde_json::json!(["zeta_11", "zeta_12", "zeta_22"])
    );
    assert_eq!(v["generators"].as_array().unwrap().len(), 3);
    let (code, out, _) = call(&[
        "--format",
        "latex",
        "geometry",
        "--geometry",
        "so",
        "--n",
        "3",
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().count(), 3);
}

#[test]
fn binary_reports_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_fmethod");
    let ok = Command::new(bin)
        .args(["orthopoly", "--family", "gegenbauer", "--degree", "3"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    let bad = Command::new(bin)
        .args(["singular", "--geometry", "uu", "--n", "0", "--a", "1"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_USAGE));
    assert!(String::from_utf8_lossy(&bad.stderr).starts_with("error:"));
    let fmt = Command::new(bin)
        .env("FMETHOD_FORMAT", "json")
        .args(["geometry", "--geometry", "uu", "--n", "1"])
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&fmt.stdout).unwrap();
    assert_eq!(v["family"], "uu");
}
