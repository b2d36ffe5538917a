use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_theta-forge")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let out = run(args);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stdout));
    });
    (v, out.status.code().unwrap())
}

/// `(exponent, rational part of the coefficient)` pairs of a series object.
fn integer_terms(v: &Value) -> Vec<(String, String)> {
    v["terms"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| {
            let c = &t["coef"];
            assert_eq!(c["den"], "1");
            assert!(c["coeffs"].as_array().unwrap()[1..].iter().all(|x| x == "0"));
            (t["exp"].as_str().unwrap().to_string(), c["coeffs"][0].as_str().unwrap().to_string())
        })
        .collect()
}

#[test]
fn theta_zero_at_p3() {
    let (v, code) = json(&["theta", "--prime", "3", "--class", "0", "--order", "7"]);
    assert_eq!(code, 0);
    let got = integer_terms(&v);
    let expected: Vec<(String, String)> = [("0/1", "1"), ("1/1", "6"), ("3/1", "6"), ("4/1", "6"), ("7/1", "12")]
        .iter()
        .map(|(e, c)| (e.to_string(), c.to_string()))
        .collect();
    assert_eq!(got, expected);
}

#[test]
fn eta_negative_power() {
    let out = run(&["--format", "pretty", "qexp", "--prime", "3", "--series", "eta", "--power", "-2", "--order", "2"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("q^(-1/12) + 2*q^(11/12) + 5*q^(23/12)"), "{text}");
}

#[test]
fn exact_identity_for_tetracode() {
    let (v, code) = json(&["verify", "alpbach", "--code", "tetracode", "--order", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["passed"], true);
    assert_eq!(v["lhs"], v["rhs"]);
}

#[test]
fn numerical_identity_from_points_file() {
    let dir = std::env::temp_dir().join(format!("theta-forge-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("points.txt");
    std::fs::write(&path, "# tau values\n0.1,1.2\n-0.3,0.9\n").unwrap();
    let (v, code) = json(&["verify", "alpbach", "--code", "tetracode", "--points", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["points"].as_array().unwrap().len(), 2);

    std::fs::write(&path, "0.1,1.2 0.2,1.0\n").unwrap();
    let out = run(&["verify", "alpbach", "--code", "tetracode", "--points", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn lattice_info_for_e8() {
    let (v, code) = json(&["lattice", "--code", "tetracode", "--info"]);
    assert_eq!(code, 0);
    assert_eq!(v["rank"], 8);
    assert_eq!(v["discriminant"], "1");
    assert_eq!(v["min_vectors"], 240);
}

#[test]
fn tower_at_four_is_not_perfect() {
    let (v, code) = json(&["tower", "check", "--n", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["order"], 96);
    assert_eq!(v["perfect"], false);
}

#[test]
fn main_check_picks_a_separating_cutoff() {
    let (v, code) = json(&["rep", "check-main", "--prime", "5", "--n", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["image_rank"], 15);
    assert_eq!(v["cutoff"], "4");
}

#[test]
fn failing_criterion_exits_one() {
    let (v, code) = json(&["verify", "criterion", "--id", "1"]);
    assert_eq!(code, 1);
    assert_eq!(v["pass"], false);
    let (v, code) = json(&["verify", "criterion", "--id", "10"]);
    assert_eq!(code, 0);
    assert_eq!(v["pass"], true);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(run(&["theta", "--prime", "4", "--order", "2"]).status.code(), Some(2));
    assert_eq!(run(&["code", "--code", "not-a-code"]).status.code(), Some(2));
}

#[test]
fn csv_series_is_a_table() {
    let out = run(&["--format", "csv", "theta", "--prime", "3", "--class", "1", "--order", "3"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "coef.coeffs.0,coef.coeffs.1,coef.den,exp");
    assert_eq!(&lines[1..], ["3,0,1,1/3", "3,0,1,4/3", "6,0,1,7/3"]);
}

#[test]
fn code_summary_for_golay() {
    let (v, code) = json(&["code", "--code", "golay12"]);
    assert_eq!(code, 0);
    assert_eq!(v["size"], 729);
    assert_eq!(v["predicates"]["min_distance"], 6);
    assert_eq!(v["predicates"]["self_dual"], true);
}
