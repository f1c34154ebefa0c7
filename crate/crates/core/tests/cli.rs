//! Black-box tests of the `sqz` binary: file formats, exit codes, and
//! determinism of the verification report.

use std::fs;
use std::io::BufReader;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use num_complex::Complex64 as C64;

use squeeze_spectra::singlemode::apply_exact;
use squeeze_spectra::states::{make_vacuum, GridFunction, GridSpec};

fn sqz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sqz"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("sqz-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn write_vacuum(path: &Path) {
    let vac = make_vacuum(GridSpec::default()).unwrap();
    let mut w = fs::File::create(path).unwrap();
    vac.write_csv(&mut w).unwrap();
}

#[test]
fn verify_passes_and_is_deterministic() {
    let out_a = tmp("report_a.json");
    let out_b = tmp("report_b.json");
    let run_a = sqz(&["verify", "--seed", "11", "--output", out_a.to_str().unwrap()]);
    let run_b = sqz(&["verify", "--seed", "11", "--output", out_b.to_str().unwrap()]);
    assert!(run_a.status.success(), "{}", String::from_utf8_lossy(&run_a.stderr));
    assert!(run_b.status.success());
    assert_eq!(fs::read_to_string(&out_a).unwrap(), fs::read_to_string(&out_b).unwrap());

    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&out_a).unwrap()).unwrap();
    assert_eq!(report["seed"], 11);
    let checks = report["checks"].as_array().unwrap();
    assert!(checks.len() >= 15);
    for c in checks {
        assert_eq!(c["pass"], true, "{c}");
    }

    let table = String::from_utf8_lossy(&run_a.stdout);
    assert!(table.contains("seed = 11"));
    assert!(table.contains("pass"));
    assert!(!table.contains("FAIL"));
}

#[test]
fn verify_tol_override_forces_failure_exit_1() {
    // an impossible tolerance turns a passing check into a failure
    let run = sqz(&["verify", "--tol-override", "spectral.plancherel=2.3e-16"]);
    assert_eq!(run.status.code(), Some(1), "{}", String::from_utf8_lossy(&run.stderr));
}

#[test]
fn verify_malformed_override_exit_2() {
    let run = sqz(&["verify", "--tol-override", "states.vacuum_norm"]);
    assert_eq!(run.status.code(), Some(2));
    let run = sqz(&["verify", "--tol-override", "states.vacuum_norm=0"]);
    assert_eq!(run.status.code(), Some(2));
}

#[test]
fn apply_r_zero_is_identity() {
    let input = tmp("vac_in.csv");
    let output = tmp("vac_out.csv");
    write_vacuum(&input);
    let run = sqz(&[
        "apply",
        "--r",
        "0",
        "--input",
        input.to_str().unwrap(),
        "--output",
        output.to_str().unwrap(),
    ]);
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    let mut reader = BufReader::new(fs::File::open(&output).unwrap());
    let round = GridFunction::read_csv(&mut reader).unwrap();
    let vac = make_vacuum(GridSpec::default()).unwrap();
    assert!(round.l2_distance(&vac).unwrap() < 1e-12);
}

#[test]
fn apply_matches_library_dilation() {
    let input = tmp("vac_in2.csv");
    let output = tmp("vac_out2.csv");
    write_vacuum(&input);
    let run = sqz(&[
        "apply",
        "--r",
        "0.4",
        "--input",
        input.to_str().unwrap(),
        "--output",
        output.to_str().unwrap(),
    ]);
    assert!(run.status.success());
    let mut reader = BufReader::new(fs::File::open(&output).unwrap());
    let round = GridFunction::read_csv(&mut reader).unwrap();
    let expect = apply_exact(0.4, &make_vacuum(GridSpec::default()).unwrap()).unwrap();
    assert!(round.l2_distance(&expect).unwrap() < 1e-12);
}

#[test]
fn apply_nonzero_theta_is_usage_error() {
    let input = tmp("vac_in3.csv");
    write_vacuum(&input);
    let run = sqz(&[
        "apply",
        "--r",
        "0.4",
        "--theta",
        "0.3",
        "--input",
        input.to_str().unwrap(),
        "--output",
        tmp("unused.csv").to_str().unwrap(),
    ]);
    assert_eq!(run.status.code(), Some(2));
}

#[test]
fn apply_missing_input_is_usage_error() {
    let run = sqz(&[
        "apply",
        "--r",
        "0.4",
        "--input",
        "/nonexistent/state.csv",
        "--output",
        tmp("unused2.csv").to_str().unwrap(),
    ]);
    assert_eq!(run.status.code(), Some(2));
}

#[test]
fn spectrum_emits_amplitude_table() {
    let input = tmp("vac_in4.csv");
    let output = tmp("spectrum.csv");
    write_vacuum(&input);
    let run = sqz(&[
        "spectrum",
        "--r",
        "0.5",
        "--input",
        input.to_str().unwrap(),
        "--output",
        output.to_str().unwrap(),
    ]);
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    let text = fs::read_to_string(&output).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "# E,re_c_plus,im_c_plus,re_c_minus,im_c_minus");
    // Plancherel: quadrature over both channels recovers the unit norm
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect();
    assert!(rows.len() > 100);
    let de = rows[1][0] - rows[0][0];
    let total: f64 = rows
        .iter()
        .map(|row| row[1] * row[1] + row[2] * row[2] + row[3] * row[3] + row[4] * row[4])
        .sum::<f64>()
        * de;
    assert!((total - 1.0).abs() < 1e-5, "Plancherel sum {total}");
}

#[test]
fn resonances_table_values() {
    let run = sqz(&["resonances", "--r", "1.0", "--n-max", "2"]);
    assert!(run.status.success());
    let text = String::from_utf8_lossy(&run.stdout);
    let rows: Vec<Vec<f64>> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 3);
    // n = 0 at r = 1: E_0 = i/2, s+- = e^{+-1/2}
    assert_eq!(rows[0][1], 0.0);
    assert!((rows[0][2] - 0.5).abs() < 1e-15);
    assert!((rows[0][3] - 0.5f64.exp()).abs() < 1e-15);
    assert!((rows[0][4] - (-0.5f64).exp()).abs() < 1e-15);
    assert!((rows[2][2] - 2.5).abs() < 1e-15);
}

#[test]
fn resonances_json_schema() {
    let run = sqz(&["resonances", "--r", "0.5", "--n-max", "1", "--format", "json"]);
    assert!(run.status.success());
    let rows: serde_json::Value = serde_json::from_slice(&run.stdout).unwrap();
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[1]["n"], 1);
    assert_eq!(rows[1]["E_n"][0], 0.0);
    assert!((rows[1]["E_n"][1].as_f64().unwrap() - 0.75).abs() < 1e-15);
    assert!((rows[1]["s_plus"].as_f64().unwrap() * rows[1]["s_minus"].as_f64().unwrap() - 1.0)
        .abs()
        < 1e-15);
}

fn diag_matrix_json(entries: &[C64]) -> serde_json::Value {
    let n = entries.len();
    serde_json::Value::Array(
        (0..n)
            .map(|i| {
                serde_json::Value::Array(
                    (0..n)
                        .map(|j| {
                            let v = if i == j { entries[i] } else { C64::new(0.0, 0.0) };
                            serde_json::json!([v.re, v.im])
                        })
                        .collect(),
                )
            })
            .collect(),
    )
}

#[test]
fn takagi_diagonal_input_exit_0() {
    let input = tmp("diag.json");
    fs::write(
        &input,
        serde_json::to_string(&diag_matrix_json(&[C64::new(0.8, 0.0), C64::new(0.3, 0.0)]))
            .unwrap(),
    )
    .unwrap();
    let run = sqz(&["takagi", "--input", input.to_str().unwrap()]);
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    let result: serde_json::Value = serde_json::from_slice(&run.stdout).unwrap();
    assert!(result["residual"].as_f64().unwrap() <= 1e-10);
    // already diagonal and nonnegative: Phi = 0, Z_D echoes the input
    for pair in [&result["Phi"][0][0], &result["Phi"][1][1], &result["Phi"][0][1]] {
        assert!(pair[0].as_f64().unwrap().abs() < 1e-12);
        assert!(pair[1].as_f64().unwrap().abs() < 1e-12);
    }
    assert!((result["Z_D"][0][0][0].as_f64().unwrap() - 0.8).abs() < 1e-12);
    assert!((result["Z_D"][1][1][0].as_f64().unwrap() - 0.3).abs() < 1e-12);
}

#[test]
fn takagi_asymmetric_input_exit_2() {
    let input = tmp("asym.json");
    fs::write(&input, r#"[[[0.0,0.0],[1.0,0.0]],[[0.5,0.0],[0.0,0.0]]]"#).unwrap();
    let run = sqz(&["takagi", "--input", input.to_str().unwrap()]);
    assert_eq!(run.status.code(), Some(2));
}

#[test]
fn takagi_malformed_json_exit_2() {
    let input = tmp("bad.json");
    fs::write(&input, "not json").unwrap();
    let run = sqz(&["takagi", "--input", input.to_str().unwrap()]);
    assert_eq!(run.status.code(), Some(2));
}
