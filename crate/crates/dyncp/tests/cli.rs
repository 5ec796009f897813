//! End-to-end checks of the `dyncp` binary: subcommands, formats,
//! exit codes, and file output.

// Reference values keep every digit of their source computation.
#![allow(clippy::excessive_precision)]

use std::io::Write;
use std::process::{Command, Output};

fn dyncp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dyncp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn write_config(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    let mut f = std::fs::File::create(&path).unwrap();
    f.write_all(text.as_bytes()).unwrap();
    path.to_string_lossy().into_owned()
}

const BASE_CONFIG: &str = r#"{
    "transition": { "n": 75, "n_prime": 77 },
    "mirror": {
        "z0": "20 um",
        "amplitude": "2 um",
        "shape": { "type": "harmonic", "omega": "resonant", "phase": 0.0 }
    },
    "time": "2 us"
}"#;

#[test]
fn preset_list_names_all_presets() {
    let out = dyncp(&["preset", "list"]);
    assert!(out.status.success());
    let text = stdout(&out);
    for name in [
        "paper_single_atom",
        "paper_gas",
        "paper_photon_comparison",
        "square_train_demo",
    ] {
        assert!(text.contains(name), "missing {name} in {text}");
    }
}

#[test]
fn preset_run_emits_json_with_the_reference_probability() {
    let out = dyncp(&["preset", "run", "paper_single_atom", "--format", "json"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let row = &doc["rows"][0];
    let p = row["probability_rwa"].as_f64().unwrap();
    assert!((p - 0.206390296119846745).abs() < 1e-10 * p);
    assert!(row["error"].is_null());
    assert_eq!(doc["columns"][0], "n");
}

#[test]
fn single_writes_csv_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(&dir, "scenario.json", BASE_CONFIG);
    let out_path = dir.path().join("row.csv");
    let out = dyncp(&[
        "single",
        "--config",
        &config,
        "--output",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = std::fs::read_to_string(&out_path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with("n,n_prime,omega0_rad_per_s"));
    assert!(lines[0].ends_with(",error"));
    assert!(lines[1].contains("2.0639"));
}

#[test]
fn sweep_produces_one_row_per_grid_point() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        &dir,
        "sweep.json",
        &BASE_CONFIG.replace(
            r#""time": "2 us""#,
            r#""time": ["1 us", "2 us"],
            "sweep": [ { "parameter": "mirror.z0", "values": ["20 um", "30 um", "40 um"] } ]"#,
        ),
    );
    let out = dyncp(&["sweep", "--config", &config, "--jobs", "2", "--format", "json"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["columns"][0], "mirror.z0");
    assert_eq!(doc["columns"][1], "time");
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 6);
    // first axis slowest, time fastest
    assert_eq!(rows[0]["time"], rows[2]["time"]);
    assert!(rows[0]["mirror.z0"] == rows[1]["mirror.z0"]);

    let csv = dyncp(&["sweep", "--config", &config, "--jobs", "1"]);
    assert!(csv.status.success());
    assert_eq!(stdout(&csv).lines().count(), 7);
}

#[test]
fn validate_reports_the_gas_scenario_as_invalid() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        &dir,
        "gas.json",
        &BASE_CONFIG.replace(
            r#""time": "2 us""#,
            r#""time": "0.5 us",
            "gas": {
                "n_atoms": 1000,
                "profile": { "type": "parabolic", "z_center": "20 um", "half_width": "10 um" },
                "nearest_neighbor": "10 um"
            }"#,
        ),
    );
    let out = dyncp(&["validate", "--config", &config]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("overall,,invalid"), "{text}");
    assert!(text.contains("hierarchy"), "{text}");

    let json = dyncp(&["validate", "--config", &config, "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&json)).unwrap();
    assert_eq!(doc["overall"], "invalid");
    assert_eq!(doc["near_zone"]["flag"], "ok");
}

#[test]
fn unknown_preset_fails_with_code_one_and_lists_options() {
    let out = dyncp(&["preset", "run", "nonexistent"]);
    assert_eq!(out.status.code(), Some(1));
    let err = stderr(&out);
    assert!(err.contains("unknown preset"), "{err}");
    assert!(err.contains("paper_single_atom"), "{err}");
}

#[test]
fn bad_config_fails_with_code_one_and_a_key_path() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        &dir,
        "bad.json",
        &BASE_CONFIG.replace("\"20 um\"", "\"20 GHz\""),
    );
    let out = dyncp(&["single", "--config", &config]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("mirror.z0"), "{}", stderr(&out));
}

#[test]
fn usage_errors_do_not_collide_with_the_nonconvergence_code() {
    let out = dyncp(&["single"]); // missing --config
    assert_eq!(out.status.code(), Some(1));
    // exit code 2 stays reserved for numerical non-convergence
    let quad_failure = dyncp_quadrature_error();
    assert_eq!(quad_failure.exit_code(), 2);
    assert_eq!(
        dyncp::error::Error::InvalidInput {
            reason: "x".into()
        }
        .exit_code(),
        1
    );
}

fn dyncp_quadrature_error() -> dyncp::error::Error {
    dyncp::error::Error::QuadratureNonConvergence {
        achieved: 1.0,
        requested: 1e-10,
        panels: 1,
    }
}

#[test]
fn help_and_version_exit_cleanly() {
    let help = dyncp(&["--help"]);
    assert_eq!(help.status.code(), Some(0));
    assert!(stdout(&help).contains("single"));
    assert!(stdout(&help).contains("sweep"));
    let version = dyncp(&["--version"]);
    assert_eq!(version.status.code(), Some(0));
}
