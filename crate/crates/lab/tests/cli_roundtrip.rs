//! End-to-end checks of the binary: output shapes, exit codes, and byte
//! determinism across runs and thread counts.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use zalcman_lab::descriptor_json;

const EXP_LINEAR: &str = r#"{
  "kind": "exp_rational",
  "alpha": 0.0,
  "polynomial": { "leading": [1.0, 0.0], "roots": [{ "point": [0.0, 0.0], "mult": 1 }] }
}"#;

const EXP_QUADRATIC: &str = r#"{
  "kind": "exp_rational",
  "alpha": 0.0,
  "polynomial": { "leading": [1.0, 0.0], "roots": [{ "point": [0.0, 0.0], "mult": 2 }] }
}"#;

const BAD_ALPHA: &str = r#"{
  "kind": "polynomial",
  "alpha": 1.5,
  "polynomial": { "coefficients": [[0.0, 0.0], [1.0, 0.0]] }
}"#;

fn run(args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_zalcman-lab"));
    cmd.args(args);
    cmd.env_remove("ZLAB_THREADS");
    for (key, value) in envs {
        cmd.env(key, value);
    }
    cmd.output().unwrap()
}

fn stdout_text(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).unwrap()
}

fn stderr_text(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).unwrap()
}

fn write_config(dir: &Path, name: &str, body: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

#[test]
fn classify_json_round_trips_and_repeats_byte_for_byte() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "quad.json", EXP_QUADRATIC);
    let cfg = cfg.to_str().unwrap();
    let first = run(&["classify", cfg, "--format", "json"], &[]);
    assert_eq!(first.status.code(), Some(0));
    let text = stdout_text(&first);
    let body = text.trim_end_matches('\n');
    assert_eq!(descriptor_json::reserialize(body).unwrap(), body);
    let second = run(&["classify", cfg, "--format", "json"], &[]);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn rays_text_matches_the_contract_line() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "quad.json", EXP_QUADRATIC);
    let output = run(&["rays", cfg.to_str().unwrap()], &[]);
    assert_eq!(output.status.code(), Some(0));
    assert_eq!(
        stdout_text(&output),
        "0.785398, 2.356194, 3.926991, 5.497787\n"
    );
}

#[test]
fn out_of_range_alpha_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "bad.json", BAD_ALPHA);
    let output = run(&["classify", cfg.to_str().unwrap()], &[]);
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr_text(&output).contains("alpha out of range (-1,1)"));
}

#[test]
fn verify_of_an_exact_recipe_passes_with_the_csv_contract() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "lin.json", EXP_LINEAR);
    let output = run(
        &[
            "verify",
            cfg.to_str().unwrap(),
            "--target",
            "exp",
            "--n-schedule",
            "10,100,1000",
        ],
        &[],
    );
    assert_eq!(output.status.code(), Some(0));
    let text = stdout_text(&output);
    assert!(text.starts_with("# zalcman-lab v1\n"));
    assert!(text.contains("n,sup_error,phase_dispersion,selected_flag"));
    assert!(text.contains("# verdict: PASS"));
}

#[test]
fn verify_of_a_perturbed_target_fails_with_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "lin.json", EXP_LINEAR);
    let output = run(
        &[
            "verify",
            cfg.to_str().unwrap(),
            "--target",
            "exp,perturb_arg=0.1",
            "--n-schedule",
            "10,100,1000",
        ],
        &[],
    );
    assert_eq!(output.status.code(), Some(1));
    let text = stdout_text(&output);
    assert!(text.contains("# verdict: FAIL"));
    assert!(text.contains("# reason: non-decreasing error"));
}

#[test]
fn construct_prints_five_sequence_rows() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "lin.json", EXP_LINEAR);
    let output = run(
        &["construct", cfg.to_str().unwrap(), "--target", "exp"],
        &[],
    );
    assert_eq!(output.status.code(), Some(0));
    let text = stdout_text(&output);
    assert!(text.starts_with("# zalcman-lab v1\n"));
    let data_rows = text
        .lines()
        .filter(|line| {
            line.split(',')
                .next()
                .is_some_and(|field| field.parse::<u64>().is_ok())
        })
        .count();
    assert_eq!(data_rows, 5);
}

#[test]
fn scan_output_is_identical_across_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "quad.json", EXP_QUADRATIC);
    let args = [
        "scan",
        cfg.to_str().unwrap(),
        "--center",
        "0.35,0.35",
        "--radius",
        "0.1",
        "--nmax",
        "50",
        "--points",
        "5",
    ];
    let single = run(&args, &[("ZLAB_THREADS", "1")]);
    let default = run(&args, &[]);
    assert_eq!(single.status.code(), Some(0));
    assert_eq!(single.stdout, default.stdout);
    let text = stdout_text(&default);
    assert!(text.contains("z_re,z_im,n,marty_value"));
}

#[test]
fn unknown_flags_are_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "quad.json", EXP_QUADRATIC);
    let output = run(&["rays", cfg.to_str().unwrap(), "--bogus"], &[]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn selftest_reports_pass_and_exits_0() {
    let output = run(&["selftest"], &[]);
    assert_eq!(output.status.code(), Some(0));
    let text = stdout_text(&output);
    assert!(text.contains("selftest: PASS"));
}
