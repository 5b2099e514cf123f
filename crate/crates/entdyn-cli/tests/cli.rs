//! End-to-end tests of the `entdyn` binary: output formats, config
//! handling, determinism, and the exit-code contract.

use std::io::Write;
use std::process::{Command, Output};

use entdyn::ensemble::{superposition_state, AveragingMode, Observable};
use entdyn::measures::EntropyKind;
use entdyn::quenched::{averaged_linear_entropy_analytic, run_quenched_ensemble,
    QuenchedEnsembleConfig};

fn entdyn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_entdyn"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is UTF-8")
}

fn stderr_json(out: &Output) -> serde_json::Value {
    let text = String::from_utf8(out.stderr.clone()).expect("stderr is UTF-8");
    let line = text.lines().next().unwrap_or_else(|| panic!("no stderr line in: {text:?}"));
    serde_json::from_str(line).unwrap_or_else(|e| panic!("stderr not JSON ({e}): {line}"))
}

/// Data rows of a CSV body: everything after the header, split on commas.
fn data_rows(body: &str) -> Vec<Vec<String>> {
    body.lines()
        .skip_while(|l| l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_owned).collect())
        .collect()
}

fn spec_line(body: &str) -> serde_json::Value {
    let line = body
        .lines()
        .find(|l| l.starts_with("# spec: "))
        .expect("spec comment present");
    serde_json::from_str(line.trim_start_matches("# spec: ")).expect("spec is JSON")
}

#[test]
fn help_and_version_exit_zero() {
    let help = entdyn(&["--help"]);
    assert!(help.status.success());
    assert!(stdout_str(&help).contains("quenched"));
    let version = entdyn(&["--version"]);
    assert!(version.status.success());
    assert!(stdout_str(&version).contains("entdyn"));
}

#[test]
fn unknown_flag_exits_two() {
    let out = entdyn(&["quenched", "--definitely-not-a-flag"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn analytic_matches_the_library_closed_form() {
    let out = entdyn(&[
        "analytic",
        "--curve",
        "quenched-linear",
        "--tau-max",
        "5",
        "--tau-steps",
        "6",
        "--no-timestamp",
    ]);
    assert!(out.status.success());
    let body = stdout_str(&out);
    assert!(body.contains("tau,mean,stderr,n"));
    let rows = data_rows(&body);
    assert_eq!(rows.len(), 6);
    for (i, row) in rows.iter().enumerate() {
        let tau: f64 = row[0].parse().unwrap();
        let mean: f64 = row[1].parse().unwrap();
        assert!((tau - i as f64).abs() < 1e-15);
        // {:.16e} prints 17 significant digits, so parsing is lossless.
        assert_eq!(mean, averaged_linear_entropy_analytic(tau));
        assert_eq!(row[2].parse::<f64>().unwrap(), 0.0);
        assert_eq!(row[3], "0");
    }
}

#[test]
fn quenched_run_is_deterministic_and_matches_an_in_process_run() {
    let args = [
        "quenched",
        "--seed",
        "7",
        "--trajectories",
        "64",
        "--tau-max",
        "2",
        "--tau-steps",
        "5",
        "--no-timestamp",
    ];
    let first = entdyn(&args);
    let second = entdyn(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout, "same spec must give identical bytes");

    let cfg = QuenchedEnsembleConfig {
        initial: superposition_state(0.0).unwrap(),
        grid: vec![0.0, 0.5, 1.0, 1.5, 2.0],
        trajectories: 64,
        seed: 7,
        mode: AveragingMode::AverageOfEntanglement,
        observable: Observable::Entropy(EntropyKind::Linear),
    };
    let direct = run_quenched_ensemble(&cfg).unwrap();
    let rows = data_rows(&stdout_str(&first));
    assert_eq!(rows.len(), 5);
    for (row, (&mean, &stderr)) in rows
        .iter()
        .zip(direct.series.mean.iter().zip(&direct.series.stderr))
    {
        assert_eq!(row[1].parse::<f64>().unwrap(), mean);
        assert_eq!(row[2].parse::<f64>().unwrap(), stderr);
        assert_eq!(row[3], "64");
    }
}

#[test]
fn temporal_uses_t_header_and_respects_the_step_grid() {
    let out = entdyn(&[
        "temporal",
        "--seed",
        "3",
        "--trajectories",
        "64",
        "--t-max",
        "0.02",
        "--t-steps",
        "3",
        "--no-timestamp",
    ]);
    assert!(out.status.success());
    let body = stdout_str(&out);
    assert!(body.contains("t,mean,stderr,n"));
    let rows = data_rows(&body);
    assert_eq!(rows.len(), 3);
    let l0: f64 = rows[0][1].parse().unwrap();
    assert!((l0 - 0.5).abs() < 1e-12, "Bell start has L = 1/2, got {l0}");

    let misaligned = entdyn(&[
        "temporal",
        "--seed",
        "3",
        "--trajectories",
        "64",
        "--t-max",
        "0.0005",
        "--t-steps",
        "2",
    ]);
    assert_eq!(misaligned.status.code(), Some(2));
    assert_eq!(stderr_json(&misaligned)["error"], "validation");
}

#[test]
fn entanglement_of_average_mode_runs_and_flags_single_batch_stderr() {
    let out = entdyn(&[
        "quenched",
        "--seed",
        "5",
        "--c",
        "0.7071067811865476",
        "--trajectories",
        "64",
        "--tau-max",
        "1",
        "--tau-steps",
        "3",
        "--mode",
        "entanglement-of-average",
        "--observable",
        "eof",
        "--no-timestamp",
    ]);
    assert!(out.status.success());
    let rows = data_rows(&stdout_str(&out));
    let eof0: f64 = rows[0][1].parse().unwrap();
    assert!(
        (eof0 - std::f64::consts::LN_2).abs() < 1e-10,
        "at t = 0 the averaged state is the Bell state itself; got EoF {eof0}"
    );
    // 64 trajectories fit in one batch, so the batch-means stderr is
    // undefined and must be reported as NaN, not silently zeroed.
    assert_eq!(rows[0][2], "NaN");
}

#[test]
fn config_file_is_read_and_flags_override_it() {
    let dir = tempfile::tempdir().unwrap();
    let toml_path = dir.path().join("run.toml");
    std::fs::write(
        &toml_path,
        "c = 0.1\ntau_max = 2.0\ntau_steps = 5\ntrajectories = 64\nseed = 9\n",
    )
    .unwrap();
    let out = entdyn(&[
        "quenched",
        "--config",
        toml_path.to_str().unwrap(),
        "--c",
        "0",
        "--no-timestamp",
    ]);
    assert!(out.status.success());
    let spec = spec_line(&stdout_str(&out));
    assert_eq!(spec["c"], 0.0, "flag must override the file");
    assert_eq!(spec["seed"], 9, "unset flags fall back to the file");
    assert_eq!(spec["tau_steps"], 5);

    let json_path = dir.path().join("run.json");
    std::fs::write(
        &json_path,
        "{\"c\": 0.0, \"tau_max\": 2.0, \"tau_steps\": 5, \"trajectories\": 64, \"seed\": 9}",
    )
    .unwrap();
    let from_json = entdyn(&[
        "quenched",
        "--config",
        json_path.to_str().unwrap(),
        "--no-timestamp",
    ]);
    assert!(from_json.status.success());
    assert_eq!(
        out.stdout, from_json.stdout,
        "equivalent TOML and JSON configs must give identical output"
    );
}

#[test]
fn unknown_config_key_is_a_validation_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.toml");
    std::fs::write(&path, "seed = 1\nbanana = 2\n").unwrap();
    let out = entdyn(&["quenched", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr_json(&out);
    assert_eq!(err["error"], "validation");
    assert!(err["message"].as_str().unwrap().contains("banana"));
}

#[test]
fn missing_seed_is_a_validation_error() {
    let out = entdyn(&["quenched", "--trajectories", "8"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"], "validation");
}

#[test]
fn q_contract_is_enforced() {
    let missing = entdyn(&["quenched", "--seed", "1", "--observable", "renyi"]);
    assert_eq!(missing.status.code(), Some(2));
    let stray = entdyn(&["quenched", "--seed", "1", "--observable", "linear", "--q", "2"]);
    assert_eq!(stray.status.code(), Some(2));
}

#[test]
fn out_file_and_io_failure() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("series.csv");
    let ok = entdyn(&[
        "analytic",
        "--curve",
        "quenched-f",
        "--tau-steps",
        "11",
        "--tau-max",
        "1",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(ok.status.success());
    assert!(ok.stdout.is_empty(), "with --out nothing goes to stdout");
    let body = std::fs::read_to_string(&path).unwrap();
    assert!(body.starts_with("# generated: "));
    assert_eq!(data_rows(&body).len(), 11);

    let bad = entdyn(&[
        "analytic",
        "--curve",
        "quenched-f",
        "--out",
        "/no-such-dir/series.csv",
    ]);
    assert_eq!(bad.status.code(), Some(4));
    assert_eq!(stderr_json(&bad)["error"], "io");
}

#[test]
fn svg_plots_carry_the_closed_form_overlay_when_one_exists() {
    let dir = tempfile::tempdir().unwrap();
    let with_overlay = dir.path().join("q.svg");
    let out = entdyn(&[
        "quenched",
        "--seed",
        "2",
        "--trajectories",
        "64",
        "--tau-max",
        "2",
        "--tau-steps",
        "9",
        "--out",
        dir.path().join("q.csv").to_str().unwrap(),
        "--svg",
        with_overlay.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let svg = std::fs::read_to_string(&with_overlay).unwrap();
    assert!(svg.starts_with("<svg "));
    assert_eq!(
        svg.matches("<polyline").count(),
        2,
        "default run (|11> start, linear, average-of-entanglement) has a closed form"
    );

    let plain = dir.path().join("a.svg");
    let analytic = entdyn(&[
        "analytic",
        "--curve",
        "temporal-linear-bell",
        "--tau-max",
        "1",
        "--out",
        dir.path().join("a.csv").to_str().unwrap(),
        "--svg",
        plain.to_str().unwrap(),
    ]);
    assert!(analytic.status.success());
    let svg = std::fs::read_to_string(&plain).unwrap();
    assert_eq!(svg.matches("<polyline").count(), 1);
}

#[test]
fn haar_baseline_reports_mean_and_expected_value() {
    let out = entdyn(&["haar-baseline", "--samples", "4000", "--seed", "11", "--no-timestamp"]);
    assert!(out.status.success());
    let body = stdout_str(&out);
    assert!(body.contains("# expected: 3.3333333333"));
    assert!(body.contains("observable,mean,stderr,n"));
    let rows = data_rows(&body);
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0][0], "von-neumann");
    let mean: f64 = rows[0][1].parse().unwrap();
    let stderr: f64 = rows[0][2].parse().unwrap();
    assert!((mean - 1.0 / 3.0).abs() < 5.0 * stderr.max(1e-6));
    assert_eq!(rows[0][3], "4000");
}

#[test]
fn geometry_check_emits_a_passing_json_report() {
    let out = entdyn(&[
        "geometry-check",
        "--points",
        "2",
        "--ratio-points",
        "2",
        "--seed",
        "5",
        "--no-timestamp",
    ]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(report["spec"]["command"], "geometry-check");
    assert_eq!(report["identities"]["pass"], true);
    assert_eq!(report["identities"]["evaluated"], 2);
    assert_eq!(report["pass"], true);
    assert!(report.get("generated").is_none());
    // The stencil bias in the metric is O(h²), so the ratio sits within
    // ~1e-5 relative of 128·√2 at h = 1e-3.
    let mean = report["density_ratio"]["mean"].as_f64().unwrap();
    assert!((mean / (128.0 * std::f64::consts::SQRT_2) - 1.0).abs() < 1e-4);
}

#[test]
fn threads_flag_does_not_change_results() {
    let base = entdyn(&[
        "quenched", "--seed", "4", "--trajectories", "96", "--tau-max", "1",
        "--tau-steps", "3", "--no-timestamp",
    ]);
    let pinned = entdyn(&[
        "quenched", "--seed", "4", "--trajectories", "96", "--tau-max", "1",
        "--tau-steps", "3", "--no-timestamp", "--threads", "1",
    ]);
    assert!(base.status.success() && pinned.status.success());
    assert_eq!(base.stdout, pinned.stdout);
}

#[test]
fn timestamp_lines_appear_by_default() {
    let out = entdyn(&["analytic", "--curve", "quenched-f", "--tau-steps", "2", "--tau-max", "1"]);
    assert!(out.status.success());
    let body = stdout_str(&out);
    let first = body.lines().next().unwrap();
    assert!(first.starts_with("# generated: 20"), "got: {first}");
}

/// Guard against the config loader quietly accepting whatever extension —
/// config parsing must stay extension-dispatched.
#[test]
fn config_with_unsupported_extension_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.yaml");
    let mut f = std::fs::File::create(&path).unwrap();
    writeln!(f, "seed: 1").unwrap();
    let out = entdyn(&["quenched", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"], "validation");
}

/// The analytic subcommand accepts no seed: passing one must be rejected by
/// clap, keeping the "seeds are for sampling commands" contract visible.
#[test]
fn analytic_rejects_a_seed() {
    let out = entdyn(&["analytic", "--curve", "quenched-f", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn phi_start_round_trips_through_the_spec_line(){
    let out = entdyn(&[
        "temporal",
        "--seed",
        "8",
        "--trajectories",
        "64",
        "--start",
        "phi",
        "--phi",
        "0.3",
        "--t-max",
        "0.01",
        "--t-steps",
        "2",
        "--no-timestamp",
    ]);
    assert!(out.status.success());
    let spec = spec_line(&stdout_str(&out));
    assert_eq!(spec["start"], "phi");
    assert_eq!(spec["phi"], 0.3);

    let missing_phi = entdyn(&[
        "temporal", "--seed", "8", "--start", "phi", "--t-max", "0.01", "--t-steps", "2",
    ]);
    assert_eq!(missing_phi.status.code(), Some(2));
}

fn parse_means(body: &str) -> Vec<(f64, f64)> {
    data_rows(body)
        .iter()
        .map(|r| (r[0].parse().unwrap(), r[1].parse().unwrap()))
        .collect()
}

/// A small but real physics check through the full binary: the quenched
/// ensemble mean of the linear entropy tracks the closed form.
#[test]
fn quenched_cli_series_tracks_the_closed_form() {
    let out = entdyn(&[
        "quenched",
        "--seed",
        "12",
        "--trajectories",
        "4096",
        "--tau-max",
        "3",
        "--tau-steps",
        "4",
        "--no-timestamp",
    ]);
    assert!(out.status.success());
    for (tau, mean) in parse_means(&stdout_str(&out)) {
        let expected = averaged_linear_entropy_analytic(tau);
        assert!(
            (mean - expected).abs() < 5e-3,
            "tau = {tau}: CLI mean {mean} vs closed form {expected}"
        );
    }
}
