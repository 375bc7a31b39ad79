//! End-to-end tests against the built binary: output schemas, format parity,
//! determinism, and the exit-code contract.

use std::path::Path;
use std::process::{Command, Output};

fn relbound(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_relbound"))
        .args(args)
        .output()
        .expect("binary should run")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is utf-8")
}

fn write_config(dir: &Path, text: &str) -> String {
    let path = dir.join("prop.cfg");
    std::fs::write(&path, text).expect("config written");
    path.to_str().expect("utf-8 path").to_string()
}

fn csv_row(text: &str, row: usize) -> Vec<String> {
    text.lines()
        .nth(row)
        .expect("row exists")
        .split(',')
        .map(str::to_string)
        .collect()
}

#[test]
fn zeta_sweep_schema_and_byte_determinism() {
    let args = [
        "zeta-sweep",
        "--beta-min",
        "0.1",
        "--beta-max",
        "0.9",
        "--steps",
        "5",
    ];
    let first = relbound(&args);
    let second = relbound(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout, "reruns must be byte-identical");

    let text = stdout_of(&first);
    assert!(!text.contains('\r'), "CSV must use LF line endings");
    assert_eq!(
        csv_row(&text, 0),
        ["beta", "gamma", "zeta", "bound_xp", "bound_et"]
    );
    assert_eq!(text.lines().count(), 6);
    assert_eq!(csv_row(&text, 1)[0], "0.1");
    assert_eq!(
        csv_row(&text, 5)[0],
        "0.9",
        "grid must end exactly at beta-max"
    );
}

#[test]
fn bounds_gains_energy_column_with_dt() {
    let text = stdout_of(&relbound(&["bounds", "--beta", "0.6"]));
    assert_eq!(
        csv_row(&text, 0),
        [
            "beta",
            "gamma",
            "zeta",
            "bound_xp",
            "bound_xp_ultra",
            "bound_et",
            "bound_et_ultra"
        ]
    );

    let text = stdout_of(&relbound(&["bounds", "--beta", "0.6", "--dt", "1e-3"]));
    assert_eq!(
        csv_row(&text, 0).last().map(String::as_str),
        Some("min_delta_epsilon")
    );
    assert_eq!(csv_row(&text, 1).len(), 8);
}

#[test]
fn json_carries_the_same_numbers_as_csv() {
    let args = ["bounds", "--beta", "0.985", "--dt", "1e-3"];
    let csv = stdout_of(&relbound(&args));
    let json_args = ["--format", "json", "--seed", "99"];
    let json_text = stdout_of(&relbound(&[&json_args[..], &args[..]].concat()));

    let doc: serde_json::Value = serde_json::from_str(&json_text).expect("valid JSON");
    assert_eq!(doc["meta"]["seed"], 99);
    assert_eq!(doc["meta"]["units"], "natural");
    assert_eq!(doc["meta"]["version"], env!("CARGO_PKG_VERSION"));

    let header = csv_row(&csv, 0);
    let values = csv_row(&csv, 1);
    let row = &doc["rows"][0];
    for (name, text_value) in header.iter().zip(&values) {
        let from_csv: f64 = text_value.parse().expect("numeric CSV field");
        let from_json = row[name].as_f64().expect("numeric JSON field");
        assert_eq!(
            from_csv, from_json,
            "column {name} must agree across formats"
        );
    }
}

#[test]
fn propagate_reproduces_the_closed_form_modulus_sigma() {
    let dir = tempfile::tempdir().expect("tempdir");
    let cfg = write_config(
        dir.path(),
        "function = vector_norm\nvalues = 3, 4, 0\nsigmas = 0.1, 0.2, 0.3\n",
    );
    let text = stdout_of(&relbound(&["propagate", &cfg]));
    assert_eq!(csv_row(&text, 0), ["function", "value", "sigma"]);
    let row = csv_row(&text, 1);
    assert_eq!(row[0], "vector_norm");
    assert_eq!(row[1], "5");
    let sigma: f64 = row[2].parse().unwrap();
    let expected = 0.17088007490635063;
    assert!(
        (sigma - expected).abs() <= 1e-12 * expected,
        "sigma {sigma} vs {expected}"
    );
}

#[test]
fn propagate_agrees_with_the_library_engine() {
    let dir = tempfile::tempdir().expect("tempdir");
    let cfg = write_config(
        dir.path(),
        "function = momentum\nvalues = 1, 0.5\nsigmas = 0.02, 0.025\n",
    );
    let text = stdout_of(&relbound(&["propagate", &cfg]));
    let row = csv_row(&text, 1);
    let value: f64 = row[1].parse().unwrap();
    let sigma: f64 = row[2].parse().unwrap();

    let expected_value = relbound_core::kinematics::momentum_modulus(1.0, 0.5, 1.0).unwrap();
    let f = relbound_core::propagation::MomentumFn { c: 1.0 };
    let expected_sigma =
        relbound_core::propagation::propagate_sigma(&f, &[1.0, 0.5], &[0.02, 0.025]).unwrap();
    assert_eq!(value, expected_value);
    assert_eq!(sigma, expected_sigma);
}

#[test]
fn propagate_momentum_sigma_is_gamma_cubed_times_dv() {
    // at beta = 0.6 the Lorentz factor is exactly 1.25, so sigma = 1.25^3/100
    let dir = tempfile::tempdir().expect("tempdir");
    let cfg = write_config(
        dir.path(),
        "function = momentum\nvalues = 1, 0.6\nsigmas = 0, 0.01\n",
    );
    let text = stdout_of(&relbound(&["propagate", &cfg]));
    let sigma: f64 = csv_row(&text, 1)[2].parse().unwrap();
    let expected = 0.01953125;
    assert!(
        (sigma - expected).abs() <= 1e-12 * expected,
        "sigma {sigma} vs {expected}"
    );
}

#[test]
fn propagate_mc_cross_check_lands_near_the_delta_method() {
    let dir = tempfile::tempdir().expect("tempdir");
    let cfg = write_config(
        dir.path(),
        "function = vector_norm\nvalues = 3, 4, 0\nsigmas = 0.1, 0.2, 0.3\n",
    );
    let text = stdout_of(&relbound(&[
        "--samples",
        "50000",
        "propagate",
        &cfg,
        "--mc",
    ]));
    assert_eq!(
        csv_row(&text, 0),
        ["function", "value", "sigma", "mc_sigma", "mc_rel_dev"]
    );
    let row = csv_row(&text, 1);
    let rel_dev: f64 = row[4].parse().unwrap();
    assert!(rel_dev.abs() < 0.05, "mc deviation {rel_dev}");
}

#[test]
fn propagate_flat_function_leaves_the_deviation_blank() {
    // gamma has zero slope at rest, so sigma is 0 and mc_rel_dev is undefined
    let dir = tempfile::tempdir().expect("tempdir");
    let cfg = write_config(dir.path(), "function = gamma\nvalues = 0\nsigmas = 0.01\n");
    let text = stdout_of(&relbound(&["--samples", "5000", "propagate", &cfg, "--mc"]));
    let row = csv_row(&text, 1);
    assert_eq!(row[1], "1");
    assert_eq!(row[2], "0");
    assert_eq!(row[4], "", "undefined deviation renders as an empty field");
}

#[test]
fn malformed_configs_exit_1() {
    let dir = tempfile::tempdir().expect("tempdir");
    for bad in [
        "function vector_norm\n",
        "function = sine\nvalues = 1\nsigmas = 0\n",
        "function = gamma\nvalues = 0.5, 0.6\nsigmas = 0.01\n",
        "function = gamma\nvalues = 0.5\n",
    ] {
        let cfg = write_config(dir.path(), bad);
        let out = relbound(&["propagate", &cfg]);
        assert_eq!(out.status.code(), Some(1), "config: {bad:?}");
    }
    let out = relbound(&["propagate", "/nonexistent/prop.cfg"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn out_of_domain_inputs_exit_2() {
    let dir = tempfile::tempdir().expect("tempdir");
    for bad in [
        "function = gamma\nvalues = 1.5\nsigmas = 0.01\n",
        "function = position_x\nvalues = 1, 2\nsigmas = 0.01, 0.01\n",
        "function = vector_norm\nvalues = 0, 0, 0\nsigmas = 0.1, 0.1, 0.1\n",
    ] {
        let cfg = write_config(dir.path(), bad);
        let out = relbound(&["propagate", &cfg]);
        assert_eq!(out.status.code(), Some(2), "config: {bad:?}");
        assert!(!out.stderr.is_empty(), "exit 2 must explain itself");
    }
    let out = relbound(&["bounds", "--beta", "1.0"]);
    assert_eq!(out.status.code(), Some(2));
    let out = relbound(&["--hbar", "-1", "bounds", "--beta", "0.5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_1_and_help_exits_0() {
    assert_eq!(relbound(&["bounds"]).status.code(), Some(1));
    assert_eq!(relbound(&["--no-such-flag"]).status.code(), Some(1));
    assert_eq!(
        relbound(&["zeta-sweep", "--steps", "1"]).status.code(),
        Some(1)
    );
    assert_eq!(
        relbound(&["zeta-sweep", "--beta-min", "0.9", "--beta-max", "0.1"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(relbound(&["--help"]).status.code(), Some(0));
    assert_eq!(relbound(&["--version"]).status.code(), Some(0));
}

#[test]
fn verify_suites_report_and_exit_by_outcome() {
    let out = relbound(&["--samples", "20000", "verify", "identity"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert_eq!(text.lines().count(), 2);
    assert!(text.lines().all(|l| l.ends_with(": PASS")));

    // two samples cannot estimate a standard deviation to 2%
    let out = relbound(&["--samples", "2", "verify", "propagation"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout_of(&out).lines().any(|l| l.contains(": FAIL")));

    // corrupted constants are rejected before any suite runs
    let out = relbound(&["--hbar", "-1", "verify", "all"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty(), "no check may run under a bad hbar");
}

#[test]
fn output_flag_writes_the_table_to_a_file() {
    let dir = tempfile::tempdir().expect("tempdir");
    let path = dir.path().join("sweep.csv");
    let out = relbound(&[
        "--output",
        path.to_str().unwrap(),
        "zeta-sweep",
        "--beta-min",
        "0",
        "--beta-max",
        "0.5",
        "--steps",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty(), "table goes to the file, not stdout");
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("beta,gamma,zeta,"));
    assert_eq!(text.lines().count(), 4);

    let out = relbound(&[
        "--output",
        "/nonexistent/dir/sweep.csv",
        "bounds",
        "--beta",
        "0.5",
    ]);
    assert_eq!(out.status.code(), Some(2));
}
