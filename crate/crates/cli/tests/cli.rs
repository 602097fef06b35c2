//! End-to-end command-line behaviour: parsing, artifacts, determinism,
//! exit codes.

use std::process::Command;

use billiards_cli::{execute, Cli};
use clap::Parser;

fn run(args: &[&str]) -> Result<String, billiards_cli::CliError> {
    let mut full = vec!["billiards"];
    full.extend_from_slice(args);
    execute(Cli::parse_from(full))
}

#[test]
fn min_pentagon_reports_expected_length() {
    let out = run(&["min", "ngon:5@unit-circle"]).unwrap();
    assert!(out.contains("ell            = 3.61803398875"), "{out}");
    assert!(out.contains("classification = TwoBounceOnly"));
    assert!(out.contains("5 orbit(s), 0 band(s)"));
}

#[test]
fn capacity_equals_min_ell_and_prints_one_line() {
    let out = run(&["capacity", "ngon:5@unit-circle"]).unwrap();
    assert_eq!(out, "c_EHZ = 3.61803398875\n");
}

#[test]
fn polygon_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("pentagon.json");
    let poly = billiards_core::ConvexPolygon::regular(5, 1.0);
    std::fs::write(&path, serde_json::to_string(&poly).unwrap()).unwrap();
    let out = run(&["min", path.to_str().unwrap()]).unwrap();
    assert!(out.contains("3.61803398875"));
}

#[test]
fn json_and_svg_artifacts_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let j1 = dir.path().join("a.json");
    let j2 = dir.path().join("b.json");
    let s1 = dir.path().join("a.svg");
    let s2 = dir.path().join("b.svg");
    run(&[
        "min",
        "ngon:6@unit-circle",
        "--json",
        j1.to_str().unwrap(),
        "--svg",
        s1.to_str().unwrap(),
    ])
    .unwrap();
    run(&[
        "min",
        "ngon:6@unit-circle",
        "--json",
        j2.to_str().unwrap(),
        "--svg",
        s2.to_str().unwrap(),
    ])
    .unwrap();
    let a = std::fs::read(&j1).unwrap();
    let b = std::fs::read(&j2).unwrap();
    assert_eq!(a, b, "JSON must be byte-identical");
    assert!(!a.is_empty());
    assert_eq!(
        std::fs::read(&s1).unwrap(),
        std::fs::read(&s2).unwrap(),
        "SVG must be byte-identical"
    );

    // Report JSON re-parses losslessly.
    let report: billiards_cli::report::Report = serde_json::from_slice(&a).expect("report parses");
    assert_eq!(report.to_canonical_json().into_bytes(), a);
}

#[test]
fn min_full_reports_square_diagonals() {
    let out = run(&["min", "triangle:0,0,1,0,0,1", "--full"]).unwrap();
    // Fast minimizer (the hypotenuse altitude) plus no extra ties: the legs
    // and hypotenuse are longer, so --full changes nothing here.
    assert!(out.contains("1 orbit(s), 0 band(s)"), "{out}");
}

#[test]
fn min_with_oracle_embeds_comparison() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    run(&[
        "min",
        "ngon:5@unit-circle",
        "--oracle",
        "--samples",
        "240",
        "--json",
        path.to_str().unwrap(),
    ])
    .unwrap();
    let report: billiards_cli::report::Report =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let oracle = report.oracle.expect("oracle section present");
    assert!(oracle.delta_vs_engine <= 1e-3);
    assert_eq!(oracle.samples, 240);
    assert!(!oracle.configs.is_empty());
}

#[test]
fn oracle_subcommand_reports_delta() {
    let out = run(&["oracle", "ngon:5@unit-circle", "--samples", "200"]).unwrap();
    assert!(out.contains("oracle ell ="), "{out}");
    assert!(out.contains("delta = "), "{out}");
}

#[test]
fn minkowski_subcommand_euclidean_reduction() {
    let out = run(&["minkowski", "ngon:5@unit-circle", "--gauge", "disc"]).unwrap();
    assert!(out.contains("ell_K = 3.61803398875"), "{out}");
}

#[test]
fn invalid_inputs_give_usage_errors() {
    for args in [
        vec!["min", "ngon:2@unit-circle"],
        vec!["min", "/nonexistent/table.json"],
        vec!["min", "triangle:0,0,1,0,2,0"],
        vec!["approx", "blob:1", "--eps", "0.1"],
        vec!["approx", "disc:1", "--eps=-0.5"],
        vec!["minkowski", "ngon:4@side=1", "--gauge", "lp:0.5"],
    ] {
        let err = run(&args).unwrap_err();
        assert_eq!(err.exit_code(), 1, "{args:?}");
    }
}

#[test]
fn binary_smoke_test_and_exit_codes() {
    let exe = env!("CARGO_BIN_EXE_billiards");

    let ok = Command::new(exe)
        .args(["capacity", "ngon:7@unit-circle"])
        .output()
        .unwrap();
    assert!(ok.status.success());
    let expect = 2.0 * (1.0 + (std::f64::consts::PI / 7.0).cos());
    let line = String::from_utf8(ok.stdout).unwrap();
    let val: f64 = line
        .trim()
        .strip_prefix("c_EHZ = ")
        .unwrap()
        .parse()
        .unwrap();
    assert!((val - expect).abs() < 1e-9);

    let usage = Command::new(exe)
        .args(["min", "ngon:1@unit-circle"])
        .output()
        .unwrap();
    assert_eq!(usage.status.code(), Some(1));
    let msg = String::from_utf8(usage.stderr).unwrap();
    assert_eq!(msg.lines().count(), 1, "single-line diagnostic: {msg}");

    // Unreachable accuracy: the direction cap trips and exits 2.
    let nonconv = Command::new(exe)
        .args(["approx", "disc:1", "--eps", "1e-14"])
        .output()
        .unwrap();
    assert_eq!(nonconv.status.code(), Some(2));
}
