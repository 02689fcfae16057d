//! Golden-file tests: every subcommand on the shipped fixtures.
//!
//! Set `UPDATE_GOLDEN=1` to rewrite the files under `tests/golden/`.

mod common;

use common::{golden_dir, root, run, BIN, CASES};
use std::process::Command;

#[test]
fn golden_outputs() {
    let dir = golden_dir();
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    for (name, args) in CASES {
        let first = run(args, "1");
        assert!(first.status.success(), "{name}: {}", String::from_utf8_lossy(&first.stderr));
        let second = run(args, "3");
        assert_eq!(first.stdout, second.stdout, "{name} differs between runs");
        let path = dir.join(format!("{name}.out"));
        if update {
            std::fs::write(&path, &first.stdout).unwrap();
        }
        let expected = std::fs::read(&path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
        assert!(expected == first.stdout, "{name} differs from {}", path.display());
    }
}

#[test]
fn kernel_example_value() {
    let out = run(&["kernel", "--space", "h", "--w", "1,0", "--s", "1,0"], "1");
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let re = v["value"][0].as_f64().unwrap();
    assert!((re - 1.644_934_066_8).abs() < 1e-9);
    assert_eq!(v["value"][1].as_f64(), Some(0.0));
}

#[test]
fn diagnose_example_separation() {
    let out = run(&["diagnose", "--space", "h2", "--points", "@geometric.json"], "1");
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!((v["separation"].as_f64().unwrap() - 1.0 / 3.0).abs() < 1e-15);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["bogus"][..],
        &["kernel", "--w", "1,0"],
        &["kernel", "--w", "1", "--s", "1,0"],
        &["gram", "--points", "@nodes.json", "--frobnicate"],
        &["kernel", "--space", "h_alpha", "--w", "1,0", "--s", "1,0"],
        &["kernel", "--space", "h2", "--alpha", "0.5", "--w", "1,0", "--s", "1,0"],
        &["kernel", "--format", "xml", "--w", "1,0", "--s", "1,0"],
    ] {
        let out = run(args, "1");
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty());
    }
    let out = Command::new(BIN).args(["kernel", "--w", "1,0", "--s", "1,0"]).env("DIRICHLET_RKHS_THREADS", "zero").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn computation_errors_exit_one_with_error_object() {
    let cases: &[(&[&str], &str)] = &[
        (&["kernel", "--w", "0.3,0", "--s", "1,0"], "DomainError"),
        (&["probe", "--space", "h2", "--s", "0.75,0"], "DomainError"),
        (&["gram", "--points", "/nonexistent/points.json"], "IoError"),
        (&["gram", "--points", "@targets.json"], "ParseError"),
        (&["interpolate", "--points", "@nodes.json", "--targets", "@geometric.json"], "SizeError"),
        (&["asymptotics", "--space", "h_alpha:1", "--tol", "1e-10", "--k-max", "40"], "DomainError"),
    ];
    for (args, name) in cases {
        let out = run(args, "1");
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        let err: serde_json::Value = serde_json::from_slice(&out.stderr)
            .unwrap_or_else(|_| panic!("{args:?}: {}", String::from_utf8_lossy(&out.stderr)));
        assert_eq!(err["error"], *name, "{args:?}: {err}");
        assert!(err["message"].as_str().is_some_and(|m| !m.is_empty()));
    }
}

#[test]
fn fixtures_round_trip() {
    for entry in std::fs::read_dir(root().join("fixtures")).unwrap() {
        let path = entry.unwrap().path();
        let text = std::fs::read_to_string(&path).unwrap();
        let parsed: Vec<[f64; 2]> = serde_json::from_str(&text).unwrap();
        let again: Vec<[f64; 2]> = serde_json::from_str(&serde_json::to_string(&parsed).unwrap()).unwrap();
        assert_eq!(parsed.len(), again.len());
        for (a, b) in parsed.iter().zip(&again) {
            assert_eq!(a[0].to_bits(), b[0].to_bits(), "{}", path.display());
            assert_eq!(a[1].to_bits(), b[1].to_bits(), "{}", path.display());
        }
    }
}
