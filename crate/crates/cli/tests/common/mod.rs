//! Shared between the golden-file tests and the acceptance run.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub const BIN: &str = env!("CARGO_BIN_EXE_dirichlet-rkhs");

/// Every subcommand on the shipped fixtures; `@name` is a file under `fixtures/`.
pub const CASES: &[(&str, &[&str])] = &[
    ("kernel_h", &["kernel", "--space", "h", "--w", "1,0", "--s", "1,0"]),
    ("kernel_h_alpha_csv", &["kernel", "--space", "h_alpha", "--alpha", "-1", "--w", "0.8,1", "--s", "1.2,-0.5", "--format", "csv"]),
    ("kernel_d_alpha", &["kernel", "--space", "d_alpha:0.5", "--w", "0.8,1", "--s", "1.2,-0.5"]),
    ("gram_merging", &["gram", "--space", "h", "--points", "@merging.json"]),
    ("gram_geometric_csv", &["gram", "--space", "h2", "--points", "@geometric.json", "--format", "csv"]),
    ("diagnose_geometric_h2", &["diagnose", "--space", "h2", "--points", "@geometric.json"]),
    (
        "diagnose_equidistributed",
        &["diagnose", "--points", "@equidistributed.json", "--gershgorin", "0.1", "--equivalence"],
    ),
    ("diagnose_equidistributed_csv", &["diagnose", "--space", "h_alpha:0.5", "--points", "@equidistributed.json", "--format", "csv"]),
    ("interpolate_finite", &["interpolate", "--points", "@nodes.json", "--targets", "@targets.json", "--method", "finite"]),
    ("interpolate_min_norm_csv", &["interpolate", "--space", "h2", "--points", "@nodes.json", "--targets", "@targets.json", "--format", "csv"]),
    ("blaschke_nodes", &["blaschke", "--points", "@nodes.json", "--at", "2,0", "--at", "0.9,-3"]),
    ("asymptotics_alpha_minus_two", &["asymptotics", "--space", "h_alpha", "--alpha", "-2"]),
    ("asymptotics_alpha_one_csv", &["asymptotics", "--space", "h_alpha:1", "--format", "csv"]),
    ("embedding_line", &["embedding", "--count", "12", "--max-degree", "40", "--seed", "3"]),
    ("embedding_strip_csv", &["embedding", "--space", "h_alpha:0.5", "--count", "6", "--max-degree", "10", "--theta", "0,10", "--format", "csv"]),
    ("probe_easy", &["probe", "--s", "0.75,0", "--t-max", "500", "--target", "0.75"]),
    ("probe_miss_csv", &["probe", "--s", "1.5,0", "--t-max", "50", "--target", "0.99", "--format", "csv"]),
];

pub fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub fn run(args: &[&str], threads: &str) -> Output {
    let fixtures = root().join("fixtures");
    let args: Vec<String> = args
        .iter()
        .map(|a| match a.strip_prefix('@') {
            Some(name) => fixtures.join(name).to_string_lossy().into_owned(),
            None => a.to_string(),
        })
        .collect();
    Command::new(BIN).args(&args).env("DIRICHLET_RKHS_THREADS", threads).output().expect("binary runs")
}
