#![allow(dead_code)]

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

/// Fixed scenario suite: (name, subcommand, extra flags).
pub const SCENARIOS: &[(&str, &str, &[&str])] = &[
    ("jm_check_quarter", "jm-check", &[]),
    ("jm_check_sharp_orthogonal", "jm-check", &[]),
    ("jm_check_biased", "jm-check", &[]),
    ("oracle_quarter", "oracle", &[]),
    ("jm_scan_grid", "jm-scan", &[]),
    ("seq_scan_sweep", "seq-scan", &[]),
    ("spin_pom_hemisphere", "spin-pom", &["--seed", "7"]),
    ("spin_pom_cap", "spin-pom", &["--seed", "11"]),
    ("tomo_embed", "tomo", &[]),
    ("tomo_witness", "tomo", &[]),
    ("classical_misra", "classical", &[]),
];

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

pub fn expected_path(name: &str, subcommand: &str) -> PathBuf {
    let ext = if matches!(subcommand, "jm-scan" | "seq-scan") {
        "csv"
    } else {
        "out.json"
    };
    golden_dir().join(format!("{name}.{ext}"))
}

pub fn unsharp(args: &[&str], stdin: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_unsharp"));
    cmd.args(args).env_remove("UNSHARP_SEED");
    cmd.stdin(if stdin.is_some() { Stdio::piped() } else { Stdio::null() });
    cmd.stdout(Stdio::piped()).stderr(Stdio::piped());
    let mut child = cmd.spawn().expect("binary starts");
    if let Some(text) = stdin {
        child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    }
    child.wait_with_output().expect("binary finishes")
}

/// Runs one scenario and returns its stdout bytes.
pub fn run_scenario(name: &str, subcommand: &str, flags: &[&str]) -> Vec<u8> {
    let input = golden_dir().join(format!("{name}.json"));
    let input = input.to_str().unwrap();
    let mut args = vec![subcommand, "--input", input];
    args.extend_from_slice(flags);
    let out = unsharp(&args, None);
    assert!(
        out.status.success(),
        "{name} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    out.stdout
}
