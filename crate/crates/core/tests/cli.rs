use std::path::Path;
use std::process::{Command, Output};

use almost_perfect::cli::{write_scan_summary, Format};
use almost_perfect::{scan_almost_perfect_with, ScanOptions};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_almost-perfect"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn assert_golden(args: &[&str], name: &str) {
    for jobs in ["1", "4"] {
        let mut full = args.to_vec();
        full.extend(["--jobs", jobs]);
        let out = bin(&full);
        assert_eq!(
            out.status.code(),
            Some(0),
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        assert_eq!(
            String::from_utf8(out.stdout).unwrap(),
            golden(name),
            "{args:?} --jobs {jobs}"
        );
    }
}

#[test]
fn golden_outputs() {
    assert_golden(&["check", "16", "--format", "machine"], "check_16.jsonl");
    assert_golden(&["check", "6", "--format", "human"], "check_6.txt");
    assert_golden(
        &["family", "--pow2", "0", "10", "--format", "machine"],
        "family_pow2_0_10.jsonl",
    );
    assert_golden(
        &[
            "family", "--m", "1", "--r-from", "3", "--r-to", "9", "--format", "human",
        ],
        "family_m1_r3_9.txt",
    );
    assert_golden(&["gaps", "1", "5", "--format", "machine"], "gaps_1_5.jsonl");
    assert_golden(&["scan", "1", "1000", "--format", "machine"], "scan_1_1000.jsonl");
    assert_golden(
        &["scan", "1", "1000", "--format", "human", "--segment-size", "64"],
        "scan_1_1000.txt",
    );
    assert_golden(&["verify", "1", "1000", "--format", "human"], "verify_1_1000.txt");
}

#[test]
fn piped_output_defaults_to_machine_format() {
    let out = bin(&["check", "16"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), golden("check_16.jsonl"));
}

#[test]
fn exit_codes() {
    assert_eq!(bin(&["check", "0"]).status.code(), Some(2));
    assert_eq!(bin(&["check", "-3"]).status.code(), Some(2));
    assert_eq!(bin(&["scan", "10", "1"]).status.code(), Some(2));
    assert_eq!(bin(&["verify", "1", "2"]).status.code(), Some(0));
    assert_eq!(bin(&["gaps", "0", "4"]).status.code(), Some(2));
    assert_eq!(bin(&[]).status.code(), Some(2));
}

#[test]
fn scan_resume_through_the_cli_matches_a_straight_run() {
    let dir = tempfile::tempdir().unwrap();
    let cp = dir.path().join("cp.toml");
    let cp_str = cp.to_str().unwrap();
    let args = ["scan", "1", "300000", "--segment-size", "4096", "--format", "machine"];

    let straight = bin(&args);
    assert_eq!(straight.status.code(), Some(0));

    // Interrupt after a few segments through the library, then let the CLI resume.
    let opts = ScanOptions {
        segment_size: 4096,
        jobs: 1,
        checkpoint: Some(cp.clone()),
        max_segments: Some(7),
    };
    let partial = scan_almost_perfect_with(1, 300_000, &opts, |_| {}).unwrap();
    assert!(!partial.is_complete());

    let mut resume_args = args.to_vec();
    resume_args.extend(["--checkpoint", cp_str, "--jobs", "3"]);
    let resumed = bin(&resume_args);
    assert_eq!(resumed.status.code(), Some(0));
    assert_eq!(resumed.stdout, straight.stdout);

    // A completed checkpoint replays the same report.
    let again = bin(&resume_args);
    assert_eq!(again.stdout, straight.stdout);

    // Different range, same file.
    let mismatch = bin(&["scan", "1", "400000", "--checkpoint", cp_str]);
    assert_eq!(mismatch.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&mismatch.stderr).contains("different scan"));

    std::fs::write(&cp, "format_version = 1\nscan_id = 7\n").unwrap();
    let corrupt = bin(&resume_args);
    assert_eq!(corrupt.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&corrupt.stderr).contains("corrupt checkpoint"));
}

#[test]
fn summary_rendering_is_stable() {
    let opts = ScanOptions {
        segment_size: 256,
        ..Default::default()
    };
    let report = scan_almost_perfect_with(1, 1000, &opts, |_| {}).unwrap();
    let mut out = Vec::new();
    write_scan_summary(&report, Format::Machine, &mut out).unwrap();
    assert_eq!(
        String::from_utf8(out).unwrap(),
        golden("scan_1_1000.jsonl").lines().last().unwrap().to_owned() + "\n"
    );
}
