// Sieve a range for almost perfect numbers, stop partway, and resume from
// the checkpoint file. The resumed report equals an uninterrupted one.

use std::error::Error;

use almost_perfect::{scan_almost_perfect, scan_almost_perfect_with, Checkpoint, ScanOptions};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let dir = tempfile::tempdir()?;
    let path = dir.path().join("scan.toml");
    let (lo, hi) = (1, 2_000_000);

    let opts = ScanOptions {
        segment_size: 1 << 16,
        jobs: 2,
        checkpoint: Some(path.clone()),
        max_segments: Some(10),
    };
    let partial = scan_almost_perfect_with(lo, hi, &opts, |_| {})?;
    println!(
        "stopped at {} with {} hits so far",
        partial.scanned_to,
        partial.found.len()
    );

    let saved = Checkpoint::load(&path)?.ok_or("checkpoint missing")?;
    println!("checkpoint next_lo = {}, tallies = {:?}", saved.next_lo, saved.counts);

    let resumed = scan_almost_perfect_with(
        lo,
        hi,
        &ScanOptions {
            max_segments: None,
            ..opts
        },
        |n| {
            println!("almost perfect: {n}");
        },
    )?;
    let straight = scan_almost_perfect(lo, hi, None)?;
    assert_eq!(resumed, straight);
    println!(
        "[{lo}, {hi}): {} hits; deficient {}, perfect {}, abundant {}",
        resumed.found.len(),
        resumed.census.deficient,
        resumed.census.perfect,
        resumed.census.abundant
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
