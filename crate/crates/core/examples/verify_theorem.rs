// Exhaustively compare the definition σ(n) = 2n − 1 with both abundancy
// bands over a range, in parallel.
//
//     cargo run --release --example verify_theorem -- 1000000 8

use std::error::Error;

use almost_perfect::{verify_equivalence_with, VerifyOptions};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let mut args = std::env::args().skip(1).filter_map(|a| a.parse::<u64>().ok());
    let hi = args.next().unwrap_or(100_000);
    let jobs = args.next().unwrap_or(4) as usize;

    let report = verify_equivalence_with(
        1,
        hi,
        &VerifyOptions {
            jobs,
            ..Default::default()
        },
    )?;
    println!(
        "[1, {hi}): checked {}, {} counterexamples",
        report.checked, report.disagreements
    );
    for c in &report.counterexamples {
        println!("  n = {} sigma = {} {:?}", c.n, c.sigma, c.verdict);
    }
    if !report.holds() {
        return Err("predicates disagree".into());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
