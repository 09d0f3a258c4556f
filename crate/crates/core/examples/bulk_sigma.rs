// Bulk σ through the segmented sieve, cross-checked against per-number
// factorization.

use std::error::Error;

use almost_perfect::{factorize, sigma, sigma_segment, Natural};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let lo = 1_000_000_000_000u64;
    let segment = sigma_segment(lo, lo + 4096)?;
    for (n, s) in segment.iter().step_by(512) {
        let n = Natural::new(n)?;
        assert_eq!(s, sigma(n)?);
        println!("sigma({n}) = {s}  [{}]", factorize(n));
    }
    println!("{} values in [{}, {})", segment.len(), segment.lo(), segment.hi());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
