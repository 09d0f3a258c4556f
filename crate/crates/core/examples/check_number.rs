// Classify a handful of integers and show where I(n) sits against the band
// 2n/(n+1) ≤ I(n) < (2n+1)/(n+1).
//
//     cargo run --example check_number -- 16 6 9 1024

use std::error::Error;

use almost_perfect::{abundancy_index, classify, lower_bound, satisfies_theorem1_band, upper_bound, Natural};

pub fn describe(value: u64) -> Result<String, Box<dyn Error>> {
    let n = Natural::new(value)?;
    let class = classify(n)?;
    Ok(format!(
        "n = {n}: sigma = {}, I(n) = {}, band [{}, {}), deficiency {} ({}), almost perfect: {}, in band: {}",
        class.sigma,
        abundancy_index(n)?,
        lower_bound(n),
        upper_bound(n),
        class.deficiency,
        class.label,
        class.almost_perfect,
        satisfies_theorem1_band(n)?,
    ))
}

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let args: Vec<u64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let values = if args.is_empty() {
        vec![1, 6, 9, 16, 28, 1024]
    } else {
        args
    };
    for v in values {
        println!("{}", describe(v)?);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
