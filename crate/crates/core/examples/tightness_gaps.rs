// Exact distances from I(n) to both band edges. Along powers of two they
// equal (n−1)/(n(n+1)) and 1/(n(n+1)), and the upper gap keeps shrinking.

use std::error::Error;

use almost_perfect::{tightness_gaps, Gaps, Natural};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let mut previous = None;
    for k in 0..=61 {
        let n = Natural::new(1 << k)?;
        let gaps = tightness_gaps(n)?;
        assert_eq!(gaps, Gaps::almost_perfect_closed_form(n));
        if let Some(prev) = previous {
            assert!(gaps.high < prev);
        }
        previous = Some(gaps.high);
        if k % 10 == 0 {
            println!(
                "n = 2^{k}: low {} high {} (~{:e})",
                gaps.low,
                gaps.high,
                gaps.high.approx()
            );
        }
    }

    for v in 1..8 {
        let g = tightness_gaps(Natural::new(v)?)?;
        println!(
            "n = {v}: low {:>6} high {:>6} in band {}",
            g.low.to_string(),
            g.high.to_string(),
            g.in_band()
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
