// Band reports for powers of two and for even numbers 2^m * r with an odd
// part r > 1, including which edge each out-of-band number violates.

use std::error::Error;

use almost_perfect::{analyze_even_family, analyze_power_of_two, FailureSide};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    for k in [0, 1, 4, 10, 40, 61] {
        let rep = analyze_power_of_two(k)?;
        assert!(rep.in_band);
        println!(
            "2^{k:<2} I = {:<45} gap to upper {}",
            rep.index.to_string(),
            rep.gaps.high
        );
    }

    for m in 1..=3 {
        let (mut above, mut below) = (0, 0);
        for r in (3..2000).step_by(2) {
            let rep = analyze_even_family(m, r)?;
            match rep.failure_side {
                Some(FailureSide::AtOrAboveUpper) => above += 1,
                Some(FailureSide::BelowLower) => below += 1,
                None => println!("2^{m} * {r} lies in the band"),
            }
        }
        println!("m = {m}: {above} at or above the upper edge, {below} below the lower edge");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
