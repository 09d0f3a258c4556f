// Flip the strictness of the band edges and watch the equivalence check
// catch it: a strict lower edge loses n = 1, an inclusive upper comparator
// admits the perfect numbers.

use std::error::Error;

use almost_perfect::{verify_equivalence_with, BandRules, Edge, VerifyOptions};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let mutants = [
        (
            "strict lower edge",
            BandRules {
                lower: Edge::Exclusive,
                ..BandRules::EXACT
            },
        ),
        (
            "inclusive upper comparator",
            BandRules::EXACT.with_upper_edges(Edge::Inclusive),
        ),
        (
            "inclusive (2n+1)/(n+1) edge only",
            BandRules {
                upper: Edge::Inclusive,
                ..BandRules::EXACT
            },
        ),
    ];
    for (name, rules) in mutants {
        let report = verify_equivalence_with(
            1,
            100_000,
            &VerifyOptions {
                rules,
                ..Default::default()
            },
        )?;
        let ns: Vec<u64> = report.counterexamples.iter().map(|c| c.n).collect();
        println!("{name}: {} counterexamples {ns:?}", report.disagreements);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
