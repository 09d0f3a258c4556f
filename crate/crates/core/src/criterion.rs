//! The almost-perfect predicates and the exhaustive equivalence check.
//!
//! Three predicates are evaluated side by side for each `n`:
//!
//! * the definition, `σ(n) = 2n - 1`;
//! * the wide band `2n/(n+1) ≤ I(n) < 2` (`lemma1_band`);
//! * the tight band `2n/(n+1) ≤ I(n) < (2n+1)/(n+1)` (`theorem1_band`).
//!
//! All three must agree everywhere. The band edges are parameterised by
//! [`BandRules`] so that mutated strictness can be fed through the same
//! verifier as the real rules.

use std::cmp::Ordering;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::abundancy::{deficiency_from_sigma, lower_bound, upper_bound, Ratio};
use crate::divisors::sigma;
use crate::error::{Error, Result};
use crate::natural::{check_range, Natural};
use crate::parallel::with_jobs;

/// Maximum number of counterexamples kept in an [`EquivalenceReport`].
pub const COUNTEREXAMPLE_CAP: usize = 100;

/// Default cap on `hi - lo` for [`verify_equivalence`].
pub const DEFAULT_VERIFY_BUDGET: u64 = 100_000_000;

const VERIFY_CHUNK: u64 = 1 << 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Label {
    Deficient,
    Perfect,
    Abundant,
}

impl Label {
    pub fn from_deficiency(deficiency: i128) -> Self {
        match deficiency.cmp(&0) {
            Ordering::Greater => Label::Deficient,
            Ordering::Equal => Label::Perfect,
            Ordering::Less => Label::Abundant,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Label::Deficient => "deficient",
            Label::Perfect => "perfect",
            Label::Abundant => "abundant",
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classification {
    pub n: Natural,
    pub sigma: u64,
    pub deficiency: i128,
    pub label: Label,
    pub almost_perfect: bool,
}

impl Classification {
    pub fn from_sigma(n: Natural, sigma: u64) -> Self {
        let deficiency = deficiency_from_sigma(n.get(), sigma);
        Classification {
            n,
            sigma,
            deficiency,
            label: Label::from_deficiency(deficiency),
            almost_perfect: deficiency == 1,
        }
    }
}

pub fn classify(n: Natural) -> Result<Classification> {
    Ok(Classification::from_sigma(n, sigma(n)?))
}

/// Whether a band edge admits equality.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Edge {
    Inclusive,
    Exclusive,
}

/// Strictness of each band edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BandRules {
    /// Shared lower edge `2n/(n+1)` of both bands.
    pub lower: Edge,
    /// Upper edge `(2n+1)/(n+1)` of the tight band.
    pub upper: Edge,
    /// Upper edge `2` of the wide band.
    pub lemma1_upper: Edge,
}

impl BandRules {
    /// `≤` at the lower edge, `<` at both upper edges.
    pub const EXACT: BandRules = BandRules {
        lower: Edge::Inclusive,
        upper: Edge::Exclusive,
        lemma1_upper: Edge::Exclusive,
    };

    /// Sets the strictness of both upper edges at once, as a single upper
    /// comparator would.
    pub const fn with_upper_edges(self, edge: Edge) -> Self {
        BandRules {
            upper: edge,
            lemma1_upper: edge,
            ..self
        }
    }
}

impl Default for BandRules {
    fn default() -> Self {
        BandRules::EXACT
    }
}

fn below_upper(value: Ratio, bound: Ratio, edge: Edge) -> bool {
    match edge {
        Edge::Exclusive => value < bound,
        Edge::Inclusive => value <= bound,
    }
}

fn above_lower(value: Ratio, bound: Ratio, edge: Edge) -> bool {
    match edge {
        Edge::Inclusive => bound <= value,
        Edge::Exclusive => bound < value,
    }
}

/// The three predicate outcomes for one `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub definition: bool,
    pub lemma1_band: bool,
    pub theorem1_band: bool,
}

impl Verdict {
    pub fn from_sigma(n: Natural, sigma: u64, rules: BandRules) -> Self {
        let v = n.get();
        let index = Ratio::new(sigma, v).expect("n > 0");
        let above = above_lower(index, lower_bound(n), rules.lower);
        Verdict {
            definition: sigma as u128 + 1 == 2 * v as u128,
            lemma1_band: above && below_upper(index, Ratio::TWO, rules.lemma1_upper),
            theorem1_band: above && below_upper(index, upper_bound(n), rules.upper),
        }
    }

    pub fn agrees(self) -> bool {
        self.definition == self.lemma1_band && self.lemma1_band == self.theorem1_band
    }

    /// Name of the predicate in the minority when the three disagree.
    pub fn dissenting(self) -> Option<&'static str> {
        if self.agrees() {
            None
        } else if self.lemma1_band == self.theorem1_band {
            Some("definition")
        } else if self.definition == self.theorem1_band {
            Some("lemma1_band")
        } else {
            Some("theorem1_band")
        }
    }
}

/// `σ(n) = 2n - 1`.
pub fn is_almost_perfect_sigma(n: Natural) -> Result<bool> {
    Ok(Verdict::from_sigma(n, sigma(n)?, BandRules::EXACT).definition)
}

/// `2n/(n+1) ≤ I(n) < 2`.
pub fn satisfies_lemma1_band(n: Natural) -> Result<bool> {
    satisfies_lemma1_band_with(n, BandRules::EXACT)
}

pub fn satisfies_lemma1_band_with(n: Natural, rules: BandRules) -> Result<bool> {
    Ok(Verdict::from_sigma(n, sigma(n)?, rules).lemma1_band)
}

/// `2n/(n+1) ≤ I(n) < (2n+1)/(n+1)`.
pub fn satisfies_theorem1_band(n: Natural) -> Result<bool> {
    satisfies_theorem1_band_with(n, BandRules::EXACT)
}

pub fn satisfies_theorem1_band_with(n: Natural, rules: BandRules) -> Result<bool> {
    Ok(Verdict::from_sigma(n, sigma(n)?, rules).theorem1_band)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub n: u64,
    pub sigma: u64,
    #[serde(flatten)]
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub lo: Natural,
    pub hi: Natural,
    pub checked: u64,
    /// Ascending, at most [`COUNTEREXAMPLE_CAP`] entries.
    pub counterexamples: Vec<Counterexample>,
    /// Number of disagreeing `n`, including any past the cap.
    pub disagreements: u64,
}

impl EquivalenceReport {
    pub fn holds(&self) -> bool {
        self.disagreements == 0
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub jobs: usize,
    pub budget: u64,
    pub rules: BandRules,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            jobs: 1,
            budget: DEFAULT_VERIFY_BUDGET,
            rules: BandRules::EXACT,
        }
    }
}

/// Checks that the three predicates agree on every `n` in `[lo, hi)`.
pub fn verify_equivalence(lo: u64, hi: u64) -> Result<EquivalenceReport> {
    verify_equivalence_with(lo, hi, &VerifyOptions::default())
}

pub fn verify_equivalence_with(lo: u64, hi: u64, opts: &VerifyOptions) -> Result<EquivalenceReport> {
    let (lo_n, hi_n) = check_range(lo, hi)?;
    let requested = hi - lo;
    if requested > opts.budget {
        return Err(Error::BudgetExceeded {
            requested,
            budget: opts.budget,
        });
    }

    let rules = opts.rules;
    let chunks: Vec<(u64, u64)> = (lo..hi)
        .step_by(VERIFY_CHUNK as usize)
        .map(|start| (start, hi.min(start + VERIFY_CHUNK)))
        .collect();

    let partials: Vec<Result<(Vec<Counterexample>, u64)>> = with_jobs(opts.jobs, || {
        chunks
            .par_iter()
            .map(|&(start, end)| {
                let mut found = Vec::new();
                let mut count = 0u64;
                for v in start..end {
                    let n = Natural::new_unchecked(v);
                    let s = sigma(n)?;
                    let verdict = Verdict::from_sigma(n, s, rules);
                    if !verdict.agrees() {
                        count += 1;
                        if found.len() < COUNTEREXAMPLE_CAP {
                            found.push(Counterexample {
                                n: v,
                                sigma: s,
                                verdict,
                            });
                        }
                    }
                }
                Ok((found, count))
            })
            .collect()
    });

    let partials = partials.into_iter().collect::<Result<Vec<_>>>()?;
    let (counterexamples, disagreements) = merge_partials(partials);

    Ok(EquivalenceReport {
        lo: lo_n,
        hi: hi_n,
        checked: requested,
        counterexamples,
        disagreements,
    })
}

/// Concatenates per-chunk results, given in ascending chunk order, keeping
/// the first [`COUNTEREXAMPLE_CAP`] entries and the full count.
fn merge_partials(partials: Vec<(Vec<Counterexample>, u64)>) -> (Vec<Counterexample>, u64) {
    let mut counterexamples = Vec::new();
    let mut disagreements = 0;
    for (found, count) in partials {
        disagreements += count;
        let room = COUNTEREXAMPLE_CAP - counterexamples.len();
        counterexamples.extend(found.into_iter().take(room));
    }
    (counterexamples, disagreements)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nat(v: u64) -> Natural {
        Natural::new(v).unwrap()
    }

    #[test]
    fn definition_examples() {
        assert!(is_almost_perfect_sigma(nat(1)).unwrap());
        assert!(is_almost_perfect_sigma(nat(32)).unwrap());
        assert!(!is_almost_perfect_sigma(nat(10)).unwrap());
    }

    #[test]
    fn lemma1_band_examples() {
        assert!(satisfies_lemma1_band(nat(4)).unwrap());
        assert!(!satisfies_lemma1_band(nat(6)).unwrap());
        assert!(!satisfies_lemma1_band(nat(3)).unwrap());
    }

    #[test]
    fn theorem1_band_examples() {
        assert!(satisfies_theorem1_band(nat(16)).unwrap());
        assert!(satisfies_theorem1_band(nat(1)).unwrap());
        assert!(!satisfies_theorem1_band(nat(6)).unwrap());
    }

    #[test]
    fn classify_examples() {
        let c = classify(nat(8)).unwrap();
        assert_eq!((c.deficiency, c.label, c.almost_perfect), (1, Label::Deficient, true));
        let c = classify(nat(28)).unwrap();
        assert_eq!((c.deficiency, c.label, c.almost_perfect), (0, Label::Perfect, false));
        let c = classify(nat(9)).unwrap();
        assert_eq!(
            (c.sigma, c.deficiency, c.label, c.almost_perfect),
            (13, 5, Label::Deficient, false)
        );
        assert_eq!(classify(nat(12)).unwrap().label, Label::Abundant);
    }

    #[test]
    fn verify_small_ranges() {
        let r = verify_equivalence(1, 2).unwrap();
        assert_eq!(r.checked, 1);
        assert!(r.counterexamples.is_empty());

        let r = verify_equivalence(1, 10_000).unwrap();
        assert_eq!(r.checked, 9_999);
        assert!(r.holds());

        let r = verify_equivalence(1_000_000, 1_001_000).unwrap();
        assert_eq!(r.checked, 1_000);
        assert!(r.holds());
    }

    #[test]
    fn verify_rejects_bad_ranges_and_budget() {
        assert!(matches!(verify_equivalence(0, 5), Err(Error::Domain { .. })));
        assert!(matches!(verify_equivalence(5, 5), Err(Error::InvalidRange { .. })));
        let opts = VerifyOptions {
            budget: 10,
            ..Default::default()
        };
        assert!(matches!(
            verify_equivalence_with(1, 100, &opts),
            Err(Error::BudgetExceeded {
                requested: 99,
                budget: 10
            })
        ));
    }

    #[test]
    fn strict_lower_edge_is_caught_at_one() {
        let opts = VerifyOptions {
            rules: BandRules {
                lower: Edge::Exclusive,
                ..BandRules::EXACT
            },
            ..Default::default()
        };
        let r = verify_equivalence_with(1, 10_000, &opts).unwrap();
        assert_eq!(r.disagreements, 1);
        assert_eq!(r.counterexamples[0].n, 1);
        assert!(r.counterexamples[0].verdict.definition);
        assert_eq!(r.counterexamples[0].verdict.dissenting(), Some("definition"));
    }

    #[test]
    fn inclusive_upper_comparator_is_caught_at_six() {
        let opts = VerifyOptions {
            rules: BandRules::EXACT.with_upper_edges(Edge::Inclusive),
            ..Default::default()
        };
        let r = verify_equivalence_with(1, 10_000, &opts).unwrap();
        let ns: Vec<u64> = r.counterexamples.iter().map(|c| c.n).collect();
        assert_eq!(ns, vec![6, 28, 496, 8128]);
        assert_eq!(r.counterexamples[0].verdict.dissenting(), Some("lemma1_band"));
    }

    #[test]
    fn inclusive_theorem1_upper_alone_changes_nothing() {
        // Equality at (2n+1)/(n+1) would need (n+1) | 1.
        let opts = VerifyOptions {
            rules: BandRules {
                upper: Edge::Inclusive,
                ..BandRules::EXACT
            },
            ..Default::default()
        };
        assert!(verify_equivalence_with(1, 10_000, &opts).unwrap().holds());
    }

    #[test]
    fn counterexamples_are_capped_but_counted() {
        let fake = |n| Counterexample {
            n,
            sigma: 0,
            verdict: Verdict {
                definition: true,
                lemma1_band: false,
                theorem1_band: false,
            },
        };
        let partials = (0..5u64)
            .map(|chunk| ((chunk * 60..chunk * 60 + 60).map(fake).collect(), 60))
            .collect();
        let (kept, total) = merge_partials(partials);
        assert_eq!(total, 300);
        assert_eq!(kept.len(), COUNTEREXAMPLE_CAP);
        assert!(kept.windows(2).all(|w| w[0].n < w[1].n));
        assert_eq!(kept.last().unwrap().n, 99);
    }

    #[test]
    fn jobs_do_not_change_the_report() {
        let opts = |jobs| VerifyOptions {
            jobs,
            rules: BandRules::EXACT.with_upper_edges(Edge::Inclusive),
            ..Default::default()
        };
        let one = verify_equivalence_with(1, 200_000, &opts(1)).unwrap();
        let many = verify_equivalence_with(1, 200_000, &opts(6)).unwrap();
        assert_eq!(one, many);
    }
}
