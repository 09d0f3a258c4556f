//! Exact decision procedure for almost perfect numbers (`σ(n) = 2n - 1`)
//! through the abundancy index `I(n) = σ(n)/n`.
//!
//! A positive integer `n` is almost perfect exactly when
//!
//! ```text
//! 2n/(n+1) ≤ I(n) < (2n+1)/(n+1)
//! ```
//!
//! This crate evaluates that band, the weaker band `2n/(n+1) ≤ I(n) < 2`,
//! and the definition side by side with exact rational arithmetic, checks
//! their agreement over whole ranges, sieves σ in bulk for long scans, and
//! reports band margins for structured families of integers.
//!
//! ```
//! use almost_perfect::{abundancy_index, satisfies_theorem1_band, Natural, Ratio};
//!
//! let n = Natural::new(16)?;
//! assert_eq!(abundancy_index(n)?, Ratio::new(31, 16)?);
//! assert!(satisfies_theorem1_band(n)?);
//! # Ok::<(), almost_perfect::Error>(())
//! ```

pub mod abundancy;
pub mod cli;
pub mod criterion;
pub mod divisors;
pub mod error;
pub mod families;
pub mod natural;
mod parallel;
pub mod sieve;

pub use abundancy::{abundancy_index, deficiency, lower_bound, ratio_cmp, upper_bound, Ratio, SignedRatio};
pub use criterion::{
    classify, is_almost_perfect_sigma, satisfies_lemma1_band, satisfies_theorem1_band, verify_equivalence,
    verify_equivalence_with, BandRules, Classification, Counterexample, Edge, EquivalenceReport, Label, Verdict,
    VerifyOptions,
};
pub use divisors::{factorize, is_prime, sigma, sigma_from_factorization, Factorization, PrimePower};
pub use error::{Error, Result};
pub use families::{
    analyze, analyze_even_family, analyze_power_of_two, tightness_gaps, FailureSide, FamilyReport, Gaps,
};
pub use natural::Natural;
pub use sieve::{
    scan_almost_perfect, scan_almost_perfect_with, sigma_segment, Census, Checkpoint, ScanOptions, ScanReport,
    SegmentSieve, SigmaSegment,
};
