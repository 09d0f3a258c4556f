//! Band analysis for structured families: powers of two, even numbers
//! `2^m * r` with `r` odd, and the exact gaps between `I(n)` and each band
//! edge.

use serde::Serialize;

use crate::abundancy::{abundancy_index, lower_bound, upper_bound, Ratio, SignedRatio};
use crate::error::{Error, Result};
use crate::natural::Natural;

/// Which band inequality fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FailureSide {
    BelowLower,
    AtOrAboveUpper,
}

impl FailureSide {
    pub fn as_str(self) -> &'static str {
        match self {
            FailureSide::BelowLower => "below_lower",
            FailureSide::AtOrAboveUpper => "at_or_above_upper",
        }
    }
}

/// Signed distances from `I(n)` to the band edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Gaps {
    /// `I(n) - 2n/(n+1)`
    pub low: SignedRatio,
    /// `(2n+1)/(n+1) - I(n)`
    pub high: SignedRatio,
}

impl Gaps {
    pub fn in_band(&self) -> bool {
        !self.low.is_negative() && self.high.is_positive()
    }

    /// The values the gaps take whenever `σ(n) = 2n - 1`:
    /// `((n-1)/(n(n+1)), 1/(n(n+1)))`.
    pub fn almost_perfect_closed_form(n: Natural) -> Gaps {
        let n = n.get() as u128;
        let den = n * (n + 1);
        Gaps {
            low: SignedRatio::new(false, n - 1, den),
            high: SignedRatio::new(false, 1, den),
        }
    }
}

pub fn tightness_gaps(n: Natural) -> Result<Gaps> {
    Ok(gaps_for(abundancy_index(n)?, lower_bound(n), upper_bound(n)))
}

fn gaps_for(index: Ratio, lower: Ratio, upper: Ratio) -> Gaps {
    Gaps {
        low: SignedRatio::difference(index, lower),
        high: SignedRatio::difference(upper, index),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FamilyReport {
    pub n: Natural,
    /// Exponent of 2 in `n`.
    pub m: u32,
    /// Odd part of `n`.
    pub r: u64,
    pub index: Ratio,
    pub lower: Ratio,
    pub upper: Ratio,
    pub in_band: bool,
    pub failure_side: Option<FailureSide>,
    pub gaps: Gaps,
}

/// Band report for any `n`, split as `2^m * r`.
pub fn analyze(n: Natural) -> Result<FamilyReport> {
    let m = n.get().trailing_zeros();
    let index = abundancy_index(n)?;
    let lower = lower_bound(n);
    let upper = upper_bound(n);
    let gaps = gaps_for(index, lower, upper);
    let failure_side = if gaps.low.is_negative() {
        Some(FailureSide::BelowLower)
    } else if !gaps.high.is_positive() {
        Some(FailureSide::AtOrAboveUpper)
    } else {
        None
    };
    Ok(FamilyReport {
        n,
        m,
        r: n.get() >> m,
        index,
        lower,
        upper,
        in_band: failure_side.is_none(),
        failure_side,
        gaps,
    })
}

pub const MAX_POWER_OF_TWO_EXPONENT: u32 = 61;

/// Report for `n = 2^k`, `0 ≤ k ≤ 61`.
pub fn analyze_power_of_two(k: u32) -> Result<FamilyReport> {
    if k > MAX_POWER_OF_TWO_EXPONENT {
        return Err(Error::InvalidArgument(format!(
            "exponent {k} is outside [0, {MAX_POWER_OF_TWO_EXPONENT}]"
        )));
    }
    analyze(Natural::new(1 << k)?)
}

/// Report for `n = 2^m * r` with `m ≥ 1` and `r` odd.
pub fn analyze_even_family(m: u32, r: u64) -> Result<FamilyReport> {
    if m == 0 {
        return Err(Error::InvalidArgument("m must be at least 1".into()));
    }
    if r.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!("r = {r} must be odd")));
    }
    let n = 1u64
        .checked_shl(m)
        .filter(|_| m < 64)
        .and_then(|p| p.checked_mul(r))
        .ok_or_else(|| Error::InvalidArgument(format!("2^{m} * {r} overflows")))?;
    analyze(Natural::new(n)?)
}
