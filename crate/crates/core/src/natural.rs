use std::fmt;

use crate::error::{Error, Result};

/// A positive integer in `[1, 2^62]`.
///
/// The cap leaves enough headroom that every intermediate product used by
/// the band comparisons fits in 128 bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Natural(u64);

impl Natural {
    pub const ONE: Natural = Natural(1);
    pub const MAX_VALUE: u64 = 1 << 62;
    pub const MAX: Natural = Natural(Self::MAX_VALUE);

    pub fn new(value: u64) -> Result<Self> {
        if value == 0 || value > Self::MAX_VALUE {
            return Err(Error::Domain { value: value.into() });
        }
        Ok(Natural(value))
    }

    /// Constructs from a value the caller has already range-checked.
    pub(crate) const fn new_unchecked(value: u64) -> Self {
        debug_assert!(value >= 1 && value <= Self::MAX_VALUE);
        Natural(value)
    }

    pub const fn get(self) -> u64 {
        self.0
    }
}

impl TryFrom<u64> for Natural {
    type Error = Error;

    fn try_from(value: u64) -> Result<Self> {
        Natural::new(value)
    }
}

impl From<Natural> for u64 {
    fn from(n: Natural) -> u64 {
        n.0
    }
}

impl fmt::Display for Natural {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Checks a half-open range `[lo, hi)` against the domain.
pub(crate) fn check_range(lo: u64, hi: u64) -> Result<(Natural, Natural)> {
    let lo_n = Natural::new(lo)?;
    let hi_n = Natural::new(hi)?;
    if lo >= hi {
        return Err(Error::InvalidRange {
            lo,
            hi,
            reason: "lo must be less than hi",
        });
    }
    Ok((lo_n, hi_n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_zero_and_values_past_cap() {
        assert!(matches!(Natural::new(0), Err(Error::Domain { value: 0 })));
        assert!(Natural::new(Natural::MAX_VALUE + 1).is_err());
        assert!(Natural::new(u64::MAX).is_err());
        assert_eq!(Natural::new(Natural::MAX_VALUE).unwrap(), Natural::MAX);
        assert_eq!(Natural::new(1).unwrap(), Natural::ONE);
    }

    #[test]
    fn range_must_be_nonempty() {
        assert!(check_range(1, 2).is_ok());
        assert!(check_range(5, 5).is_err());
        assert!(check_range(6, 5).is_err());
        assert!(check_range(0, 5).is_err());
    }
}
