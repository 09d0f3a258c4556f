//! Exact rationals for the abundancy index `I(n) = σ(n)/n` and the two band
//! edges `2n/(n+1)` and `(2n+1)/(n+1)`.
//!
//! Every value is stored in lowest terms, so equality is structural. Ordering
//! cross-multiplies in 128 bits, which cannot overflow for 64-bit operands.

use std::cmp::Ordering;
use std::fmt;

use crate::divisors::sigma;
use crate::error::{Error, Result};
use crate::natural::Natural;

/// A non-negative rational `numerator / denominator` in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Ratio {
    num: u64,
    den: u64,
}

impl Ratio {
    pub const ZERO: Ratio = Ratio { num: 0, den: 1 };
    pub const ONE: Ratio = Ratio { num: 1, den: 1 };
    pub const TWO: Ratio = Ratio { num: 2, den: 1 };

    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidArgument("ratio denominator must be positive".into()));
        }
        let g = gcd_u64(num, den);
        Ok(Ratio {
            num: num / g,
            den: den / g,
        })
    }

    pub const fn numerator(self) -> u64 {
        self.num
    }

    pub const fn denominator(self) -> u64 {
        self.den
    }

    /// Display-only approximation.
    pub fn approx(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl Ord for Ratio {
    fn cmp(&self, other: &Self) -> Ordering {
        ratio_cmp(*self, *other)
    }
}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Three-way exact comparison of `a` and `b`.
pub fn ratio_cmp(a: Ratio, b: Ratio) -> Ordering {
    let lhs = a.num as u128 * b.den as u128;
    let rhs = b.num as u128 * a.den as u128;
    lhs.cmp(&rhs)
}

/// A signed rational in lowest terms, wide enough to hold the difference of
/// two [`Ratio`]s exactly. Zero is never negative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignedRatio {
    negative: bool,
    num: u128,
    den: u128,
}

impl SignedRatio {
    pub const ZERO: SignedRatio = SignedRatio {
        negative: false,
        num: 0,
        den: 1,
    };

    /// Builds `±num/den`; panics if `den` is zero.
    pub fn new(negative: bool, num: u128, den: u128) -> Self {
        assert!(den != 0, "zero denominator");
        let g = gcd_u128(num, den);
        SignedRatio {
            negative: negative && num != 0,
            num: num / g,
            den: den / g,
        }
    }

    /// `a - b`, exactly.
    pub fn difference(a: Ratio, b: Ratio) -> Self {
        // Each cross product is below 2^128 since both factors are u64.
        let lhs = a.num as u128 * b.den as u128;
        let rhs = b.num as u128 * a.den as u128;
        let den = a.den as u128 * b.den as u128;
        if lhs >= rhs {
            SignedRatio::new(false, lhs - rhs, den)
        } else {
            SignedRatio::new(true, rhs - lhs, den)
        }
    }

    pub const fn is_negative(self) -> bool {
        self.negative
    }

    pub fn is_zero(self) -> bool {
        self.num == 0
    }

    pub fn is_positive(self) -> bool {
        !self.negative && self.num != 0
    }

    pub fn signum(self) -> Ordering {
        match (self.negative, self.num) {
            (_, 0) => Ordering::Equal,
            (true, _) => Ordering::Less,
            (false, _) => Ordering::Greater,
        }
    }

    pub const fn magnitude_numerator(self) -> u128 {
        self.num
    }

    pub const fn denominator(self) -> u128 {
        self.den
    }

    pub fn approx(self) -> f64 {
        let v = self.num as f64 / self.den as f64;
        if self.negative {
            -v
        } else {
            v
        }
    }
}

impl Ord for SignedRatio {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.signum(), other.signum()) {
            (a, b) if a != b => a.cmp(&b),
            (Ordering::Equal, _) => Ordering::Equal,
            (Ordering::Greater, _) => cmp_magnitudes(self.num, self.den, other.num, other.den),
            (Ordering::Less, _) => cmp_magnitudes(other.num, other.den, self.num, self.den),
        }
    }
}

impl PartialOrd for SignedRatio {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Ratio> for SignedRatio {
    fn from(r: Ratio) -> Self {
        SignedRatio {
            negative: false,
            num: r.num.into(),
            den: r.den.into(),
        }
    }
}

impl fmt::Display for SignedRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negative {
            f.write_str("-")?;
        }
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Compares `a/b` with `c/d` (all non-negative, `b, d > 0`) by walking the
/// continued-fraction expansions, so no product is ever formed.
fn cmp_magnitudes(mut a: u128, mut b: u128, mut c: u128, mut d: u128) -> Ordering {
    let mut flipped = false;
    loop {
        let (qa, ra) = (a / b, a % b);
        let (qc, rc) = (c / d, c % d);
        let ord = match qa.cmp(&qc) {
            Ordering::Equal => match (ra == 0, rc == 0) {
                (true, true) => Ordering::Equal,
                (true, false) => Ordering::Less,
                (false, true) => Ordering::Greater,
                (false, false) => {
                    // ra/b vs rc/d is the reverse of b/ra vs d/rc
                    (a, b, c, d) = (b, ra, d, rc);
                    flipped = !flipped;
                    continue;
                }
            },
            ord => ord,
        };
        return if flipped { ord.reverse() } else { ord };
    }
}

/// `I(n) = σ(n)/n` in lowest terms.
pub fn abundancy_index(n: Natural) -> Result<Ratio> {
    Ratio::new(sigma(n)?, n.get())
}

/// `2n/(n+1)`, the inclusive lower edge of the band.
pub fn lower_bound(n: Natural) -> Ratio {
    let n = n.get();
    Ratio::new(2 * n, n + 1).expect("n + 1 > 0")
}

/// `(2n+1)/(n+1)`, the exclusive upper edge of the band. Always already in
/// lowest terms, since any common factor divides `2(n+1) - (2n+1) = 1`.
pub fn upper_bound(n: Natural) -> Ratio {
    let n = n.get();
    Ratio {
        num: 2 * n + 1,
        den: n + 1,
    }
}

/// `2n - σ(n)`: positive for deficient `n`, zero for perfect, negative for
/// abundant. Exactly 1 for almost perfect numbers.
pub fn deficiency(n: Natural) -> Result<i128> {
    Ok(deficiency_from_sigma(n.get(), sigma(n)?))
}

pub(crate) fn deficiency_from_sigma(n: u64, sigma: u64) -> i128 {
    2 * n as i128 - sigma as i128
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nat(v: u64) -> Natural {
        Natural::new(v).unwrap()
    }

    fn r(num: u64, den: u64) -> Ratio {
        Ratio::new(num, den).unwrap()
    }

    #[test]
    fn ratio_reduces_on_construction() {
        assert_eq!(r(6, 4), r(3, 2));
        assert_eq!(r(6, 4).numerator(), 3);
        assert_eq!(r(0, 7), Ratio::ZERO);
        assert!(Ratio::new(1, 0).is_err());
    }

    #[test]
    fn abundancy_index_examples() {
        assert_eq!(abundancy_index(nat(1)).unwrap(), r(1, 1));
        assert_eq!(abundancy_index(nat(6)).unwrap(), r(2, 1));
        assert_eq!(abundancy_index(nat(16)).unwrap(), r(31, 16));
    }

    #[test]
    fn bound_examples() {
        assert_eq!(lower_bound(nat(1)), r(1, 1));
        assert_eq!(lower_bound(nat(16)), r(32, 17));
        assert_eq!(lower_bound(nat(3)), r(3, 2));
        assert_eq!(upper_bound(nat(1)), r(3, 2));
        assert_eq!(upper_bound(nat(16)), r(33, 17));
        assert_eq!(upper_bound(nat(6)), r(13, 7));
    }

    #[test]
    fn ratio_cmp_examples() {
        assert_eq!(ratio_cmp(r(31, 16), r(32, 17)), Ordering::Greater);
        assert_eq!(ratio_cmp(r(31, 16), r(33, 17)), Ordering::Less);
        assert_eq!(ratio_cmp(r(2, 1), r(2, 1)), Ordering::Equal);
        let big = u64::MAX;
        assert_eq!(ratio_cmp(r(big, big - 1), r(big - 1, big - 2)), Ordering::Less);
    }

    #[test]
    fn deficiency_examples() {
        assert_eq!(deficiency(nat(4)).unwrap(), 1);
        assert_eq!(deficiency(nat(6)).unwrap(), 0);
        assert_eq!(deficiency(nat(12)).unwrap(), -4);
    }

    #[test]
    fn bounds_at_the_domain_cap() {
        let n = Natural::MAX;
        assert!(lower_bound(n) < upper_bound(n));
        assert!(upper_bound(n) < Ratio::TWO);
    }

    #[test]
    fn signed_difference() {
        assert_eq!(
            SignedRatio::difference(r(2, 1), r(12, 7)),
            SignedRatio::new(false, 2, 7)
        );
        assert_eq!(SignedRatio::difference(r(13, 7), r(2, 1)), SignedRatio::new(true, 1, 7));
        assert_eq!(SignedRatio::difference(r(1, 1), r(1, 1)), SignedRatio::ZERO);
        assert!(!SignedRatio::new(true, 0, 5).is_negative());
        assert_eq!(SignedRatio::new(true, 1, 7).to_string(), "-1/7");
    }

    #[test]
    fn signed_ordering_without_overflow() {
        let tiny = |n: u128| SignedRatio::new(false, 1, n * (n + 1));
        let a = tiny(1 << 62);
        let b = tiny(1 << 61);
        assert!(a < b);
        assert!(SignedRatio::new(true, 1, 3) < SignedRatio::new(true, 1, 4));
        assert!(SignedRatio::new(true, 1, 3) < SignedRatio::ZERO);
        assert_eq!(
            SignedRatio::new(false, u128::MAX - 1, u128::MAX).cmp(&SignedRatio::new(
                false,
                u128::MAX - 2,
                u128::MAX - 1
            )),
            Ordering::Greater
        );
    }
}
