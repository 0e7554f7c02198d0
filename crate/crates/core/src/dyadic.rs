//! Exact arithmetic on dyadic points and intervals.
//!
//! Points are nonnegative dyadic rationals `n·2^{-q}` kept in canonical
//! form; intervals are the half-open cells `I(j, k) = [k·2^{-j}, (k+1)·2^{-j})`.
//! Everything here is integer arithmetic — no floating point touches the
//! membership, ancestry, or metric computations, so boundary points always
//! classify to the correct (right-hand) cell.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest admissible scale `q` in `n·2^{-q}`.
pub const MAX_SCALE: u32 = 32;
/// Points must satisfy `value < 2^MAX_INTEGER_BITS`.
pub const MAX_INTEGER_BITS: u32 = 32;

/// A nonnegative dyadic rational `numerator·2^{-scale}`, canonical:
/// the numerator is odd or the scale is zero.
///
/// Values are bounded by `2^32` and scales by 32 so that every derived
/// quantity (common-scale comparisons, cell positions) fits in machine
/// words; constructors return [`Error::Overflow`] past those limits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DyadicPoint {
    numerator: u64,
    scale: u32,
}

impl DyadicPoint {
    /// Canonicalizes `numerator·2^{-scale}` and checks the word bounds.
    pub fn new(mut numerator: u64, mut scale: u32) -> Result<Self> {
        while scale > 0 && numerator % 2 == 0 {
            numerator /= 2;
            scale -= 1;
        }
        if numerator == 0 {
            scale = 0;
        }
        if scale > MAX_SCALE {
            return Err(Error::Overflow("scale exceeds 2^-32 resolution"));
        }
        if (numerator as u128) >= (1u128 << (scale + MAX_INTEGER_BITS)) {
            return Err(Error::Overflow("point value exceeds 2^32"));
        }
        Ok(Self { numerator, scale })
    }

    pub fn zero() -> Self {
        Self { numerator: 0, scale: 0 }
    }

    pub fn numerator(&self) -> u64 {
        self.numerator
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    pub fn is_zero(&self) -> bool {
        self.numerator == 0
    }

    pub fn to_f64(&self) -> f64 {
        self.numerator as f64 * (-(self.scale as f64)).exp2()
    }

    /// The point `2x`.
    pub fn double(&self) -> Result<Self> {
        if self.scale > 0 {
            Ok(Self { numerator: self.numerator, scale: self.scale - 1 })
        } else {
            Self::new(
                self.numerator
                    .checked_mul(2)
                    .ok_or(Error::Overflow("doubling the numerator"))?,
                0,
            )
        }
    }

    /// The point `x/2`.
    pub fn halve(&self) -> Result<Self> {
        if self.numerator % 2 == 0 {
            Ok(Self { numerator: self.numerator / 2, scale: self.scale })
        } else {
            Self::new(self.numerator, self.scale + 1)
        }
    }

    /// Numerator after rescaling to the common scale `q >= self.scale`.
    fn at_scale(&self, q: u32) -> u128 {
        (self.numerator as u128) << (q - self.scale)
    }

    /// The unique level-`j` dyadic cell containing this point.
    pub fn cell_at(&self, level: i32) -> Result<DyadicInterval> {
        let position = cell_index(self.numerator as u128, self.scale, level)
            .ok_or(Error::Overflow("cell position exceeds u64"))?;
        let position =
            u64::try_from(position).map_err(|_| Error::Overflow("cell position exceeds u64"))?;
        Ok(DyadicInterval { level, position })
    }

    /// The smallest dyadic interval containing both points.
    ///
    /// The two points land in different halves of the result, which is
    /// exactly the minimality of `I(x, y)`.
    pub fn common_interval(&self, other: &Self) -> Result<DyadicInterval> {
        if self == other {
            return Err(Error::EqualPoints);
        }
        let q = self.scale.max(other.scale);
        let a = self.at_scale(q);
        let b = other.at_scale(q);
        // Prefixes agree exactly above the highest differing bit.
        let shift = 128 - (a ^ b).leading_zeros();
        let level = q as i32 - shift as i32;
        let position = if shift >= 128 { 0 } else { a >> shift };
        // a, b < 2^(q + 32) and shift >= 1, so the position fits u64.
        Ok(DyadicInterval { level, position: position as u64 })
    }

    /// The dyadic ultrametric `δ(x, y) = |I(x, y)|`, with `δ(x, x) = 0`.
    pub fn delta(&self, other: &Self) -> Delta {
        match self.common_interval(other) {
            Ok(interval) => Delta::Pow2(-interval.level()),
            Err(_) => Delta::Zero,
        }
    }

    /// The (Γ_k, Λ_j) label of the ordered pair `(self, other)`.
    ///
    /// Every butterfly `B(I(j, k))` is dyadically equivalent to
    /// `B([k, k+1))`, so the class index is the position of `I(x, y)` and
    /// the level index is its level.
    pub fn classify(&self, other: &Self) -> Result<ButterflyClass> {
        let interval = self.common_interval(other)?;
        Ok(ButterflyClass {
            class_index: interval.position,
            level_index: interval.level,
        })
    }
}

/// Level-`j` cell index of the point `n·2^{-q}`, i.e. `floor(x·2^j)`.
/// `None` when the index exceeds 128 bits.
fn cell_index(numerator: u128, scale: u32, level: i32) -> Option<u128> {
    let shift = level as i64 - scale as i64;
    if shift >= 0 {
        if shift >= 128 || numerator.leading_zeros() < shift as u32 {
            return None;
        }
        Some(numerator << shift)
    } else if -shift >= 128 {
        Some(0)
    } else {
        Some(numerator >> (-shift) as u32)
    }
}

impl fmt::Display for DyadicPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2^{}", self.numerator, self.scale)
    }
}

impl FromStr for DyadicPoint {
    type Err = Error;

    /// Accepts the canonical `"n/2^q"` form and the integer shorthand `"n"`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::ParsePoint(s.to_string());
        let s = s.trim();
        match s.split_once('/') {
            None => {
                let n = s.parse::<u64>().map_err(|_| bad())?;
                Self::new(n, 0)
            }
            Some((num, den)) => {
                let n = num.trim().parse::<u64>().map_err(|_| bad())?;
                let q = den
                    .trim()
                    .strip_prefix("2^")
                    .ok_or_else(bad)?
                    .parse::<u32>()
                    .map_err(|_| bad())?;
                Self::new(n, q)
            }
        }
    }
}

impl Serialize for DyadicPoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for DyadicPoint {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The half-open dyadic interval `[k·2^{-j}, (k+1)·2^{-j})`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DyadicInterval {
    #[serde(rename = "j")]
    level: i32,
    #[serde(rename = "k")]
    position: u64,
}

impl DyadicInterval {
    pub fn new(level: i32, position: u64) -> Self {
        Self { level, position }
    }

    pub fn level(&self) -> i32 {
        self.level
    }

    pub fn position(&self) -> u64 {
        self.position
    }

    /// `|I| = 2^{-j}`, exactly representable for the levels in use.
    pub fn measure(&self) -> f64 {
        (-(self.level as f64)).exp2()
    }

    /// The `l`-th ancestor: level `j - l`, position `floor(k / 2^l)`.
    pub fn ancestor(&self, generations: u32) -> Result<Self> {
        let level = self
            .level
            .checked_sub_unsigned(generations)
            .ok_or(Error::Overflow("ancestor level underflows i32"))?;
        let position = if generations >= 64 { 0 } else { self.position >> generations };
        Ok(Self { level, position })
    }

    /// The dilation `2^l · I`: level `j - l`, same position.
    pub fn dilate(&self, exponent: i32) -> Result<Self> {
        let level = self
            .level
            .checked_sub(exponent)
            .ok_or(Error::Overflow("dilated level leaves i32"))?;
        Ok(Self { level, position: self.position })
    }

    /// Half-open membership; boundary points belong to the right-hand cell.
    pub fn contains(&self, point: &DyadicPoint) -> bool {
        match cell_index(point.numerator as u128, point.scale, self.level) {
            Some(index) => index == self.position as u128,
            None => false,
        }
    }

    /// Left endpoint `k·2^{-j}` as a point.
    pub fn left_endpoint(&self) -> Result<DyadicPoint> {
        if self.level >= 0 {
            DyadicPoint::new(self.position, self.level as u32)
        } else {
            let shift = (-self.level) as u32;
            if shift >= 64 || self.position.leading_zeros() < shift {
                return Err(Error::Overflow("left endpoint numerator exceeds u64"));
            }
            DyadicPoint::new(self.position << shift, 0)
        }
    }

    /// The two halves `(I⁺, I⁻)`; the labelling carries no meaning beyond
    /// "left" and "right".
    pub fn halves(&self) -> (Self, Self) {
        let level = self.level + 1;
        let k = 2 * self.position;
        (Self { level, position: k }, Self { level, position: k + 1 })
    }
}

impl fmt::Display for DyadicInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "I({}, {})", self.level, self.position)
    }
}

/// Exact value of the dyadic metric: zero or an integer power of two.
///
/// The derived ordering is the numeric one: `Zero` below every power, and
/// powers ordered by exponent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Delta {
    Zero,
    /// The value `2^exponent`.
    Pow2(i32),
}

impl Delta {
    pub fn is_zero(&self) -> bool {
        matches!(self, Delta::Zero)
    }

    /// `log2` of the value, if nonzero.
    pub fn exponent(&self) -> Option<i32> {
        match self {
            Delta::Zero => None,
            Delta::Pow2(e) => Some(*e),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Delta::Zero => 0.0,
            Delta::Pow2(e) => (*e as f64).exp2(),
        }
    }

    /// The doubled distance, used for the `2δ(x, x') <= δ(x, y)` tests.
    pub fn doubled(&self) -> Delta {
        match self {
            Delta::Zero => Delta::Zero,
            Delta::Pow2(e) => Delta::Pow2(e + 1),
        }
    }
}

impl fmt::Display for Delta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Delta::Zero => write!(f, "0/2^0"),
            Delta::Pow2(e) if *e >= 0 => write!(f, "{}/2^0", 1u128 << e.min(&127)),
            Delta::Pow2(e) => write!(f, "1/2^{}", -e),
        }
    }
}

/// The (Γ_k, Λ_j) label of an off-diagonal pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ButterflyClass {
    pub class_index: u64,
    pub level_index: i32,
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pt(n: u64, q: u32) -> DyadicPoint {
        DyadicPoint::new(n, q).unwrap()
    }

    #[test]
    fn canonical_form() {
        assert_eq!(pt(4, 2), pt(1, 0));
        assert_eq!(pt(6, 1), pt(3, 0));
        assert_eq!(pt(0, 7), DyadicPoint::zero());
        assert_eq!(pt(3, 3).numerator(), 3);
        assert_eq!(pt(3, 3).scale(), 3);
    }

    #[test]
    fn bounds_are_enforced() {
        assert!(matches!(DyadicPoint::new(1, 40), Err(Error::Overflow(_))));
        assert!(matches!(DyadicPoint::new(u64::MAX, 0), Err(Error::Overflow(_))));
        // 2^32 - 1 is fine, 2^32 is not.
        assert!(DyadicPoint::new((1 << 32) - 1, 0).is_ok());
        assert!(DyadicPoint::new(1 << 32, 0).is_err());
    }

    #[test]
    fn cell_at_examples() {
        assert_eq!(DyadicPoint::zero().cell_at(3).unwrap(), DyadicInterval::new(3, 0));
        assert_eq!(pt(3, 3).cell_at(1).unwrap(), DyadicInterval::new(1, 0));
        // 3/8 is the left endpoint of I(3, 3); half-open puts it in the right cell.
        assert_eq!(pt(3, 3).cell_at(3).unwrap(), DyadicInterval::new(3, 3));
    }

    #[test]
    fn ancestor_examples() {
        let i23 = DyadicInterval::new(2, 3);
        assert_eq!(i23.ancestor(1).unwrap(), DyadicInterval::new(1, 1));
        assert_eq!(i23.ancestor(2).unwrap(), DyadicInterval::new(0, 0));
        assert_eq!(DyadicInterval::new(3, 5).ancestor(1).unwrap(), DyadicInterval::new(2, 2));
    }

    #[test]
    fn dilate_examples() {
        let i23 = DyadicInterval::new(2, 3);
        assert_eq!(i23.dilate(1).unwrap(), DyadicInterval::new(1, 3));
        assert_eq!(DyadicInterval::new(1, 1).dilate(-1).unwrap(), DyadicInterval::new(2, 1));
        // Duplication by dilation and by ancestry agree exactly at position 0.
        let left = DyadicInterval::new(5, 0);
        assert_eq!(left.dilate(1).unwrap(), left.ancestor(1).unwrap());
        let off = DyadicInterval::new(5, 3);
        assert_ne!(off.dilate(1).unwrap(), off.ancestor(1).unwrap());
    }

    #[test]
    fn common_interval_examples() {
        let i = pt(1, 3).common_interval(&pt(3, 3)).unwrap();
        assert_eq!(i, DyadicInterval::new(1, 0));
        let i = pt(3, 1).common_interval(&pt(3, 2)).unwrap();
        assert_eq!(i, DyadicInterval::new(-1, 0));
        let i = pt(5, 3).common_interval(&pt(7, 3)).unwrap();
        assert_eq!(i, DyadicInterval::new(1, 1));
        assert_eq!(pt(5, 3).common_interval(&pt(5, 3)), Err(Error::EqualPoints));
    }

    #[test]
    fn delta_examples() {
        assert_eq!(pt(1, 3).delta(&pt(3, 3)), Delta::Pow2(-1));
        assert_eq!(pt(3, 1).delta(&pt(3, 2)), Delta::Pow2(1));
        assert_eq!(pt(9, 2).delta(&pt(9, 2)), Delta::Zero);
        assert_eq!(Delta::Pow2(-1).to_f64(), 0.5);
    }

    #[test]
    fn classify_examples() {
        let c = pt(5, 3).classify(&pt(7, 3)).unwrap();
        assert_eq!((c.class_index, c.level_index), (1, 1));
        let c = pt(1, 3).classify(&pt(3, 3)).unwrap();
        assert_eq!((c.class_index, c.level_index), (0, 1));
        // Dilating both points keeps the class and coarsens the level by one.
        let x = pt(5, 3);
        let y = pt(7, 3);
        let base = x.classify(&y).unwrap();
        let doubled = x.double().unwrap().classify(&y.double().unwrap()).unwrap();
        assert_eq!(doubled.class_index, base.class_index);
        assert_eq!(doubled.level_index, base.level_index - 1);
    }

    #[test]
    fn interval_membership() {
        let i = DyadicInterval::new(1, 1); // [1/2, 1)
        assert!(i.contains(&pt(1, 1)));
        assert!(i.contains(&pt(3, 2)));
        assert!(!i.contains(&pt(1, 0)));
        assert!(!i.contains(&pt(1, 2)));
        assert_eq!(i.left_endpoint().unwrap(), pt(1, 1));
        let (plus, minus) = i.halves();
        assert_eq!(plus, DyadicInterval::new(2, 2));
        assert_eq!(minus, DyadicInterval::new(2, 3));
    }

    #[test]
    fn display_and_parse() {
        assert_eq!(pt(3, 3).to_string(), "3/2^3");
        assert_eq!("3/2^3".parse::<DyadicPoint>().unwrap(), pt(3, 3));
        assert_eq!("6/2^1".parse::<DyadicPoint>().unwrap(), pt(3, 0));
        assert_eq!("5".parse::<DyadicPoint>().unwrap(), pt(5, 0));
        assert!("3/4".parse::<DyadicPoint>().is_err());
        assert!("-1/2^1".parse::<DyadicPoint>().is_err());
        assert_eq!(Delta::Pow2(1).to_string(), "2/2^0");
        assert_eq!(Delta::Pow2(-3).to_string(), "1/2^3");
        assert_eq!(Delta::Zero.to_string(), "0/2^0");
    }

    fn arb_point() -> impl Strategy<Value = DyadicPoint> {
        (0u64..(1 << 20), 0u32..=12).prop_map(|(n, q)| pt(n, q))
    }

    proptest! {
        #[test]
        fn ultrametric_inequality(x in arb_point(), y in arb_point(), z in arb_point()) {
            let xz = x.delta(&z);
            let xy = x.delta(&y);
            let yz = y.delta(&z);
            prop_assert!(xz <= xy.max(yz));
        }

        #[test]
        fn metric_axioms(x in arb_point(), y in arb_point()) {
            prop_assert_eq!(x.delta(&y), y.delta(&x));
            prop_assert_eq!(x.delta(&y).is_zero(), x == y);
        }

        #[test]
        fn minimality_separates_halves(x in arb_point(), y in arb_point()) {
            prop_assume!(x != y);
            let i = x.common_interval(&y).unwrap();
            prop_assert!(i.contains(&x) && i.contains(&y));
            let (plus, minus) = i.halves();
            let split = (plus.contains(&x) && minus.contains(&y))
                || (minus.contains(&x) && plus.contains(&y));
            prop_assert!(split);
        }

        #[test]
        fn scale_equivariance(x in arb_point(), y in arb_point()) {
            prop_assume!(x != y);
            let dx = x.double().unwrap();
            let dy = y.double().unwrap();
            prop_assert_eq!(dx.delta(&dy), x.delta(&y).doubled());
            let c = x.classify(&y).unwrap();
            let dc = dx.classify(&dy).unwrap();
            prop_assert_eq!(dc.class_index, c.class_index);
            prop_assert_eq!(dc.level_index, c.level_index - 1);
        }

        #[test]
        fn dilation_matches_ancestry_only_at_origin(level in -8i32..8, position in 0u64..256) {
            let i = DyadicInterval::new(level, position);
            let same = i.dilate(1).unwrap() == i.ancestor(1).unwrap();
            prop_assert_eq!(same, position == 0);
        }

        #[test]
        fn point_roundtrip(x in arb_point()) {
            prop_assert_eq!(x.to_string().parse::<DyadicPoint>().unwrap(), x);
            prop_assert_eq!(x.double().unwrap().halve().unwrap(), x);
        }
    }
}
