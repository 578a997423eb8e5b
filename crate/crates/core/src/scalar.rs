//! Scalar fields the linear algebra layer runs over.
//!
//! Everything above [`crate::linalg`] is generic over a [`Field`]. The exact
//! rational field [`Rat`] is the default and the only one for which rank
//! decisions are exact; `f64` and `Ratio<i64>` are accepted for small
//! integer instances.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{FromPrimitive, One, Zero};

/// Arbitrary precision rational number in lowest terms with positive denominator.
pub type Rat = Ratio<BigInt>;

/// A commutative field with by-reference arithmetic.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + FromPrimitive
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn div_ref(&self, rhs: &Self) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("integer is representable in every supported field")
    }
}

impl<T> Field for T
where
    T: Clone
        + PartialEq
        + fmt::Debug
        + fmt::Display
        + Zero
        + One
        + FromPrimitive
        + Neg<Output = T>
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Div<Output = T>
        + Send
        + Sync
        + 'static,
    for<'a> &'a T: Add<&'a T, Output = T>
        + Sub<&'a T, Output = T>
        + Mul<&'a T, Output = T>
        + Div<&'a T, Output = T>,
{
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div_ref(&self, rhs: &Self) -> Self {
        self / rhs
    }
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    let r: Rat = s.parse().ok()?;
    Some(r)
}

/// Formats as `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rat(r: &Rat) -> String {
    r.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rat_strings() {
        let half = parse_rat("2/4").unwrap();
        assert_eq!(format_rat(&half), "1/2");
        assert_eq!(format_rat(&parse_rat("-6/3").unwrap()), "-2");
        assert_eq!(format_rat(&parse_rat("7").unwrap()), "7");
        assert_eq!(parse_rat("1/-2").map(|r| format_rat(&r)), Some("-1/2".into()));
        assert!(parse_rat("x").is_none());
        assert!(parse_rat("1/0").is_none());
    }
}
