use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An element of ½ℤ, stored as twice its value.
///
/// The parity of `twice` tells whether the value is an integer or sits on the
/// half-integer lattice ℤ+½. Discrete parameters that must differ by integers
/// (the summation variable and the shifts it pairs with) share one parity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct HalfInteger {
    twice: i64,
}

impl HalfInteger {
    pub const ZERO: HalfInteger = HalfInteger { twice: 0 };
    pub const HALF: HalfInteger = HalfInteger { twice: 1 };

    pub const fn from_twice(twice: i64) -> Self {
        HalfInteger { twice }
    }

    pub const fn from_int(n: i64) -> Self {
        HalfInteger { twice: 2 * n }
    }

    pub const fn twice(self) -> i64 {
        self.twice
    }

    pub const fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    /// The fractional offset, either 0 or ½.
    pub const fn offset(self) -> HalfInteger {
        HalfInteger {
            twice: self.twice.rem_euclid(2),
        }
    }

    pub fn same_lattice(self, other: HalfInteger) -> bool {
        (self.twice - other.twice) % 2 == 0
    }

    pub fn to_integer(self) -> Option<i64> {
        self.is_integer().then_some(self.twice / 2)
    }

    /// Integer value; fails when the value lies on ℤ+½.
    pub fn expect_integer(self, what: &str) -> Result<i64> {
        self.to_integer().ok_or_else(|| {
            Error::InvalidParameters(format!("{what} = {self} is not an integer"))
        })
    }

    pub const fn abs(self) -> HalfInteger {
        HalfInteger {
            twice: self.twice.abs(),
        }
    }

    pub fn to_f64(self) -> f64 {
        self.twice as f64 / 2.0
    }

    /// All lattice points `offset + k`, k ∈ ℤ, with |value| ≤ bound, ascending.
    pub fn lattice_window(offset: HalfInteger, bound: HalfInteger) -> Vec<HalfInteger> {
        let off = offset.offset().twice;
        let b = bound.twice.abs();
        let mut start = -b;
        if (start - off).rem_euclid(2) != 0 {
            start += 1;
        }
        (start..=b)
            .step_by(2)
            .map(HalfInteger::from_twice)
            .collect()
    }
}

impl fmt::Display for HalfInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

impl FromStr for HalfInteger {
    type Err = Error;

    /// Accepts `3`, `-1/2`, `3/2`, `1.5`, `-0.5`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidParameters(format!("not a half-integer: {s:?}"));
        if let Some((num, den)) = s.split_once('/') {
            let num: i64 = num.trim().parse().map_err(|_| bad())?;
            match den.trim() {
                "1" => Ok(HalfInteger::from_int(num)),
                "2" => Ok(HalfInteger::from_twice(num)),
                _ => Err(bad()),
            }
        } else if let Some((int, frac)) = s.split_once('.') {
            let negative = int.trim_start().starts_with('-');
            let whole: i64 = if int.is_empty() || int == "-" {
                0
            } else {
                int.parse().map_err(|_| bad())?
            };
            let frac = frac.trim_end_matches('0');
            let half = match frac {
                "" => 0,
                "5" => 1,
                _ => return Err(bad()),
            };
            let twice = 2 * whole + if negative { -half } else { half };
            Ok(HalfInteger::from_twice(twice))
        } else {
            s.parse::<i64>().map(HalfInteger::from_int).map_err(|_| bad())
        }
    }
}

impl Add for HalfInteger {
    type Output = HalfInteger;
    fn add(self, rhs: HalfInteger) -> HalfInteger {
        HalfInteger::from_twice(self.twice + rhs.twice)
    }
}

impl Sub for HalfInteger {
    type Output = HalfInteger;
    fn sub(self, rhs: HalfInteger) -> HalfInteger {
        HalfInteger::from_twice(self.twice - rhs.twice)
    }
}

impl Neg for HalfInteger {
    type Output = HalfInteger;
    fn neg(self) -> HalfInteger {
        HalfInteger::from_twice(-self.twice)
    }
}

impl Add<i64> for HalfInteger {
    type Output = HalfInteger;
    fn add(self, rhs: i64) -> HalfInteger {
        HalfInteger::from_twice(self.twice + 2 * rhs)
    }
}

impl Sub<i64> for HalfInteger {
    type Output = HalfInteger;
    fn sub(self, rhs: i64) -> HalfInteger {
        HalfInteger::from_twice(self.twice - 2 * rhs)
    }
}

impl std::iter::Sum for HalfInteger {
    fn sum<I: Iterator<Item = HalfInteger>>(iter: I) -> Self {
        iter.fold(HalfInteger::ZERO, |a, b| a + b)
    }
}

impl Serialize for HalfInteger {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for HalfInteger {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
