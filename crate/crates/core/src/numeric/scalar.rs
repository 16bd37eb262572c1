use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

use rug::Float;
use serde::{Deserialize, Serialize};

use super::complex::{ComplexValue, Precision};
use super::gaussian::GaussianRational;
use super::half_integer::HalfInteger;

/// Which arithmetic a computation ran in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
}

/// The arithmetic interface shared by exact Gaussian rationals and
/// floating complex values.
///
/// Constants are built "like" an existing value so floating results inherit
/// the working precision of their inputs.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    const MODE: Mode;

    fn from_ratio_like(&self, num: i64, den: i64) -> Self;

    fn zero_like(&self) -> Self {
        self.from_ratio_like(0, 1)
    }

    fn one_like(&self) -> Self {
        self.from_ratio_like(1, 1)
    }

    fn from_half_integer_like(&self, h: HalfInteger) -> Self {
        self.from_ratio_like(h.twice(), 2)
    }

    /// Exactly zero in exact mode; below the pole tolerance in float mode.
    fn is_negligible(&self) -> bool;

    /// `None` when the value is negligible.
    fn try_recip(&self) -> Option<Self>;

    fn try_div(&self, rhs: &Self) -> Option<Self> {
        rhs.try_recip().map(|r| self.clone() * r)
    }

    /// Equality up to `slack_digits` of lost precision (exact mode ignores
    /// the slack and demands identity).
    fn agrees_with(&self, other: &Self, slack_digits: u32) -> bool;

    /// Relative distance as an `f64`; zero for identical exact values.
    fn relative_error(&self, other: &Self) -> f64;

    fn to_complex(&self, prec: Precision) -> ComplexValue;

    /// Decimal digits carried; infinite for exact values.
    fn working_digits(&self) -> f64;

    /// |self| as an `f64`, for scale estimates only.
    fn magnitude(&self) -> f64 {
        self.to_complex(Precision::DEFAULT).abs_f64()
    }
}

impl Scalar for GaussianRational {
    const MODE: Mode = Mode::Exact;

    fn from_ratio_like(&self, num: i64, den: i64) -> Self {
        GaussianRational::from_ratio(num, den)
    }

    fn is_negligible(&self) -> bool {
        self.is_zero()
    }

    fn try_recip(&self) -> Option<Self> {
        self.checked_recip()
    }

    fn agrees_with(&self, other: &Self, _slack_digits: u32) -> bool {
        self == other
    }

    fn relative_error(&self, other: &Self) -> f64 {
        if self == other {
            return 0.0;
        }
        let diff = self - other;
        let scale = self.norm_sqr().max(other.norm_sqr());
        let ratio = diff.norm_sqr() / scale;
        ratio.to_f64().sqrt()
    }

    fn to_complex(&self, prec: Precision) -> ComplexValue {
        ComplexValue::from_gaussian(prec, self)
    }

    fn working_digits(&self) -> f64 {
        f64::INFINITY
    }
}

fn digits_of(bits: u32) -> f64 {
    ((bits.saturating_sub(8)) as f64 / std::f64::consts::LOG2_10).floor()
}

impl Scalar for ComplexValue {
    const MODE: Mode = Mode::Float;

    fn from_ratio_like(&self, num: i64, den: i64) -> Self {
        let re = Float::with_val(self.prec_bits(), num) / den;
        ComplexValue::real(re)
    }

    fn is_negligible(&self) -> bool {
        let digits = digits_of(self.prec_bits());
        let ten = Float::with_val(self.prec_bits(), 10);
        let tol = rug::ops::Pow::pow(ten, -(digits / 2.0));
        self.abs() < tol
    }

    fn try_recip(&self) -> Option<Self> {
        if self.is_negligible() {
            return None;
        }
        Some(self.one_like() / self)
    }

    fn agrees_with(&self, other: &Self, slack_digits: u32) -> bool {
        let digits = digits_of(self.prec_bits().min(other.prec_bits()));
        let tol = 10f64.powf(slack_digits as f64 - digits);
        self.relative_error(other) <= tol
    }

    fn relative_error(&self, other: &Self) -> f64 {
        self.relative_distance(other).to_f64()
    }

    fn working_digits(&self) -> f64 {
        digits_of(self.prec_bits())
    }

    fn to_complex(&self, prec: Precision) -> ComplexValue {
        ComplexValue::from_floats(
            Float::with_val(prec.bits(), self.re()),
            Float::with_val(prec.bits(), self.im()),
        )
    }
}
