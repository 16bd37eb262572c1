//! Floating complex arithmetic at a configurable decimal working precision.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::gaussian::{forward_owned, split_signed_terms, GaussianRational};
use crate::error::{Error, Result};

/// Working precision in decimal digits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Precision(u32);

impl Precision {
    pub const MIN_DIGITS: u32 = 16;
    pub const MAX_DIGITS: u32 = 1000;
    pub const DEFAULT: Precision = Precision(38);

    pub fn new(digits: u32) -> Result<Self> {
        if !(Self::MIN_DIGITS..=Self::MAX_DIGITS).contains(&digits) {
            return Err(Error::InvalidParameters(format!(
                "precision must be between {} and {} digits, got {digits}",
                Self::MIN_DIGITS,
                Self::MAX_DIGITS
            )));
        }
        Ok(Precision(digits))
    }

    pub fn digits(self) -> u32 {
        self.0
    }

    /// Mantissa bits, with a few guard bits on top of the decimal request.
    pub fn bits(self) -> u32 {
        (self.0 as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 8
    }

    /// The decimal precision whose [`Precision::bits`] is at most `bits`.
    pub fn from_bits(bits: u32) -> Self {
        let digits = (bits.saturating_sub(8) as f64 / std::f64::consts::LOG2_10).floor() as u32;
        Precision(digits.clamp(Self::MIN_DIGITS, Self::MAX_DIGITS))
    }

    /// 10^(-k) at this precision.
    pub fn ten_pow_neg(self, k: f64) -> Float {
        let ten = Float::with_val(self.bits(), 10);
        ten.pow(-k)
    }

    /// Threshold below which a factor is treated as an exact zero: 10^(-P/2).
    pub fn pole_tolerance(self) -> Float {
        self.ten_pow_neg(self.0 as f64 / 2.0)
    }

    pub fn pi(self) -> Float {
        Float::with_val(self.bits(), Constant::Pi)
    }
}

impl Default for Precision {
    fn default() -> Self {
        Precision::DEFAULT
    }
}

/// A complex number whose parts are MPFR floats.
///
/// Arithmetic never fails; NaN or infinite components are caught by
/// [`ComplexValue::finite`] at the boundary of every fallible operation.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexValue {
    re: Float,
    im: Float,
}

impl ComplexValue {
    pub fn from_floats(re: Float, im: Float) -> Self {
        ComplexValue { re, im }
    }

    pub fn zero(prec: Precision) -> Self {
        Self::from_f64(prec, 0.0, 0.0)
    }

    pub fn one(prec: Precision) -> Self {
        Self::from_f64(prec, 1.0, 0.0)
    }

    pub fn i(prec: Precision) -> Self {
        Self::from_f64(prec, 0.0, 1.0)
    }

    pub fn from_f64(prec: Precision, re: f64, im: f64) -> Self {
        ComplexValue {
            re: Float::with_val(prec.bits(), re),
            im: Float::with_val(prec.bits(), im),
        }
    }

    pub fn real(re: Float) -> Self {
        let im = Float::new(re.prec());
        ComplexValue { re, im }
    }

    pub fn from_ratio(prec: Precision, num: i64, den: i64) -> Self {
        let re = Float::with_val(prec.bits(), num) / den;
        Self::real(re)
    }

    pub fn from_gaussian(prec: Precision, z: &GaussianRational) -> Self {
        ComplexValue {
            re: Float::with_val(prec.bits(), z.re()),
            im: Float::with_val(prec.bits(), z.im()),
        }
    }

    /// `r·e^{iθ}`.
    pub fn polar(prec: Precision, r: f64, theta: &Float) -> Self {
        let r = Float::with_val(prec.bits(), r);
        let (s, c) = Float::with_val(prec.bits(), theta).sin_cos(Float::new(prec.bits()));
        ComplexValue {
            re: Float::with_val(prec.bits(), &r * &c),
            im: Float::with_val(prec.bits(), &r * &s),
        }
    }

    /// `e^{iπ·num/den}`, computed at full precision.
    pub fn unit_root(prec: Precision, num: i64, den: i64) -> Self {
        let theta = prec.pi() * num / den;
        Self::polar(prec, 1.0, &theta)
    }

    pub fn re(&self) -> &Float {
        &self.re
    }

    pub fn im(&self) -> &Float {
        &self.im
    }

    pub fn prec_bits(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    pub fn precision(&self) -> Precision {
        Precision::from_bits(self.prec_bits())
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    /// Passes the value through when both parts are finite.
    pub fn finite(self, context: &str) -> Result<Self> {
        if self.is_finite() {
            Ok(self)
        } else {
            Err(Error::NonFinite(context.to_string()))
        }
    }

    pub fn is_exact_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        ComplexValue {
            re: self.re.clone(),
            im: Float::with_val(self.im.prec(), -&self.im),
        }
    }

    pub fn abs(&self) -> Float {
        Float::with_val(self.prec_bits(), self.re.hypot_ref(&self.im))
    }

    pub fn abs_f64(&self) -> f64 {
        self.abs().to_f64()
    }

    /// Principal argument in (−π, π].
    pub fn arg(&self) -> Float {
        Float::with_val(self.prec_bits(), self.im.atan2_ref(&self.re))
    }

    pub fn mul_real(&self, r: &Float) -> Self {
        let p = self.prec_bits();
        ComplexValue {
            re: Float::with_val(p, &self.re * r),
            im: Float::with_val(p, &self.im * r),
        }
    }

    pub fn mul_i(&self) -> Self {
        ComplexValue {
            re: Float::with_val(self.im.prec(), -&self.im),
            im: self.re.clone(),
        }
    }

    pub fn scale(&self, factor: f64) -> Self {
        let f = Float::with_val(self.prec_bits(), factor);
        self.mul_real(&f)
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn exp(&self) -> Self {
        let p = self.prec_bits();
        let m = Float::with_val(p, self.re.exp_ref());
        let (s, c) = self.im.clone().sin_cos(Float::new(p));
        ComplexValue {
            re: Float::with_val(p, &m * &c),
            im: Float::with_val(p, &m * &s),
        }
    }

    /// `e^z − 1` without cancellation for small |z|.
    pub fn exp_m1(&self) -> Self {
        let p = self.prec_bits();
        let em1 = Float::with_val(p, self.re.exp_m1_ref());
        let (s, c) = self.im.clone().sin_cos(Float::new(p));
        let half = Float::with_val(p, &self.im / 2u32);
        let sh = half.sin();
        // cos b − 1 = −2 sin²(b/2)
        let cos_m1 = Float::with_val(p, &sh * &sh) * -2i32;
        let exp_re = Float::with_val(p, &em1 + 1u32);
        ComplexValue {
            re: Float::with_val(p, &em1 * &c) + cos_m1,
            im: Float::with_val(p, &exp_re * &s),
        }
    }

    /// Principal logarithm, imaginary part in (−π, π].
    pub fn ln(&self) -> Self {
        ComplexValue {
            re: self.abs().ln(),
            im: self.arg(),
        }
    }

    /// Principal square root (nonnegative real part).
    pub fn sqrt(&self) -> Self {
        let p = self.prec_bits();
        if self.is_exact_zero() {
            return ComplexValue::from_floats(Float::new(p), Float::new(p));
        }
        let r = self.abs();
        if self.re.cmp0() != Some(Ordering::Less) {
            let t = (Float::with_val(p, &r + &self.re) / 2u32).sqrt();
            let im = Float::with_val(p, &self.im / &t) / 2u32;
            ComplexValue { re: t, im }
        } else {
            let t = (Float::with_val(p, &r - &self.re) / 2u32).sqrt();
            let re = Float::with_val(p, self.im.abs_ref()) / &t / 2u32;
            let im = if self.im.is_sign_negative() { -t } else { t };
            ComplexValue { re, im }
        }
    }

    pub fn sin(&self) -> Self {
        let p = self.prec_bits();
        let (s, c) = self.re.clone().sin_cos(Float::new(p));
        let (sh, ch) = self.im.clone().sinh_cosh(Float::new(p));
        ComplexValue {
            re: s * ch,
            im: c * sh,
        }
    }

    pub fn cos(&self) -> Self {
        let p = self.prec_bits();
        let (s, c) = self.re.clone().sin_cos(Float::new(p));
        let (sh, ch) = self.im.clone().sinh_cosh(Float::new(p));
        ComplexValue {
            re: c * ch,
            im: -(s * sh),
        }
    }

    pub fn powi(&self, n: i64) -> Self {
        let p = self.prec_bits();
        let mut result = ComplexValue::real(Float::with_val(p, 1));
        let mut base = if n < 0 {
            ComplexValue::real(Float::with_val(p, 1)) / self
        } else {
            self.clone()
        };
        let mut e = n.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            base = base.square();
            e >>= 1;
        }
        result
    }

    /// Round to the nearest Gaussian integer's real part.
    pub fn round_re(&self) -> i64 {
        self.re.to_f64().round() as i64
    }

    /// Relative distance |a−b| / max(|a|, |b|); zero when both vanish.
    pub fn relative_distance(&self, other: &Self) -> Float {
        let diff = (self - other).abs();
        let scale = self.abs().max(&other.abs());
        if scale.is_zero() {
            return Float::new(diff.prec());
        }
        diff / scale
    }

    /// Decimal rendering with `digits` significant digits per part.
    pub fn to_decimal_strings(&self, digits: usize) -> (String, String) {
        (
            self.re.to_string_radix(10, Some(digits)),
            self.im.to_string_radix(10, Some(digits)),
        )
    }

    /// Parses `a+bi`, `a`, `bi`, `-2.5e-3-0.1i`, or polar `r@theta`
    /// (θ in radians) at the requested precision.
    pub fn parse(text: &str, prec: Precision) -> Result<Self> {
        let bad = || Error::InvalidParameters(format!("not a complex number: {text:?}"));
        let bits = prec.bits();
        let parse_real = |s: &str| -> Result<Float> {
            let s = s.trim();
            let s = s.strip_prefix('+').unwrap_or(s);
            match s {
                "" => Ok(Float::with_val(bits, 1)),
                "-" => Ok(Float::with_val(bits, -1)),
                "pi" => Ok(prec.pi()),
                "-pi" => Ok(-prec.pi()),
                _ => Float::parse(s).map(|v| Float::with_val(bits, v)).map_err(|_| bad()),
            }
        };
        if let Some((r, theta)) = text.split_once('@') {
            let r = parse_real(r)?;
            let theta = parse_real(theta)?;
            let (s, c) = theta.sin_cos(Float::new(bits));
            return Ok(ComplexValue {
                re: Float::with_val(bits, &r * &c),
                im: Float::with_val(bits, &r * &s),
            });
        }
        let mut re = Float::new(bits);
        let mut im = Float::new(bits);
        let terms = split_signed_terms(text);
        if terms.is_empty() {
            return Err(bad());
        }
        for term in terms {
            if let Some(coef) = term.strip_suffix('i') {
                im += parse_real(coef.trim_end_matches('*'))?;
            } else {
                re += parse_real(&term)?;
            }
        }
        Ok(ComplexValue { re, im })
    }
}

impl fmt::Display for ComplexValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(17);
        let (re, im) = self.to_decimal_strings(digits);
        if im.starts_with('-') {
            write!(f, "{re}{im}i")
        } else {
            write!(f, "{re}+{im}i")
        }
    }
}

impl Serialize for ComplexValue {
    /// Full-precision decimal strings plus an `f64` convenience pair.
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let digits = ((self.prec_bits() as f64) / std::f64::consts::LOG2_10).floor() as usize;
        let (re, im) = self.to_decimal_strings(digits.max(1));
        let mut st = serializer.serialize_struct("ComplexValue", 3)?;
        st.serialize_field("re", &re)?;
        st.serialize_field("im", &im)?;
        st.serialize_field("approx", &self.to_f64_pair())?;
        st.end()
    }
}

impl<'a> Add<&'a ComplexValue> for &'a ComplexValue {
    type Output = ComplexValue;
    fn add(self, rhs: &ComplexValue) -> ComplexValue {
        let p = self.prec_bits().max(rhs.prec_bits());
        ComplexValue {
            re: Float::with_val(p, &self.re + &rhs.re),
            im: Float::with_val(p, &self.im + &rhs.im),
        }
    }
}

impl<'a> Sub<&'a ComplexValue> for &'a ComplexValue {
    type Output = ComplexValue;
    fn sub(self, rhs: &ComplexValue) -> ComplexValue {
        let p = self.prec_bits().max(rhs.prec_bits());
        ComplexValue {
            re: Float::with_val(p, &self.re - &rhs.re),
            im: Float::with_val(p, &self.im - &rhs.im),
        }
    }
}

impl<'a> Mul<&'a ComplexValue> for &'a ComplexValue {
    type Output = ComplexValue;
    fn mul(self, rhs: &ComplexValue) -> ComplexValue {
        let p = self.prec_bits().max(rhs.prec_bits());
        let ac = Float::with_val(p, &self.re * &rhs.re);
        let bd = Float::with_val(p, &self.im * &rhs.im);
        let ad = Float::with_val(p, &self.re * &rhs.im);
        let bc = Float::with_val(p, &self.im * &rhs.re);
        ComplexValue {
            re: ac - bd,
            im: ad + bc,
        }
    }
}

impl<'a> Div<&'a ComplexValue> for &'a ComplexValue {
    type Output = ComplexValue;
    fn div(self, rhs: &ComplexValue) -> ComplexValue {
        let p = self.prec_bits().max(rhs.prec_bits());
        let den = Float::with_val(p, &rhs.re * &rhs.re) + Float::with_val(p, &rhs.im * &rhs.im);
        let ac = Float::with_val(p, &self.re * &rhs.re);
        let bd = Float::with_val(p, &self.im * &rhs.im);
        let bc = Float::with_val(p, &self.im * &rhs.re);
        let ad = Float::with_val(p, &self.re * &rhs.im);
        ComplexValue {
            re: (ac + bd) / &den,
            im: (bc - ad) / &den,
        }
    }
}

impl Neg for &ComplexValue {
    type Output = ComplexValue;
    fn neg(self) -> ComplexValue {
        ComplexValue {
            re: Float::with_val(self.re.prec(), -&self.re),
            im: Float::with_val(self.im.prec(), -&self.im),
        }
    }
}

impl Neg for ComplexValue {
    type Output = ComplexValue;
    fn neg(self) -> ComplexValue {
        ComplexValue {
            re: -self.re,
            im: -self.im,
        }
    }
}

forward_owned!(ComplexValue, Add add, Sub sub, Mul mul, Div div);

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Precision {
        Precision::DEFAULT
    }

    fn close(a: &ComplexValue, b: &ComplexValue, tol: f64) -> bool {
        (a - b).abs_f64() <= tol
    }

    #[test]
    fn precision_bounds() {
        assert!(Precision::new(15).is_err());
        assert_eq!(Precision::new(38).unwrap().bits(), 135);
        assert!(Precision::DEFAULT.pole_tolerance().to_f64() < 1.1e-19);
    }

    #[test]
    fn exp_ln_roundtrip() {
        let z = ComplexValue::from_f64(p(), -0.7, 2.3);
        assert!(close(&z.exp().ln(), &z, 1e-35));
        let w = ComplexValue::from_f64(p(), 1e-20, -3e-21);
        let rel = (w.exp_m1() - &w).abs_f64() / w.abs_f64();
        assert!(rel < 1e-19, "exp_m1 lost accuracy: {rel}");
    }

    #[test]
    fn sqrt_branch() {
        let z = ComplexValue::from_f64(p(), -4.0, 0.0);
        let s = z.sqrt();
        assert!(close(&s, &ComplexValue::from_f64(p(), 0.0, 2.0), 1e-35));
        let z = ComplexValue::from_f64(p(), -4.0, -1e-30);
        assert!(z.sqrt().im().to_f64() < 0.0);
        let z = ComplexValue::from_f64(p(), 0.3, -1.7);
        assert!(close(&z.sqrt().square(), &z, 1e-35));
    }

    #[test]
    fn trig_identity() {
        let z = ComplexValue::from_f64(p(), 0.4, -1.2);
        let one = z.sin().square() + z.cos().square();
        assert!(close(&one, &ComplexValue::one(p()), 1e-35));
    }

    #[test]
    fn division_and_powers() {
        let a = ComplexValue::from_f64(p(), 1.5, -2.0);
        let b = ComplexValue::from_f64(p(), -0.25, 0.75);
        assert!(close(&(&(&a / &b) * &b), &a, 1e-35));
        assert!(close(&a.powi(-3), &(ComplexValue::one(p()) / (&a * &a * &a)), 1e-35));
        let inf = ComplexValue::one(p()) / ComplexValue::zero(p());
        assert!(inf.finite("1/0").is_err());
    }

    #[test]
    fn parsing() {
        let z = ComplexValue::parse("0.5-2i", p()).unwrap();
        assert_eq!(z.to_f64_pair(), (0.5, -2.0));
        let z = ComplexValue::parse("-i", p()).unwrap();
        assert_eq!(z.to_f64_pair(), (0.0, -1.0));
        let z = ComplexValue::parse("1e-3+2.5e+1*i", p()).unwrap();
        assert_eq!(z.to_f64_pair(), (1e-3, 25.0));
        let z = ComplexValue::parse("1@0", p()).unwrap();
        assert_eq!(z.to_f64_pair(), (1.0, 0.0));
        assert!(ComplexValue::parse("x+1", p()).is_err());
    }
}
