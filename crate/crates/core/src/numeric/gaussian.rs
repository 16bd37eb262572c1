//! Exact complex numbers with arbitrary-precision rational parts.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use rug::{Integer, Rational};
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An element of ℚ(i). Both parts are kept in lowest terms with a positive
/// denominator (rug canonicalises on every operation), so `==` is exact.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    re: Rational,
    im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn zero() -> Self {
        GaussianRational::default()
    }

    pub fn one() -> Self {
        GaussianRational::from_integer(1)
    }

    pub fn i() -> Self {
        GaussianRational::new(Rational::new(), Rational::from(1))
    }

    pub fn from_integer(n: i64) -> Self {
        GaussianRational::new(Rational::from(n), Rational::new())
    }

    /// `num/den` on the real axis. Panics on a zero denominator.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        GaussianRational::new(Rational::from((num, den)), Rational::new())
    }

    /// `(re_num + i·im_num) / den`.
    pub fn from_parts(re_num: i64, im_num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        GaussianRational::new(Rational::from((re_num, den)), Rational::from((im_num, den)))
    }

    pub fn re(&self) -> &Rational {
        &self.re
    }

    pub fn im(&self) -> &Rational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.cmp0() == Ordering::Equal && self.im.cmp0() == Ordering::Equal
    }

    pub fn is_real(&self) -> bool {
        self.im.cmp0() == Ordering::Equal
    }

    pub fn conj(&self) -> Self {
        GaussianRational::new(self.re.clone(), Rational::from(-&self.im))
    }

    /// |z|², exact.
    pub fn norm_sqr(&self) -> Rational {
        Rational::from(&self.re * &self.re) + Rational::from(&self.im * &self.im)
    }

    pub fn checked_recip(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(GaussianRational::new(
            Rational::from(&self.re / &n),
            -Rational::from(&self.im / &n),
        ))
    }

    pub fn checked_div(&self, rhs: &Self) -> Option<Self> {
        rhs.checked_recip().map(|r| self * &r)
    }

    pub fn mul_rational(&self, r: &Rational) -> Self {
        GaussianRational::new(Rational::from(&self.re * r), Rational::from(&self.im * r))
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    /// Combined bit size of all numerators and denominators.
    pub fn height_bits(&self) -> u32 {
        let bits = |r: &Rational| r.numer().significant_bits() + r.denom().significant_bits();
        bits(&self.re) + bits(&self.im)
    }
}

fn ratio_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::InvalidParameters(format!("not an exact rational: {s:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((num, den)) = s.split_once('/') {
        let num: Integer = num.trim().parse().map_err(|_| bad())?;
        let den: Integer = den.trim().parse().map_err(|_| bad())?;
        if den == 0 {
            return Err(bad());
        }
        return Ok(Rational::from((num, den)));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = int.trim_start().starts_with('-');
        let digits = format!("{}{}", int.trim_start_matches(['-', '+']), frac);
        let digits = if digits.is_empty() { "0".to_string() } else { digits };
        let mut num: Integer = digits.parse().map_err(|_| bad())?;
        if negative {
            num = -num;
        }
        let den = Integer::from(Integer::u_pow_u(10, frac.len() as u32));
        return Ok(Rational::from((num, den)));
    }
    let n: Integer = s.parse().map_err(|_| bad())?;
    Ok(Rational::from(n))
}

/// Splits `a+bi`-style text into signed terms, ignoring signs that follow
/// an exponent marker or an opening bracket.
pub(crate) fn split_signed_terms(s: &str) -> Vec<String> {
    let mut terms = Vec::new();
    let mut current = String::new();
    let mut prev: Option<char> = None;
    for c in s.chars().filter(|c| !c.is_whitespace()) {
        if (c == '+' || c == '-')
            && !current.is_empty()
            && !matches!(prev, Some('e') | Some('E') | Some('(') | Some('/'))
        {
            terms.push(std::mem::take(&mut current));
        }
        current.push(c);
        prev = Some(c);
    }
    if !current.is_empty() {
        terms.push(current);
    }
    terms
}

impl FromStr for GaussianRational {
    type Err = Error;

    /// Accepts `p/q`, `p/q+r/si`, `-3i`, `1.25-0.5*i`, `(1/2)+(3/4)i`.
    fn from_str(s: &str) -> Result<Self> {
        let mut re = Rational::new();
        let mut im = Rational::new();
        let terms = split_signed_terms(s);
        if terms.is_empty() {
            return Err(Error::InvalidParameters("empty exact scalar".into()));
        }
        for term in terms {
            let cleaned: String = term.chars().filter(|c| *c != '(' && *c != ')').collect();
            if let Some(coef) = cleaned.strip_suffix('i') {
                let coef = coef.trim_end_matches('*');
                let value = match coef {
                    "" | "+" => Rational::from(1),
                    "-" => Rational::from(-1),
                    c => parse_rational(c)?,
                };
                im += value;
            } else {
                re += parse_rational(&cleaned)?;
            }
        }
        Ok(GaussianRational::new(re, im))
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.cmp0(), self.im.cmp0()) {
            (_, Ordering::Equal) => write!(f, "{}", self.re),
            (Ordering::Equal, _) => write!(f, "{}i", self.im),
            (_, Ordering::Less) => write!(f, "{}-{}i", self.re, Rational::from(-&self.im)),
            _ => write!(f, "{}+{}i", self.re, self.im),
        }
    }
}

impl Serialize for GaussianRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("GaussianRational", 2)?;
        st.serialize_field("re", &ratio_string(&self.re))?;
        st.serialize_field("im", &ratio_string(&self.im))?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for GaussianRational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Parts {
            re: String,
            im: String,
        }
        let p = Parts::deserialize(deserializer)?;
        let re = parse_rational(&p.re).map_err(serde::de::Error::custom)?;
        let im = parse_rational(&p.im).map_err(serde::de::Error::custom)?;
        Ok(GaussianRational::new(re, im))
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        GaussianRational::from_integer(n)
    }
}

impl From<Rational> for GaussianRational {
    fn from(r: Rational) -> Self {
        GaussianRational::new(r, Rational::new())
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(
            Rational::from(&self.re + &rhs.re),
            Rational::from(&self.im + &rhs.im),
        )
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(
            Rational::from(&self.re - &rhs.re),
            Rational::from(&self.im - &rhs.im),
        )
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        if self.is_real() && rhs.is_real() {
            return GaussianRational::from(Rational::from(&self.re * &rhs.re));
        }
        let re = Rational::from(&self.re * &rhs.re) - Rational::from(&self.im * &rhs.im);
        let im = Rational::from(&self.re * &rhs.im) + Rational::from(&self.im * &rhs.re);
        GaussianRational::new(re, im)
    }
}

impl<'a> Div<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    /// Panics on division by zero; use [`GaussianRational::checked_div`] otherwise.
    fn div(self, rhs: &GaussianRational) -> GaussianRational {
        self.checked_div(rhs).expect("division by zero Gaussian rational")
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(Rational::from(-&self.re), Rational::from(-&self.im))
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        -&self
    }
}

macro_rules! forward_owned {
    ($ty:ty, $($tr:ident $m:ident),*) => {$(
        impl $tr<$ty> for $ty {
            type Output = $ty;
            fn $m(self, rhs: $ty) -> $ty { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a $ty> for $ty {
            type Output = $ty;
            fn $m(self, rhs: &'a $ty) -> $ty { (&self).$m(rhs) }
        }
        impl<'a> $tr<$ty> for &'a $ty {
            type Output = $ty;
            fn $m(self, rhs: $ty) -> $ty { self.$m(&rhs) }
        }
    )*};
}
pub(crate) use forward_owned;

forward_owned!(GaussianRational, Add add, Sub sub, Mul mul, Div div);

impl std::iter::Sum for GaussianRational {
    fn sum<I: Iterator<Item = GaussianRational>>(iter: I) -> Self {
        iter.fold(GaussianRational::zero(), |a, b| a + b)
    }
}

impl std::iter::Product for GaussianRational {
    fn product<I: Iterator<Item = GaussianRational>>(iter: I) -> Self {
        iter.fold(GaussianRational::one(), |a, b| a * b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_operations_are_exact() {
        let a = GaussianRational::from_parts(1, 2, 3);
        let b = GaussianRational::from_parts(-5, 1, 7);
        let q = &a / &b;
        assert_eq!(&q * &b, a);
        assert_eq!(&(&a + &b) - &b, a);
        assert_eq!(GaussianRational::i() * GaussianRational::i(), GaussianRational::from(-1));
        assert!(GaussianRational::zero().checked_recip().is_none());
    }

    #[test]
    fn canonical_form() {
        let a = GaussianRational::from_parts(2, -4, -6);
        assert_eq!(a.re().numer(), &Integer::from(-1));
        assert_eq!(a.re().denom(), &Integer::from(3));
        assert_eq!(a.im(), &Rational::from((2, 3)));
    }

    #[test]
    fn parse_and_print() {
        let z: GaussianRational = "1/2-3/4i".parse().unwrap();
        assert_eq!(z, GaussianRational::new(Rational::from((1, 2)), Rational::from((-3, 4))));
        assert_eq!(z.to_string(), "1/2-3/4i");
        let w: GaussianRational = "-i".parse().unwrap();
        assert_eq!(w, -GaussianRational::i());
        let d: GaussianRational = "1.25+0.5*i".parse().unwrap();
        assert_eq!(d, GaussianRational::from_parts(5, 2, 4));
        assert!("1/0".parse::<GaussianRational>().is_err());
        assert!("abc".parse::<GaussianRational>().is_err());
    }

    #[test]
    fn json_shape() {
        let z = GaussianRational::from_parts(3, -1, 2);
        let js = serde_json::to_string(&z).unwrap();
        assert_eq!(js, r#"{"re":"3/2","im":"-1/2"}"#);
        let back: GaussianRational = serde_json::from_str(&js).unwrap();
        assert_eq!(back, z);
    }
}
