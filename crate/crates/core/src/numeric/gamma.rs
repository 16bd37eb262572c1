//! Principal-branch complex log-gamma.
//!
//! The argument is shifted right by the recurrence lnΓ(z) = lnΓ(z+K) − Σ Log(z+k)
//! until the Stirling series converges to working precision. Because each
//! Log is principal, the result is the analytic branch with its cut on the
//! negative real axis (real for positive real z).

use std::sync::{Mutex, OnceLock};

use rug::{Float, Integer, Rational};

use super::complex::ComplexValue;
use crate::error::{Error, Result};

fn bernoulli_cache() -> &'static Mutex<Vec<Rational>> {
    static CACHE: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(vec![Rational::from(1)]))
}

/// B_0..=B_n via Σ_{j=0}^{m} C(m+1, j) B_j = 0.
fn bernoulli_numbers(n: usize) -> Vec<Rational> {
    let mut cache = bernoulli_cache().lock().expect("bernoulli cache poisoned");
    while cache.len() <= n {
        let m = cache.len();
        let mut acc = Rational::new();
        let mut binom = Integer::from(1);
        for (j, b) in cache.iter().enumerate() {
            acc += Rational::from(b * &binom);
            // C(m+1, j+1) from C(m+1, j)
            binom *= (m + 1 - j) as u64;
            binom /= (j + 1) as u64;
        }
        // binom is now C(m+1, m) = m+1
        let next = -acc / binom;
        cache.push(next);
    }
    cache[..=n].to_vec()
}

fn working_digits(bits: u32) -> f64 {
    bits as f64 / std::f64::consts::LOG2_10
}

/// Principal-branch ln Γ(z).
pub fn log_gamma(z: &ComplexValue) -> Result<ComplexValue> {
    let bits = z.prec_bits();
    let digits = working_digits(bits);
    let tol = {
        let ten = Float::with_val(bits, 10);
        rug::ops::Pow::pow(ten, -(digits / 2.0))
    };

    let nearest = z.re().to_f64().round();
    if nearest <= 0.0 {
        let lattice = ComplexValue::from_floats(Float::with_val(bits, nearest), Float::new(bits));
        if (z - &lattice).abs() < tol {
            return Err(Error::PoleOfGamma(format!("{}", nearest as i64)));
        }
    }

    let radius = ((digits + 6.0) * std::f64::consts::LN_10 / (2.0 * std::f64::consts::PI)).max(8.0);
    let re = z.re().to_f64();
    let shift = if re > 0.0 && z.abs_f64() >= radius {
        0
    } else {
        (radius - re).ceil().max(0.0) as u64
    };

    let mut correction = ComplexValue::zero_bits(bits);
    let mut w = z.clone();
    for _ in 0..shift {
        correction = &correction + &w.ln();
        w = &w + &ComplexValue::real(Float::with_val(bits, 1));
    }

    let half = Float::with_val(bits, 0.5);
    let ln_w = w.ln();
    let w_minus_half = ComplexValue::from_floats(Float::with_val(bits, w.re() - &half), w.im().clone());
    let ln_two_pi = Float::with_val(bits, rug::float::Constant::Pi) * 2u32;
    let ln_two_pi = ln_two_pi.ln() * &half;
    let mut sum = &(&w_minus_half * &ln_w) - &w;
    sum = &sum + &ComplexValue::real(ln_two_pi);

    let eps = {
        let ten = Float::with_val(bits, 10);
        rug::ops::Pow::pow(ten, -(digits + 2.0))
    };
    let inv_w = ComplexValue::real(Float::with_val(bits, 1)) / &w;
    let inv_w2 = inv_w.square();
    let mut power = inv_w.clone();
    let mut previous = Float::with_val(bits, f64::INFINITY);
    let mut k = 1usize;
    loop {
        let b = bernoulli_numbers(2 * k).pop().expect("nonempty");
        let coef = b / ((2 * k) as u64 * (2 * k - 1) as u64);
        let term = power.mul_real(&Float::with_val(bits, &coef));
        let size = term.abs();
        sum = &sum + &term;
        if size < eps {
            break;
        }
        if size > previous || k > 4000 {
            return Err(Error::NonFinite(format!(
                "Stirling series failed to converge for lnΓ({z})"
            )));
        }
        previous = size;
        power = &power * &inv_w2;
        k += 1;
    }

    (&sum - &correction).finite("log_gamma")
}

impl ComplexValue {
    pub(crate) fn zero_bits(bits: u32) -> Self {
        ComplexValue::from_floats(Float::new(bits), Float::new(bits))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::Precision;

    fn p() -> Precision {
        Precision::DEFAULT
    }

    #[test]
    fn bernoulli_values() {
        let b = bernoulli_numbers(12);
        assert_eq!(b[1], Rational::from((-1, 2)));
        assert_eq!(b[2], Rational::from((1, 6)));
        assert_eq!(b[4], Rational::from((-1, 30)));
        assert_eq!(b[12], Rational::from((-691, 2730)));
        assert_eq!(b[11], Rational::new());
    }

    #[test]
    fn integer_points() {
        for x in [1.0, 2.0] {
            let v = log_gamma(&ComplexValue::from_f64(p(), x, 0.0)).unwrap();
            assert!(v.abs_f64() < 1e-36, "lnΓ({x}) = {v}");
        }
        // ln Γ(10) = ln 362880
        let v = log_gamma(&ComplexValue::from_f64(p(), 10.0, 0.0)).unwrap();
        let expect = Float::with_val(p().bits(), 362880).ln();
        assert!((Float::with_val(p().bits(), v.re() - &expect)).abs().to_f64() < 1e-35);
    }

    #[test]
    fn half_integer_point() {
        // Γ(½) = √π
        let v = log_gamma(&ComplexValue::from_f64(p(), 0.5, 0.0)).unwrap();
        let expect = p().pi().sqrt().ln();
        let err = Float::with_val(p().bits(), v.re() - &expect).abs().to_f64();
        assert!(err < 1e-36, "error {err}");
        assert!((expect.to_f64() - 0.5723649429247001).abs() < 1e-15);
        assert!(v.im().to_f64().abs() < 1e-40);
    }

    #[test]
    fn poles_rejected() {
        for x in [0.0, -1.0, -7.0] {
            let r = log_gamma(&ComplexValue::from_f64(p(), x, 0.0));
            assert!(matches!(r, Err(Error::PoleOfGamma(_))));
        }
        assert!(log_gamma(&ComplexValue::from_f64(p(), -1.5, 0.0)).is_ok());
    }

    #[test]
    fn recurrence_and_reflection() {
        let z = ComplexValue::from_f64(p(), -2.3, 1.7);
        let one = ComplexValue::one(p());
        let lhs = log_gamma(&(&z + &one)).unwrap();
        let rhs = &log_gamma(&z).unwrap() + &z.ln();
        assert!((&lhs - &rhs).abs_f64() < 1e-34);
        // Γ(z)Γ(1−z) = π / sin(πz), compared after exponentiation
        let g = (&log_gamma(&z).unwrap() + &log_gamma(&(&one - &z)).unwrap()).exp();
        let pz = z.mul_real(&p().pi());
        let expect = ComplexValue::real(p().pi()) / pz.sin();
        assert!(g.relative_distance(&expect).to_f64() < 1e-33);
    }

    #[test]
    fn conjugate_symmetry() {
        let z = ComplexValue::from_f64(p(), 0.25, 3.0);
        let a = log_gamma(&z).unwrap();
        let b = log_gamma(&z.conj()).unwrap();
        assert!((&a - &b.conj()).abs_f64() < 1e-34);
    }
}
