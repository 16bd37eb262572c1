//! Pochhammer symbols with signed integer shifts.
//!
//! For n ≥ 0, (a)_n = a(a+1)…(a+n−1); for n < 0, (a)_n = 1/((a−1)(a−2)…(a+n)).
//! Both branches are finite products in either arithmetic; log-gamma is
//! never involved.

use super::complex::ComplexValue;
use super::gamma::log_gamma;
use super::scalar::Scalar;
use crate::error::{Error, Result};

pub fn pochhammer<S: Scalar>(a: &S, n: i64) -> Result<S> {
    if n >= 0 {
        let mut acc = a.one_like();
        for j in 0..n {
            acc = acc * (a.clone() + a.from_ratio_like(j, 1));
        }
        return Ok(acc);
    }
    let mut den = a.one_like();
    for j in 1..=n.unsigned_abs() as i64 {
        let factor = a.clone() - a.from_ratio_like(j, 1);
        if factor.is_negligible() {
            return Err(Error::PoleAtEvaluation(format!(
                "({a:?})_{n}: factor a-{j} vanishes"
            )));
        }
        den = den * factor;
    }
    den.try_recip().ok_or_else(|| {
        Error::PoleAtEvaluation(format!("({a:?})_{n}: product underflows"))
    })
}

/// `(a±b)_{n±m}` = (a+b)_{n+m} · (a−b)_{n−m}.
pub fn pochhammer_pm<S: Scalar>(a: &S, b: &S, n: i64, m: i64) -> Result<S> {
    let plus = pochhammer(&(a.clone() + b), n + m)?;
    let minus = pochhammer(&(a.clone() - b), n - m)?;
    Ok(plus * minus)
}

/// Γ(a+x)/Γ(a) for an arbitrary complex shift, through log-gamma.
///
/// Independent of [`pochhammer`]; used where the shift is not an integer.
pub fn pochhammer_gamma_ratio(a: &ComplexValue, x: &ComplexValue) -> Result<ComplexValue> {
    let top = log_gamma(&(a + x))?;
    let bottom = log_gamma(a)?;
    (&top - &bottom).exp().finite("pochhammer_gamma_ratio")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{GaussianRational as Q, Precision};
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Q {
        Q::from_ratio(n, d)
    }

    #[test]
    fn listed_values() {
        let a = Q::from_parts(3, -2, 7);
        assert_eq!(pochhammer(&a, 0).unwrap(), Q::one());
        assert_eq!(pochhammer(&q(1, 1), 3).unwrap(), q(6, 1));
        assert_eq!(pochhammer(&q(2, 1), -1).unwrap(), q(1, 1));
        assert_eq!(pochhammer(&q(5, 1), -2).unwrap(), q(1, 12));
    }

    #[test]
    fn pm_convention() {
        let a = Q::from_parts(2, 5, 3);
        let p = pochhammer(&a, 4).unwrap();
        assert_eq!(pochhammer_pm(&a, &Q::zero(), 4, 0).unwrap(), &p * &p);
        assert_eq!(pochhammer_pm(&q(3, 1), &q(1, 1), 1, 1).unwrap(), q(20, 1));
        // (3/2)_1 · (1/2)_3 computed factor by factor
        let oracle = q(3, 2) * (q(1, 2) * q(3, 2) * q(5, 2));
        assert_eq!(pochhammer_pm(&q(1, 1), &q(1, 2), 2, -1).unwrap(), oracle);
        assert_eq!(oracle, q(45, 16));
    }

    #[test]
    fn negative_shift_pole() {
        // (3)_{-3} needs 1/((3-1)(3-2)(3-3))
        assert!(matches!(pochhammer(&q(3, 1), -3), Err(Error::PoleAtEvaluation(_))));
        let p = Precision::DEFAULT;
        let near = ComplexValue::from_f64(p, 3.0 + 1e-25, 0.0);
        assert!(pochhammer(&near, -3).is_err());
        let ok = ComplexValue::from_f64(p, 3.0 + 1e-10, 0.0);
        assert!(pochhammer(&ok, -3).is_ok());
    }

    #[test]
    fn gamma_ratio_matches_products() {
        let p = Precision::DEFAULT;
        let a = ComplexValue::from_f64(p, 0.3, -1.1);
        for n in [-4i64, -1, 0, 2, 5] {
            let direct = pochhammer(&a, n).unwrap();
            let via_gamma = pochhammer_gamma_ratio(&a, &ComplexValue::from_f64(p, n as f64, 0.0)).unwrap();
            assert!(direct.relative_distance(&via_gamma).to_f64() < 1e-32, "n = {n}");
        }
    }

    fn gaussian() -> impl Strategy<Value = Q> {
        (-40i64..40, -40i64..40, 1i64..30).prop_map(|(r, i, d)| Q::from_parts(r, i, d))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn concatenation(a in gaussian(), n in -5i64..=5, m in -5i64..=5) {
            let whole = pochhammer(&a, n + m);
            let left = pochhammer(&a, n);
            let right = pochhammer(&(&a + &q(n, 1)), m);
            if let (Ok(w), Ok(l), Ok(r)) = (whole, left, right) {
                prop_assert_eq!(w, l * r);
            }
        }

        #[test]
        fn sign_flip(a in gaussian(), n in 1i64..=5) {
            if let (Ok(x), Ok(y)) = (pochhammer(&a, -n), pochhammer(&(&a - &q(n, 1)), n)) {
                prop_assert_eq!(x * y, Q::one());
            }
        }

        #[test]
        fn exact_float_agreement(a in gaussian(), n in -5i64..=5) {
            let p = Precision::DEFAULT;
            if let Ok(exact) = pochhammer(&a, n) {
                let float = pochhammer(&ComplexValue::from_gaussian(p, &a), n).unwrap();
                let reference = ComplexValue::from_gaussian(p, &exact);
                prop_assert!(float.relative_distance(&reference).to_f64() <= 1e-28);
            }
        }
    }
}
