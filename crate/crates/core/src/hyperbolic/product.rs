//! γ⁽²⁾ from the ratio of infinite q-products.
//!
//! Each factor 1 − e^{α+jβ} is formed from the running power t_j = e^α q^j
//! and, when it nears zero, recomputed as −expm1 of the exponent reduced
//! modulo 2πi. Factors below the pole tolerance are dropped and replaced by
//! their first-order slope d/du, which resolves the 0/0 points where a zero
//! of the numerator meets a zero of the denominator.

use rug::Float;

use super::{b22_prefactor, classify_point, pole_error, GammaHValue, OmegaPair, PointClass, Representation};
use crate::error::{Error, Result};
use crate::numeric::{ComplexValue, Precision};

const MAX_TERMS: f64 = 5.0e6;

struct QProduct {
    value: ComplexValue,
    /// d/du of each vanishing factor in the numerator of `value`.
    zeros: Vec<ComplexValue>,
    /// Same, for vanishing factors that ended up in the denominator.
    poles: Vec<ComplexValue>,
    tail: f64,
    terms: usize,
}

/// ∏_{j≥0} (1 − e^{α+jβ}); for Re β > 0 the product is read as
/// 1/∏_{j≥1}(1 − e^{α−jβ}).
fn q_infinite(alpha: &ComplexValue, beta: &ComplexValue, slope: &ComplexValue, prec: Precision) -> Result<QProduct> {
    if beta.re().is_sign_negative() {
        return q_convergent(alpha, beta, slope, prec);
    }
    let inner = q_convergent(&(alpha - beta), &-beta, slope, prec)?;
    Ok(QProduct {
        value: ComplexValue::one(prec) / &inner.value,
        zeros: inner.poles,
        poles: inner.zeros,
        tail: inner.tail,
        terms: inner.terms,
    })
}

fn q_convergent(alpha: &ComplexValue, beta: &ComplexValue, slope: &ComplexValue, prec: Precision) -> Result<QProduct> {
    let bits = prec.bits();
    let log_q = beta.re().to_f64();
    let q_abs = log_q.exp();
    if !(q_abs < 1.0 - 1e-6) {
        return Err(Error::SlowConvergence(format!(
            "|q| = {q_abs} is too close to 1 for the product representation"
        )));
    }
    let target_digits = prec.digits() as f64 + 4.0;
    let ln_target = -target_digits * std::f64::consts::LN_10 + (1.0 - q_abs).ln();
    let start = alpha.re().to_f64();
    let needed = ((start - ln_target) / -log_q).max(0.0);
    if needed > MAX_TERMS {
        return Err(Error::SlowConvergence(format!(
            "q-product would need about {needed:.0} factors (|q| = {q_abs})"
        )));
    }
    let stop = prec.ten_pow_neg(target_digits) * Float::with_val(bits, 1.0 - q_abs);
    let tol = prec.pole_tolerance();
    let quarter = Float::with_val(bits, 0.25);
    let two_pi = prec.pi() * 2u32;
    let q = beta.exp();
    let mut t = alpha.exp();
    let mut value = ComplexValue::one(prec);
    let mut zeros = Vec::new();
    let mut j: u64 = 0;
    loop {
        let size = t.abs();
        if size < stop {
            let tail = (size / Float::with_val(bits, 1.0 - q_abs)).to_f64();
            return Ok(QProduct {
                value,
                zeros,
                poles: Vec::new(),
                tail,
                terms: j as usize,
            });
        }
        let mut factor = &ComplexValue::one(prec) - &t;
        if factor.abs() < quarter {
            let exponent = alpha + &beta.scale(j as f64);
            let turns = Float::with_val(bits, exponent.im() / &two_pi).round();
            let shift = ComplexValue::from_floats(Float::new(bits), turns * &two_pi);
            factor = -(&exponent - &shift).exp_m1();
            if factor.abs() < tol {
                zeros.push(slope.clone());
                t = &t * &q;
                j += 1;
                continue;
            }
        }
        value = &value * &factor;
        t = &t * &q;
        j += 1;
    }
}

/// γ⁽²⁾(u) = e^{−(πi/2)B₂,₂(u)} (q̃e^{2πiu/ω₁}; q̃)_∞ / (e^{2πiu/ω₂}; q)_∞.
///
/// Needs Im(ω₁/ω₂) ≠ 0. When Im(ω₁/ω₂) < 0 (periods given in the reverse
/// order) both q-symbols are read with inverted base, which is the same
/// function.
pub fn gamma_h_product(u: &ComplexValue, w: &OmegaPair) -> Result<GammaHValue> {
    let prec = w.precision();
    if w.has_unimodular_q() {
        return Err(Error::Domain(format!(
            "the product representation needs Im(ω₁/ω₂) ≠ 0, got ω₁/ω₂ = {}",
            w.ratio()
        )));
    }
    let two_pi_i = ComplexValue::from_floats(Float::new(prec.bits()), prec.pi() * 2u32);
    let k1 = &two_pi_i / w.omega1();
    let k2 = &two_pi_i / w.omega2();
    let beta_num = -(&k1 * w.omega2());
    let alpha_num = &(&k1 * u) + &beta_num;
    let beta_den = &k2 * w.omega1();
    let alpha_den = &k2 * u;
    let num = q_infinite(&alpha_num, &beta_num, &k1, prec)?;
    let den = q_infinite(&alpha_den, &beta_den, &k2, prec)?;

    let mut zeros = num.zeros;
    zeros.extend(den.poles);
    let mut poles = num.poles;
    poles.extend(den.zeros);
    let rounding = (num.terms + den.terms + 8) as f64 * 2f64.powi(-(prec.bits() as i32) + 4);
    let mut estimated_error = num.tail + den.tail + rounding;

    let tol = prec.pole_tolerance();
    if poles.len() > zeros.len() {
        return Err(match classify_point(u, w, &tol) {
            PointClass::Pole { n, m } => pole_error(u, n, m),
            _ => Error::PoleOfGammaH {
                u: u.to_string(),
                n: u32::MAX,
                m: u32::MAX,
            },
        });
    }
    if zeros.len() > poles.len() {
        return Ok(GammaHValue {
            value: ComplexValue::zero(prec),
            representation_used: Representation::Product,
            estimated_error: tol.to_f64(),
        });
    }
    let mut ratio = &num.value / &den.value;
    if !zeros.is_empty() {
        for z in &zeros {
            ratio = &ratio * z;
        }
        for p in &poles {
            ratio = &ratio / p;
        }
        estimated_error += tol.to_f64();
    }
    let value = (&b22_prefactor(u, w) * &ratio).finite("gamma_h_product")?;
    Ok(GammaHValue {
        value,
        representation_used: Representation::Product,
        estimated_error,
    })
}
