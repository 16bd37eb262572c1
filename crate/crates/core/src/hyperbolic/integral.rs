//! γ⁽²⁾ from the contour integral
//!
//!   log γ(u) = −∫ e^{ux} / ((1−e^{ω₁x})(1−e^{ω₂x})) dx/x
//!
//! over the real line indented above x = 0. The contour is a left ray, an
//! upper semicircle of radius r and a right ray. Each ray may be turned by an
//! angle inside the sector where Re(ωᵢx) keeps its sign, which leaves the
//! value unchanged and maximizes the exponential decay of the integrand.

use std::f64::consts::{FRAC_PI_2, LN_10, PI};

use rug::Float;

use super::{b22, GammaHValue, OmegaPair, Representation};
use crate::error::{Error, Result};
use crate::numeric::{ComplexValue, Precision};
use crate::par::Execution;
use crate::quadrature::AdaptiveRule;

/// Smallest decay rate accepted on a ray.
const MIN_DECAY: f64 = 1e-9;

struct Ray {
    theta: f64,
    decay: f64,
    /// Re(ωᵢ·e^{iθ}) for both periods, all positive.
    period_rates: [f64; 2],
    length: f64,
}

struct Contour {
    radius: f64,
    left: Ray,
    right: Ray,
}

fn clamp_angle(target: f64, lo: f64, hi: f64) -> f64 {
    target.clamp(lo, hi)
}

fn ray_length(decay: f64, rates: [f64; 2], radius: f64, digits: f64) -> f64 {
    // ∫_X^∞ C e^{−cs}/s ds ≤ C e^{−cX}/(cX), with C = ∏ 1/(1 − e^{−aᵢX}).
    let goal = (digits + 4.0) * LN_10;
    let mut x = (goal / decay).max(2.0 * radius);
    for _ in 0..60 {
        let log_c: f64 = rates.iter().map(|a| -(-(-a * x).exp()).ln_1p()).sum();
        let next = ((goal + log_c - (decay * x).ln()) / decay).max(2.0 * radius);
        if (next - x).abs() < 1e-9 * x {
            x = next;
            break;
        }
        x = next;
    }
    x
}

fn plan(u: &ComplexValue, w: &OmegaPair, digits: f64) -> Result<Contour> {
    let (a1, a2) = (w.omega1().arg().to_f64(), w.omega2().arg().to_f64());
    let (lo, hi) = (-FRAC_PI_2 - a1.min(a2), FRAC_PI_2 - a1.max(a2));
    let (center, half) = ((lo + hi) / 2.0, (hi - lo) / 2.0);
    let (lo, hi) = ((center - 0.6 * half).min(0.0), (center + 0.6 * half).max(0.0));
    let m1 = w.omega1().abs_f64();
    let m2 = w.omega2().abs_f64();
    let radius = 1f64.min(PI / m1.max(m2));
    let rates = |theta: f64| [m1 * (a1 + theta).cos(), m2 * (a2 + theta).cos()];

    let v = &(w.omega1() + w.omega2()) - u;
    let (vr, vi) = v.to_f64_pair();
    let theta_r = clamp_angle(-vi.atan2(vr), lo, hi);
    let decay_r = vr.hypot(vi) * (vi.atan2(vr) + theta_r).cos();
    let (ur, ui) = u.to_f64_pair();
    let theta_l = clamp_angle(-ui.atan2(ur), lo, hi);
    let decay_l = ur.hypot(ui) * (ui.atan2(ur) + theta_l).cos();
    if !(decay_r > MIN_DECAY && decay_l > MIN_DECAY) {
        return Err(Error::Domain(format!(
            "the integral representation diverges at u = {u} (decay rates {decay_l:e}, {decay_r:e})"
        )));
    }
    let make = |theta: f64, decay: f64| {
        let period_rates = rates(theta);
        Ray {
            theta,
            decay,
            period_rates,
            length: ray_length(decay, period_rates, radius, digits),
        }
    };
    Ok(Contour {
        radius,
        left: make(theta_l, decay_l),
        right: make(theta_r, decay_r),
    })
}

/// e^{ux} / ((1−e^{ω₁x})(1−e^{ω₂x}) x), rearranged so no exponential overflows.
fn integrand(u: &ComplexValue, w: &OmegaPair, x: &ComplexValue) -> ComplexValue {
    let mut exponent = u * x;
    let mut den = x.clone();
    for omega in [w.omega1(), w.omega2()] {
        let a = omega * x;
        if a.re().is_sign_positive() {
            // 1/(1 − e^a) = e^{−a}/expm1(−a)
            den = &den * &(-&a).exp_m1();
            exponent = &exponent - &a;
        } else {
            den = &den * &(-a.exp_m1());
        }
    }
    &exponent.exp() / &den
}

fn rule_order(prec: Precision) -> usize {
    ((prec.digits() as f64 * 1.2).round() as usize + 4).clamp(20, 400)
}

struct LogIntegral {
    value: ComplexValue,
    error: f64,
}

fn log_integral(u: &ComplexValue, w: &OmegaPair, exec: Execution) -> Result<LogIntegral> {
    let prec = w.precision();
    let bits = prec.bits();
    let digits = prec.digits() as f64;
    let contour = plan(u, w, digits)?;
    let order = rule_order(prec);
    let rays = AdaptiveRule::new(order).with_execution(exec);
    let arc_rule = AdaptiveRule::new(order.max(64)).with_execution(exec);
    let budget = 10f64.powf(-(digits + 2.0));

    let mut panels: Vec<(f64, f64)> = Vec::new();
    let mut pieces = Vec::new();
    for (sign, ray) in [(-1.0, &contour.left), (1.0, &contour.right)] {
        let mut a = contour.radius;
        while a < ray.length {
            let b = (2.0 * a).min(ray.length);
            panels.push((a, b));
            pieces.push((sign, ray.theta));
            a = b;
        }
    }
    let share = budget / (panels.len() + 1) as f64;

    let mut total = ComplexValue::zero(prec);
    let mut error = 0.0;
    for ((a, b), (sign, theta)) in panels.iter().zip(&pieces) {
        // x = sign·s·e^{iθ}; dx/ds = sign·e^{iθ}, and the left ray runs
        // toward the origin, which flips the sign back.
        let dir = ComplexValue::polar(prec, 1.0, &Float::with_val(bits, *theta));
        let step = if *sign < 0.0 { -dir.clone() } else { dir.clone() };
        let f = |s: &Float| -> Result<ComplexValue> {
            let x = step.mul_real(s);
            Ok(&integrand(u, w, &x) * &dir)
        };
        let est = rays.integrate(&f, &Float::with_val(bits, *a), &Float::with_val(bits, *b), share)?;
        total = &total + &est.value;
        error += est.error;
    }

    let r = Float::with_val(bits, contour.radius);
    let f = |phi: &Float| -> Result<ComplexValue> {
        // x = r e^{iφ}, dx = i x dφ
        let x = ComplexValue::polar(prec, 1.0, phi).mul_real(&r);
        Ok((&integrand(u, w, &x) * &x).mul_i())
    };
    let theta_r = Float::with_val(bits, contour.right.theta);
    let end = Float::with_val(bits, contour.left.theta) + prec.pi();
    let arc = arc_rule.integrate(&f, &theta_r, &end, share)?;
    total = &total - &arc.value;
    error += arc.error;

    let tails: f64 = [&contour.left, &contour.right]
        .iter()
        .map(|ray| {
            let c: f64 = ray.period_rates.iter().map(|a| -(-(-a * ray.length).exp()).ln_1p()).sum();
            (c - ray.decay * ray.length).exp() / (ray.decay * ray.length)
        })
        .sum();
    Ok(LogIntegral {
        value: total.finite("gamma_h_integral")?,
        error: error + tails,
    })
}

fn assemble(u: &ComplexValue, w: &OmegaPair, exec: Execution) -> Result<GammaHValue> {
    let li = log_integral(u, w, exec)?;
    let half_pi = w.precision().pi() / 2u32;
    let exponent = &(-b22(u, w).mul_real(&half_pi).mul_i()) - &li.value;
    let value = exponent.exp().finite("gamma_h_integral")?;
    let rounding = 2f64.powi(-(w.precision().bits() as i32) + 16);
    Ok(GammaHValue {
        value,
        representation_used: Representation::Integral,
        estimated_error: li.error + rounding,
    })
}

/// Integral representation on the strip 0 < Re u < Re(ω₁+ω₂).
pub fn gamma_h_integral(u: &ComplexValue, w: &OmegaPair) -> Result<GammaHValue> {
    if !w.strip_contains(u) {
        return Err(Error::Domain(format!(
            "u = {u} is outside the strip 0 < Re u < Re(ω₁+ω₂) = {}",
            (w.omega1() + w.omega2()).re().to_f64()
        )));
    }
    assemble(u, w, Execution::default())
}

/// The same integral wherever turning the rays still gives decay on both
/// sides. This includes points on the strip boundary such as purely
/// imaginary u, which the strict version rejects.
pub fn gamma_h_integral_continued(u: &ComplexValue, w: &OmegaPair) -> Result<GammaHValue> {
    assemble(u, w, Execution::default())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn center_gives_one() {
        let p = Precision::DEFAULT;
        let w = OmegaPair::new(ComplexValue::one(p), ComplexValue::one(p)).unwrap();
        let v = gamma_h_integral(&ComplexValue::one(p), &w).unwrap();
        assert!((&v.value - &ComplexValue::one(p)).abs_f64() < 1e-34, "{}", v.value);
    }
}
