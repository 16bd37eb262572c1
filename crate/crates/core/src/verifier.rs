//! Quadrature checks of the hyperbolic beta integral and of the
//! V-function transformation, with every γ⁽²⁾ evaluated through `gamma_h`.
//!
//! Integrals run up the imaginary axis, so only parameters with Re g_k > 0
//! are admitted. The kernel is even in z, and ∫_{−iT}^{iT} Δ(z) dz/(2i√(ω₁ω₂))
//! is evaluated as ∫_0^T Δ(it) dt / √(ω₁ω₂).

use std::cmp::Ordering;

use rug::Float;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hyperbolic::{gamma_h, GammaMode, OmegaPair};
use crate::numeric::{ComplexValue, HalfInteger, Mode};
use crate::par::Execution;
use crate::quadrature::AdaptiveRule;
use crate::rational::{judge, VerificationReport};

/// Parameters g_k of a hyperbolic integral with its periods.
#[derive(Clone, Debug, Serialize)]
pub struct HyperbolicParams {
    g: Vec<ComplexValue>,
    w: OmegaPair,
}

fn balance_slack(w: &OmegaPair) -> f64 {
    10f64.powi(-(w.precision().digits() as i32) + 6)
}

impl HyperbolicParams {
    /// 6 entries with Σg = ω₁+ω₂, or 8 with Σg = 2(ω₁+ω₂); Re g_k > 0.
    pub fn new(g: Vec<ComplexValue>, w: OmegaPair) -> Result<Self> {
        let multiple = match g.len() {
            6 => 1.0,
            8 => 2.0,
            k => return Err(Error::InvalidParameters(format!("hyperbolic sets have 6 or 8 entries, got {k}"))),
        };
        for (k, gk) in g.iter().enumerate() {
            if !gk.is_finite() || gk.re().cmp0() != Some(Ordering::Greater) {
                return Err(Error::InvalidParameters(format!(
                    "Re g_{} must be positive for the imaginary-axis contour, got g_{} = {gk}",
                    k + 1,
                    k + 1
                )));
            }
        }
        let target = (w.omega1() + w.omega2()).scale(multiple);
        let total = g.iter().skip(1).fold(g[0].clone(), |acc, x| &acc + x);
        let off = (&total - &target).abs_f64();
        if off > balance_slack(&w) * target.abs_f64() {
            return Err(Error::InvalidParameters(format!(
                "balancing needs Σg_k = {target}, got {total}"
            )));
        }
        Ok(HyperbolicParams { g, w })
    }

    pub fn g(&self) -> &[ComplexValue] {
        &self.g
    }

    pub fn omega(&self) -> &OmegaPair {
        &self.w
    }

    pub fn size(&self) -> usize {
        self.g.len()
    }

    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let mut seen = vec![false; self.size()];
        if perm.len() != self.size() || perm.iter().any(|&i| i >= self.size() || std::mem::replace(&mut seen[i], true)) {
            return Err(Error::InvalidParameters("not a permutation".into()));
        }
        Ok(HyperbolicParams {
            g: perm.iter().map(|&i| self.g[i].clone()).collect(),
            w: self.w.clone(),
        })
    }
}

fn gamma2(u: &ComplexValue, w: &OmegaPair) -> Result<ComplexValue> {
    Ok(gamma_h(u, w, GammaMode::Auto)?.value)
}

/// ∏_k γ⁽²⁾(g_k+z)γ⁽²⁾(g_k−z) / (γ⁽²⁾(2z)γ⁽²⁾(−2z)).
pub fn kernel_delta(z: &ComplexValue, h: &HyperbolicParams) -> Result<ComplexValue> {
    if z.re().cmp0() != Some(Ordering::Equal) {
        return Err(Error::Domain(format!("kernel nodes lie on the imaginary axis, got z = {z}")));
    }
    if z.is_exact_zero() {
        return Err(Error::Domain("z = 0 is not a quadrature node".into()));
    }
    // Δ is even; evaluating at the upper representative keeps it even bit for bit.
    let upper;
    let z = if z.im().is_sign_negative() {
        upper = -z;
        &upper
    } else {
        z
    };
    let w = &h.w;
    let mut num = ComplexValue::one(w.precision());
    for g in &h.g {
        num = &num * &gamma2(&(g + z), w)?;
        num = &num * &gamma2(&(g - z), w)?;
    }
    let two_z = z.scale(2.0);
    let den = &gamma2(&two_z, w)? * &gamma2(&-&two_z, w)?;
    (&num / &den).finite("kernel_delta")
}

/// 2π·Re((ω₁+ω₂)/(ω₁ω₂)): the decay rate of |Δ(it)| for both 6 and 8
/// parameters, as measured and as follows from the cone asymptotics of γ⁽²⁾.
pub fn kernel_decay_rate(w: &OmegaPair) -> f64 {
    let s = w.omega1() + w.omega2();
    let ratio = &s / &(w.omega1() * w.omega2());
    2.0 * std::f64::consts::PI * ratio.re().to_f64()
}

/// The exponent 6π·Re((ω₁+ω₂)/(ω₁ω₂)) stated for the cones.
pub fn stated_cone_rate(w: &OmegaPair) -> f64 {
    3.0 * kernel_decay_rate(w)
}

fn kernel_at(t: f64, h: &HyperbolicParams) -> Result<ComplexValue> {
    let z = ComplexValue::from_f64(h.w.precision(), 0.0, t);
    kernel_delta(&z, h)
}

#[derive(Clone, Debug, Serialize)]
pub struct IntegralValue {
    pub value: ComplexValue,
    pub error: f64,
    /// Upper end T of the t-range.
    pub truncation: f64,
    pub tail_bound: f64,
    pub evaluations: usize,
}

/// Picks T with |Δ(iT)|/κ below `target`, extrapolating from the decay rate κ.
fn truncation_point(h: &HyperbolicParams, target: f64) -> Result<(f64, f64)> {
    let kappa = kernel_decay_rate(&h.w);
    let mut t = 1.0;
    for _ in 0..12 {
        let tail = kernel_at(t, h)?.abs_f64() / kappa;
        if tail <= target {
            return Ok((t, tail));
        }
        t += (tail / target).ln() / kappa + std::f64::consts::LN_10 / kappa;
    }
    Err(Error::QuadratureFailure(format!("kernel tail still above {target:e} at t = {t}")))
}

/// I(g) = ∫_{−i∞}^{i∞} Δ(z) dz/(2i√(ω₁ω₂)) to absolute accuracy `abs_tol`.
pub fn hyperbolic_integral(h: &HyperbolicParams, abs_tol: f64, exec: Execution) -> Result<IntegralValue> {
    let (truncation, tail_bound) = truncation_point(h, abs_tol / 10.0)?;
    let bits = h.w.precision().bits();
    let order = (h.w.precision().digits() as usize).clamp(16, 48);
    let rule = AdaptiveRule::new(order).with_execution(exec);
    let f = |t: &Float| -> Result<ComplexValue> {
        let z = ComplexValue::from_floats(Float::new(bits), t.clone());
        kernel_delta(&z, h)
    };
    let panels = truncation.ceil() as usize;
    let share = abs_tol / (2.0 * panels as f64);
    let mut value = ComplexValue::zero(h.w.precision());
    let mut error = tail_bound;
    let mut evaluations = 0;
    for p in 0..panels {
        let a = Float::with_val(bits, p as f64 * truncation / panels as f64);
        let b = Float::with_val(bits, (p + 1) as f64 * truncation / panels as f64);
        let est = rule.integrate(&f, &a, &b, share)?;
        value = &value + &est.value;
        error += est.error;
        evaluations += est.evaluations;
    }
    let value = &value / &h.w.sqrt_product();
    Ok(IntegralValue {
        value,
        error,
        truncation,
        tail_bound,
        evaluations,
    })
}

/// Rough size of I(g) from a coarse rule, used to turn a relative tolerance
/// into an absolute one.
fn integral_scale(h: &HyperbolicParams) -> Result<f64> {
    let kappa = kernel_decay_rate(&h.w);
    let peak = [0.125, 0.25, 0.5, 1.0]
        .iter()
        .map(|&t| kernel_at(t, h).map(|v| v.abs_f64()))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    Ok(peak.max(f64::MIN_POSITIVE) / kappa.min(1.0))
}

fn pair_product(g: &[ComplexValue], w: &OmegaPair) -> Result<ComplexValue> {
    let mut acc = ComplexValue::one(w.precision());
    for j in 0..g.len() {
        for k in j + 1..g.len() {
            acc = &acc * &gamma2(&(&g[j] + &g[k]), w)?;
        }
    }
    Ok(acc)
}

fn float_report(lhs: ComplexValue, rhs: ComplexValue, tol: f64, quadrature_error: f64) -> VerificationReport<ComplexValue> {
    let (status, relative_error) = judge(&lhs, &rhs, tol);
    VerificationReport {
        lhs,
        rhs,
        contributing_terms: Vec::new(),
        rhs_terms: Vec::new(),
        max_window: HalfInteger::ZERO,
        window_closed: true,
        status,
        mode: Mode::Float,
        relative_error,
        quadrature_error: Some(quadrature_error),
    }
}

/// I(g) against ∏_{j<k}γ⁽²⁾(g_j+g_k) for a 6-parameter set.
pub fn verify_hyperbolic_beta(h: &HyperbolicParams, tol: f64) -> Result<VerificationReport<ComplexValue>> {
    verify_hyperbolic_beta_with(h, tol, Execution::default())
}

pub fn verify_hyperbolic_beta_with(
    h: &HyperbolicParams,
    tol: f64,
    exec: Execution,
) -> Result<VerificationReport<ComplexValue>> {
    if h.size() != 6 {
        return Err(Error::InvalidParameters(format!("the beta integral takes 6 parameters, got {}", h.size())));
    }
    let abs_tol = tol * integral_scale(h)? / 100.0;
    let lhs = hyperbolic_integral(h, abs_tol, exec)?;
    let rhs = pair_product(&h.g, &h.w)?;
    let rel = lhs.error / rhs.abs_f64().max(f64::MIN_POSITIVE);
    Ok(float_report(lhs.value, rhs, tol, rel))
}

/// λ_j = g_j + ξ, λ_{j+4} = g_{j+4} − ξ with ξ = ½(ω₁+ω₂ − Σ_{j≤4}g_j).
pub fn v_transform(h: &HyperbolicParams) -> Result<(ComplexValue, HyperbolicParams)> {
    if h.size() != 8 {
        return Err(Error::InvalidParameters(format!("the V-transformation takes 8 parameters, got {}", h.size())));
    }
    let w = &h.w;
    let first: ComplexValue = h.g[..4].iter().skip(1).fold(h.g[0].clone(), |acc, x| &acc + x);
    let xi = (&(w.omega1() + w.omega2()) - &first).scale(0.5);
    let lambda: Vec<ComplexValue> = h
        .g
        .iter()
        .enumerate()
        .map(|(k, g)| if k < 4 { g + &xi } else { g - &xi })
        .collect();
    if let Some(k) = lambda.iter().position(|l| l.re().cmp0() != Some(Ordering::Greater)) {
        return Err(Error::TransformOutOfDomain(format!(
            "Re λ_{} = {} ≤ 0 (ξ = {xi}); resample the parameters",
            k + 1,
            lambda[k].re().to_f64()
        )));
    }
    Ok((xi, HyperbolicParams::new(lambda, w.clone())?))
}

/// I(g) against ∏_{j<k≤4}γ⁽²⁾(g_j+g_k) ∏_{5≤j<k}γ⁽²⁾(g_j+g_k) · I(λ).
pub fn verify_v_transform(h: &HyperbolicParams, tol: f64) -> Result<VerificationReport<ComplexValue>> {
    verify_v_transform_with(h, tol, Execution::default())
}

pub fn verify_v_transform_with(
    h: &HyperbolicParams,
    tol: f64,
    exec: Execution,
) -> Result<VerificationReport<ComplexValue>> {
    let (_, lambda) = v_transform(h)?;
    let w = &h.w;
    let abs_lhs = tol * integral_scale(h)? / 100.0;
    let abs_rhs = tol * integral_scale(&lambda)? / 100.0;
    let lhs = hyperbolic_integral(h, abs_lhs, exec)?;
    let transformed = hyperbolic_integral(&lambda, abs_rhs, exec)?;
    let prefactor = &pair_product(&h.g[..4], w)? * &pair_product(&h.g[4..], w)?;
    let rhs = &prefactor * &transformed.value;
    let scale = rhs.abs_f64().max(f64::MIN_POSITIVE);
    let quad = (lhs.error + transformed.error * prefactor.abs_f64()) / scale;
    Ok(float_report(lhs.value, rhs, tol, quad))
}

#[derive(Clone, Debug, Serialize)]
pub struct TailFit {
    pub samples: Vec<(f64, f64)>,
    /// −slope of ln|Δ(it)| against t.
    pub measured: f64,
    pub stated: f64,
    pub derived: f64,
    pub deviation_from_stated: f64,
    pub deviation_from_derived: f64,
}

/// Least-squares decay rate of |Δ(it)| on `count` points of [t0, t1].
pub fn measure_tail_exponent(h: &HyperbolicParams, t0: f64, t1: f64, count: usize) -> Result<TailFit> {
    if count < 2 || t0 <= 0.0 || t1 <= t0 {
        return Err(Error::InvalidParameters("tail fit needs 0 < t0 < t1 and two samples".into()));
    }
    let samples = (0..count)
        .map(|i| {
            let t = t0 + (t1 - t0) * i as f64 / (count - 1) as f64;
            let v = kernel_at(t, h)?;
            Ok((t, v.abs().ln().to_f64()))
        })
        .collect::<Result<Vec<_>>>()?;
    let n = count as f64;
    let mean_t = samples.iter().map(|s| s.0).sum::<f64>() / n;
    let mean_l = samples.iter().map(|s| s.1).sum::<f64>() / n;
    let cov: f64 = samples.iter().map(|s| (s.0 - mean_t) * (s.1 - mean_l)).sum();
    let var: f64 = samples.iter().map(|s| (s.0 - mean_t).powi(2)).sum();
    let measured = -cov / var;
    let stated = stated_cone_rate(&h.w);
    let derived = kernel_decay_rate(&h.w);
    Ok(TailFit {
        samples,
        measured,
        stated,
        derived,
        deviation_from_stated: (measured - stated).abs() / stated,
        deviation_from_derived: (measured - derived).abs() / derived,
    })
}
