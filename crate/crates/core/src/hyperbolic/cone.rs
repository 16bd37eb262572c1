//! Large-|z| behaviour of γ⁽²⁾ inside the two asymptotic cones.

use std::f64::consts::PI;

use serde::Serialize;

use super::{b22, gamma_h, GammaMode, OmegaPair};
use crate::error::{Error, Result};
use crate::numeric::ComplexValue;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Cone {
    /// arg ω₁ < arg z < arg ω₂ + π; e^{+(πi/2)B₂,₂}γ⁽²⁾ → 1.
    I,
    /// arg ω₁ − π < arg z < arg ω₂; e^{−(πi/2)B₂,₂}γ⁽²⁾ → 1.
    II,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConeReport {
    pub cone: Cone,
    pub radii: Vec<f64>,
    pub values: Vec<ComplexValue>,
    pub deviations: Vec<f64>,
    /// |value − 1| never increases (up to the noise floor) and ends below 1e-6.
    pub converged: bool,
}

const FINAL_DEVIATION: f64 = 1e-6;

fn inside(angle: f64, lo: f64, hi: f64) -> bool {
    let margin = 1e-12;
    [-2.0 * PI, 0.0, 2.0 * PI]
        .iter()
        .any(|k| angle + k > lo + margin && angle + k < hi - margin)
}

/// The cone containing `direction`, taking the larger argument as ω₁'s.
pub fn cone_of(direction: &ComplexValue, w: &OmegaPair) -> Result<Cone> {
    let (a, b) = (w.omega1().arg().to_f64(), w.omega2().arg().to_f64());
    let (hi, lo) = (a.max(b), a.min(b));
    let (dr, di) = direction.to_f64_pair();
    if dr == 0.0 && di == 0.0 {
        return Err(Error::Cone("direction must be nonzero".into()));
    }
    let angle = di.atan2(dr);
    if inside(angle, hi, lo + PI) {
        Ok(Cone::I)
    } else if inside(angle, hi - PI, lo) {
        Ok(Cone::II)
    } else {
        Err(Error::Cone(format!(
            "arg z = {angle} lies in neither cone (arg ω = {hi}, {lo})"
        )))
    }
}

pub fn cone_asymptotics_check(direction: &ComplexValue, radii: &[f64], w: &OmegaPair) -> Result<ConeReport> {
    let cone = cone_of(direction, w)?;
    if radii.is_empty() || radii.iter().any(|r| !(r.is_finite() && *r > 0.0)) {
        return Err(Error::InvalidParameters("radii must be positive and nonempty".into()));
    }
    let prec = w.precision();
    let unit = direction.mul_real(&(rug::Float::with_val(prec.bits(), 1) / direction.abs()));
    let half_pi = prec.pi() / 2u32;
    let sign = if cone == Cone::I { 1.0 } else { -1.0 };
    let mut values = Vec::with_capacity(radii.len());
    let mut deviations = Vec::with_capacity(radii.len());
    for &r in radii {
        let z = unit.scale(r);
        let g = gamma_h(&z, w, GammaMode::Auto)?.value;
        let factor = b22(&z, w).mul_real(&half_pi).mul_i().scale(sign).exp();
        let v = &factor * &g;
        deviations.push((&v - &ComplexValue::one(prec)).abs_f64());
        values.push(v);
    }
    let floor = prec.pole_tolerance().to_f64();
    let monotone = deviations
        .windows(2)
        .all(|d| d[1] <= d[0] || d[1] < floor);
    let converged = monotone && *deviations.last().expect("nonempty") < FINAL_DEVIATION;
    Ok(ConeReport {
        cone,
        radii: radii.to_vec(),
        values,
        deviations,
        converged,
    })
}
