//! The singular limit √(ω₁/ω₂) = 1 + iδ, δ → 0⁺, of γ⁽²⁾.
//!
//! With ω₁ = 1+iδ, ω₂ = 1/(1+iδ) and u = n + 1 + yδ,
//!
//!   γ⁽²⁾(u; ω) → e^{−(πi/2)n²} (4πδ)^n ((1−n−iy)/2)_n.
//!
//! The left side is evaluated through the product representation, where
//! |q| = e^{−4πδ}; the number of factors grows like 1/δ.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hyperbolic::{gamma_h_product, OmegaPair};
use crate::numeric::{pochhammer, ComplexValue, Precision};
use crate::par::Execution;

pub const MAX_DELTA: f64 = 0.2;
pub const N_RANGE: i64 = 6;

#[derive(Clone, Debug, Serialize)]
pub struct DegenerationPoint {
    pub n: i64,
    pub y: ComplexValue,
    pub delta: f64,
}

impl DegenerationPoint {
    pub fn new(n: i64, y: ComplexValue, delta: f64) -> Result<Self> {
        if !(delta > 0.0 && delta <= MAX_DELTA) {
            return Err(Error::InvalidParameters(format!("δ = {delta} must lie in (0, {MAX_DELTA}]")));
        }
        if n.abs() > N_RANGE {
            return Err(Error::InvalidParameters(format!("n = {n} outside [−{N_RANGE}, {N_RANGE}]")));
        }
        Ok(DegenerationPoint { n, y, delta })
    }

    fn precision(&self) -> Precision {
        self.y.precision()
    }

    /// (1+iδ, 1/(1+iδ)).
    pub fn omega(&self) -> OmegaPair {
        let p = self.precision();
        let w1 = ComplexValue::from_f64(p, 1.0, self.delta);
        let w2 = &ComplexValue::one(p) / &w1;
        OmegaPair::new(w1, w2).expect("both periods have positive real part")
    }

    /// n + 1 + yδ.
    pub fn argument(&self) -> ComplexValue {
        let p = self.precision();
        &ComplexValue::from_f64(p, (self.n + 1) as f64, 0.0) + &self.y.scale(self.delta)
    }
}

/// e^{−(πi/2)n²} (4πδ)^n ((1−n−iy)/2)_n.
pub fn limit_rhs(p: &DegenerationPoint) -> Result<ComplexValue> {
    let prec = p.precision();
    let phase = ComplexValue::unit_root(prec, -(p.n * p.n).rem_euclid(4), 2);
    let four_pi_delta = prec.pi() * 4u32 * rug::Float::with_val(prec.bits(), p.delta);
    let power = ComplexValue::real(four_pi_delta).powi(p.n);
    let a = (&ComplexValue::from_f64(prec, (1 - p.n) as f64, 0.0) - &p.y.mul_i()).scale(0.5);
    let poch = pochhammer(&a, p.n)?;
    Ok(&(&phase * &power) * &poch)
}

/// γ⁽²⁾(n + 1 + yδ; 1+iδ, 1/(1+iδ)) from the product representation.
pub fn limit_lhs(p: &DegenerationPoint) -> Result<ComplexValue> {
    Ok(gamma_h_product(&p.argument(), &p.omega())?.value)
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanRow {
    pub delta: f64,
    pub lhs: Option<ComplexValue>,
    pub rhs: Option<ComplexValue>,
    pub ratio: Option<ComplexValue>,
    /// |ratio − 1|.
    pub deviation: Option<f64>,
    /// arg(ratio).
    pub phase: Option<f64>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanReport {
    pub n: i64,
    pub y: ComplexValue,
    pub rows: Vec<ScanRow>,
    /// |ratio − 1| strictly decreasing along the rows; absent for a single δ.
    pub decreasing: Option<bool>,
}

impl ScanReport {
    pub fn final_deviation(&self) -> Option<f64> {
        self.rows.last().and_then(|r| r.deviation)
    }
}

fn scan_row(n: i64, y: &ComplexValue, delta: f64) -> ScanRow {
    let outcome = DegenerationPoint::new(n, y.clone(), delta)
        .and_then(|p| Ok((limit_lhs(&p)?, limit_rhs(&p)?)))
        .and_then(|(lhs, rhs)| {
            let ratio = (&lhs / &rhs).finite("limit ratio")?;
            Ok((lhs, rhs, ratio))
        });
    match outcome {
        Ok((lhs, rhs, ratio)) => {
            let deviation = (&ratio - &ComplexValue::one(y.precision())).abs_f64();
            let phase = ratio.arg().to_f64();
            ScanRow {
                delta,
                lhs: Some(lhs),
                rhs: Some(rhs),
                ratio: Some(ratio),
                deviation: Some(deviation),
                phase: Some(phase),
                error: None,
            }
        }
        Err(e) => ScanRow {
            delta,
            lhs: None,
            rhs: None,
            ratio: None,
            deviation: None,
            phase: None,
            error: Some(e.to_string()),
        },
    }
}

pub fn limit_scan(n: i64, y: &ComplexValue, deltas: &[f64]) -> Result<ScanReport> {
    limit_scan_with(n, y, deltas, Execution::default())
}

pub fn limit_scan_with(n: i64, y: &ComplexValue, deltas: &[f64], exec: Execution) -> Result<ScanReport> {
    if deltas.is_empty() {
        return Err(Error::InvalidScan("no δ values given".into()));
    }
    if let Some(bad) = deltas.iter().find(|d| !(**d > 0.0 && **d <= MAX_DELTA)) {
        return Err(Error::InvalidScan(format!("δ = {bad} outside (0, {MAX_DELTA}]")));
    }
    if deltas.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::InvalidScan("δ values must be strictly decreasing".into()));
    }
    if n.abs() > N_RANGE {
        return Err(Error::InvalidScan(format!("n = {n} outside [−{N_RANGE}, {N_RANGE}]")));
    }
    let rows = exec.map(deltas, |&d| scan_row(n, y, d));
    let decreasing = (rows.len() > 1).then(|| {
        rows.windows(2).all(|w| match (w[0].deviation, w[1].deviation) {
            (Some(a), Some(b)) => b < a,
            _ => false,
        })
    });
    Ok(ScanReport {
        n,
        y: y.clone(),
        rows,
        decreasing,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Precision {
        Precision::DEFAULT
    }

    #[test]
    fn rhs_special_cases() {
        let y = ComplexValue::from_f64(p(), 0.4, -0.2);
        let zero = DegenerationPoint::new(0, y.clone(), 0.05).unwrap();
        assert!((&limit_rhs(&zero).unwrap() - &ComplexValue::one(p())).abs_f64() < 1e-36);
        // n = 1: e^{−iπ/2}·4πδ·(−iy/2)
        let one = DegenerationPoint::new(1, y.clone(), 0.05).unwrap();
        let expected = (-y.mul_i().scale(0.5)).mul_i().scale(-4.0 * std::f64::consts::PI * 0.05);
        assert!(limit_rhs(&one).unwrap().relative_distance(&expected).to_f64() < 1e-15);
    }

    #[test]
    fn point_validation() {
        let y = ComplexValue::zero(p());
        assert!(DegenerationPoint::new(0, y.clone(), 0.0).is_err());
        assert!(DegenerationPoint::new(0, y.clone(), 0.3).is_err());
        assert!(DegenerationPoint::new(7, y, 0.1).is_err());
    }

    #[test]
    fn scan_validation() {
        let y = ComplexValue::one(p());
        assert!(matches!(limit_scan(0, &y, &[]), Err(Error::InvalidScan(_))));
        assert!(matches!(limit_scan(0, &y, &[0.01, 0.1]), Err(Error::InvalidScan(_))));
        assert!(matches!(limit_scan(0, &y, &[-0.1]), Err(Error::InvalidScan(_))));
        let single = limit_scan(0, &y, &[0.1]).unwrap();
        assert!(single.decreasing.is_none());
    }
}
