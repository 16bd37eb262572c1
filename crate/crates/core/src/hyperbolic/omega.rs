use std::cmp::Ordering;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::numeric::{ComplexValue, Precision};

/// A pair of quasi-periods with positive real parts.
#[derive(Clone, Debug, PartialEq)]
pub struct OmegaPair {
    omega1: ComplexValue,
    omega2: ComplexValue,
}

impl OmegaPair {
    /// Requires Re ωᵢ > 0 and arg ω₁ ≥ arg ω₂.
    pub fn new(omega1: ComplexValue, omega2: ComplexValue) -> Result<Self> {
        let pair = Self::new_unordered(omega1, omega2)?;
        let slack = pair.precision().pole_tolerance();
        let gap = pair.omega1.arg() - pair.omega2.arg();
        if gap < -slack {
            return Err(Error::InvalidParameters(format!(
                "need arg ω₁ ≥ arg ω₂, got ω₁ = {}, ω₂ = {}",
                pair.omega1, pair.omega2
            )));
        }
        Ok(pair)
    }

    /// Requires only Re ωᵢ > 0. Every evaluator accepts either order.
    pub fn new_unordered(omega1: ComplexValue, omega2: ComplexValue) -> Result<Self> {
        for (name, w) in [("ω₁", &omega1), ("ω₂", &omega2)] {
            if !w.is_finite() || w.re().cmp0() != Some(Ordering::Greater) {
                return Err(Error::InvalidParameters(format!(
                    "{name} = {w} must have a positive real part"
                )));
            }
        }
        Ok(OmegaPair { omega1, omega2 })
    }

    /// ω₁ = e^{iπ·num/den}, ω₂ = its conjugate.
    pub fn conjugate_unit(prec: Precision, num: i64, den: i64) -> Result<Self> {
        Self::new(
            ComplexValue::unit_root(prec, num, den),
            ComplexValue::unit_root(prec, -num, den),
        )
    }

    pub fn omega1(&self) -> &ComplexValue {
        &self.omega1
    }

    pub fn omega2(&self) -> &ComplexValue {
        &self.omega2
    }

    pub fn precision(&self) -> Precision {
        Precision::from_bits(self.omega1.prec_bits().min(self.omega2.prec_bits()))
    }

    pub fn swapped(&self) -> OmegaPair {
        OmegaPair {
            omega1: self.omega2.clone(),
            omega2: self.omega1.clone(),
        }
    }

    /// (λω₁, λω₂); fails when a real part stops being positive.
    pub fn scaled(&self, lambda: &ComplexValue) -> Result<OmegaPair> {
        Self::new_unordered(&self.omega1 * lambda, &self.omega2 * lambda)
    }

    pub fn ratio(&self) -> ComplexValue {
        &self.omega1 / &self.omega2
    }

    /// e^{2πiω₁/ω₂}.
    pub fn q(&self) -> ComplexValue {
        let two_pi = self.precision().pi() * 2u32;
        self.ratio().mul_real(&two_pi).mul_i().exp()
    }

    /// e^{−2πiω₂/ω₁}.
    pub fn q_tilde(&self) -> ComplexValue {
        let two_pi = self.precision().pi() * 2u32;
        (-(&self.omega2 / &self.omega1).mul_real(&two_pi).mul_i()).exp()
    }

    /// √(ω₁ω₂) on the branch with positive real part.
    pub fn sqrt_product(&self) -> ComplexValue {
        (&self.omega1 * &self.omega2).sqrt()
    }

    /// True when ω₁/ω₂ is real to within the pole tolerance, so |q| = 1.
    pub fn has_unimodular_q(&self) -> bool {
        self.ratio().im().clone().abs() <= self.precision().pole_tolerance()
    }

    /// 0 < Re u < Re(ω₁+ω₂).
    pub fn strip_contains(&self, u: &ComplexValue) -> bool {
        let upper = (&self.omega1 + &self.omega2).re().clone();
        u.re().cmp0() == Some(Ordering::Greater) && *u.re() < upper
    }
}

impl Serialize for OmegaPair {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("OmegaPair", 2)?;
        s.serialize_field("omega1", &self.omega1)?;
        s.serialize_field("omega2", &self.omega2)?;
        s.end()
    }
}
