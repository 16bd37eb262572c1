//! The hyperbolic gamma function γ⁽²⁾(u; ω₁, ω₂).
//!
//! Two representations are implemented: the ratio of q-products (needs
//! Im(ω₁/ω₂) ≠ 0) and the contour integral (needs u in the strip
//! 0 < Re u < Re(ω₁+ω₂)). Both return γ⁽²⁾ = e^{−(πi/2)B₂,₂(u)}·γ(u).

mod cone;
mod integral;
mod omega;
mod product;

pub use cone::{cone_asymptotics_check, cone_of, Cone, ConeReport};
pub use integral::{gamma_h_integral, gamma_h_integral_continued};
pub use omega::OmegaPair;
pub use product::gamma_h_product;

use rug::Float;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{ComplexValue, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Representation {
    Product,
    Integral,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GammaMode {
    #[default]
    Auto,
    Product,
    Integral,
}

#[derive(Clone, Debug, Serialize)]
pub struct GammaHValue {
    pub value: ComplexValue,
    pub representation_used: Representation,
    /// Relative error bound (truncation plus quadrature).
    pub estimated_error: f64,
}

/// `((u − (ω₁+ω₂)/2)² − (ω₁²+ω₂²)/12) / (ω₁ω₂)`, in either arithmetic.
pub fn bernoulli_b22<S: Scalar>(u: &S, w1: &S, w2: &S) -> Result<S> {
    let half = u.from_ratio_like(1, 2);
    let twelfth = u.from_ratio_like(1, 12);
    let shifted = u.clone() - &((w1.clone() + w2) * &half);
    let squares = w1.clone() * w1 + &(w2.clone() * w2);
    let num = shifted.clone() * &shifted - &(squares * &twelfth);
    num.try_div(&(w1.clone() * w2))
        .ok_or_else(|| Error::InvalidParameters("B22 needs ω₁ω₂ ≠ 0".into()))
}

pub(crate) fn b22(u: &ComplexValue, w: &OmegaPair) -> ComplexValue {
    bernoulli_b22(u, w.omega1(), w.omega2()).expect("OmegaPair periods are nonzero")
}

/// e^{−(πi/2)·B₂,₂(u)}.
pub(crate) fn b22_prefactor(u: &ComplexValue, w: &OmegaPair) -> ComplexValue {
    let half_pi = u.precision().pi() / 2u32;
    (-b22(u, w).mul_real(&half_pi).mul_i()).exp()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum PointClass {
    Pole { n: u32, m: u32 },
    Zero { n: u32, m: u32 },
    Regular,
}

pub const CLASSIFY_RANGE: u32 = 40;

/// Finds `n, m ∈ [0, 40]` with u = −nω₁−mω₂ (pole) or u = (n+1)ω₁+(m+1)ω₂
/// (zero) within `tol`. Poles take precedence.
pub fn classify_point(u: &ComplexValue, w: &OmegaPair, tol: &Float) -> PointClass {
    let (ur, ui) = u.to_f64_pair();
    let (ar, ai) = w.omega1().to_f64_pair();
    let (br, bi) = w.omega2().to_f64_pair();
    let scale = (ur.hypot(ui) + 42.0 * (ar.hypot(ai) + br.hypot(bi))).max(1.0);
    let screen = tol.to_f64() + 1e-12 * scale;
    let confirm = |target: ComplexValue| (u - &target).abs() < *tol;
    let lattice = |n: u32, m: u32| {
        &w.omega1().scale(n as f64) + &w.omega2().scale(m as f64)
    };
    for n in 0..=CLASSIFY_RANGE {
        for m in 0..=CLASSIFY_RANGE {
            let (nf, mf) = (n as f64, m as f64);
            let d = (ur + nf * ar + mf * br).hypot(ui + nf * ai + mf * bi);
            if d < screen && confirm(-lattice(n, m)) {
                return PointClass::Pole { n, m };
            }
        }
    }
    for n in 0..=CLASSIFY_RANGE {
        for m in 0..=CLASSIFY_RANGE {
            let (nf, mf) = (n as f64 + 1.0, m as f64 + 1.0);
            let d = (ur - nf * ar - mf * br).hypot(ui - nf * ai - mf * bi);
            if d < screen && confirm(lattice(n + 1, m + 1)) {
                return PointClass::Zero { n, m };
            }
        }
    }
    PointClass::Regular
}

pub(crate) fn pole_error(u: &ComplexValue, n: u32, m: u32) -> Error {
    Error::PoleOfGammaH {
        u: u.to_string(),
        n,
        m,
    }
}

/// Dispatches to a representation. `Auto` prefers the product whenever
/// |q| ≠ 1 and otherwise needs u in the strip.
pub fn gamma_h(u: &ComplexValue, w: &OmegaPair, mode: GammaMode) -> Result<GammaHValue> {
    let tol = w.precision().pole_tolerance();
    if let PointClass::Pole { n, m } = classify_point(u, w, &tol) {
        return Err(pole_error(u, n, m));
    }
    match mode {
        GammaMode::Product => gamma_h_product(u, w),
        GammaMode::Integral => gamma_h_integral(u, w),
        GammaMode::Auto => {
            if !w.has_unimodular_q() {
                gamma_h_product(u, w)
            } else if w.strip_contains(u) {
                gamma_h_integral(u, w)
            } else {
                Err(Error::Domain(format!(
                    "|q| = 1 and u = {u} lies outside the strip 0 < Re u < Re(ω₁+ω₂)"
                )))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{GaussianRational as Q, Precision};
    use proptest::prelude::*;

    fn p() -> Precision {
        Precision::DEFAULT
    }

    fn pair_pi8() -> OmegaPair {
        OmegaPair::conjugate_unit(p(), 1, 8).unwrap()
    }

    #[test]
    fn b22_listed_values() {
        let one = Q::one();
        assert_eq!(bernoulli_b22(&Q::zero(), &one, &one).unwrap(), Q::from_ratio(5, 6));
        assert_eq!(bernoulli_b22(&one, &one, &one).unwrap(), Q::from_ratio(-1, 6));
    }

    #[test]
    fn classification() {
        let w = pair_pi8();
        let tol = p().pole_tolerance();
        assert_eq!(classify_point(&ComplexValue::zero(p()), &w, &tol), PointClass::Pole { n: 0, m: 0 });
        let sum = w.omega1() + w.omega2();
        assert_eq!(classify_point(&sum, &w, &tol), PointClass::Zero { n: 0, m: 0 });
        assert_eq!(classify_point(&sum.scale(0.5), &w, &tol), PointClass::Regular);
        let far = -(&w.omega1().scale(3.0) + &w.omega2().scale(7.0));
        assert_eq!(classify_point(&far, &w, &tol), PointClass::Pole { n: 3, m: 7 });
    }

    #[test]
    fn dispatch_rules() {
        let w = OmegaPair::new(ComplexValue::one(p()), ComplexValue::one(p())).unwrap();
        let v = gamma_h(&ComplexValue::from_f64(p(), 0.7, 0.3), &w, GammaMode::Auto).unwrap();
        assert_eq!(v.representation_used, Representation::Integral);
        assert!(matches!(
            gamma_h(&ComplexValue::from_f64(p(), 2.5, 0.0), &w, GammaMode::Auto),
            Err(Error::Domain(_))
        ));
        let w = pair_pi8();
        let u = w.omega1().scale(-0.5);
        let v = gamma_h(&u, &w, GammaMode::Auto).unwrap();
        assert_eq!(v.representation_used, Representation::Product);
        assert!(v.value.is_finite());
        assert!(matches!(
            gamma_h(&ComplexValue::zero(p()), &w, GammaMode::Auto),
            Err(Error::PoleOfGammaH { n: 0, m: 0, .. })
        ));
    }

    fn gauss() -> impl Strategy<Value = Q> {
        (-30i64..30, -30i64..30, 1i64..12).prop_map(|(a, b, d)| Q::from_parts(a, b, d))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn b22_reflection_exact(u in gauss(), w1 in gauss(), w2 in gauss()) {
            prop_assume!(!(&w1 * &w2).is_zero());
            let reflected = &(&w1 + &w2) - &u;
            prop_assert_eq!(
                bernoulli_b22(&reflected, &w1, &w2).unwrap(),
                bernoulli_b22(&u, &w1, &w2).unwrap()
            );
            prop_assert_eq!(
                bernoulli_b22(&u, &w2, &w1).unwrap(),
                bernoulli_b22(&u, &w1, &w2).unwrap()
            );
        }
    }
}
