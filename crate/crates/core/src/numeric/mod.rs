//! Scalar arithmetic: exact Gaussian rationals, MPFR-backed complex floats,
//! half-integers, log-gamma and Pochhammer symbols.

mod complex;
mod gamma;
mod gaussian;
mod half_integer;
mod pochhammer;
mod scalar;

pub use complex::{ComplexValue, Precision};
pub use gamma::log_gamma;
pub use gaussian::GaussianRational;
pub use half_integer::HalfInteger;
pub use pochhammer::{pochhammer, pochhammer_gamma_ratio, pochhammer_pm};
pub use scalar::{Mode, Scalar};
