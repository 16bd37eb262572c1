pub mod degeneration;
pub mod error;
pub mod hyperbolic;
pub mod numeric;
pub mod par;
pub mod quadrature;
pub mod rational;
pub mod sampling;
pub mod verifier;

pub use error::{Error, Result};
