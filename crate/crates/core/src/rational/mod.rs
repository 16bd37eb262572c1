//! Exact residue evaluation of the rational bilateral-sum identities.

mod closed;
mod params;
mod term;
mod theorem;

pub use closed::{closed_form_a, closed_form_b, closed_form_c, example_a, example_b, example_c, ExampleOutcome};
pub use params::ParameterSet;
pub use term::{build_term, classify_contribution, integrate_term, Contribution, FactoredRational, Family, FLOAT_RESIDUE_SLACK};
pub use theorem::{
    bilateral_sum, e7_transform, judge, theorem1_lhs, theorem1_rhs, verify_theorem1, verify_theorem1_with,
    verify_theorem2, verify_theorem2_with, BilateralSum, Status, TermRecord, TransformedSet, VerificationReport,
    WINDOW_RETRY_LIMIT,
};
