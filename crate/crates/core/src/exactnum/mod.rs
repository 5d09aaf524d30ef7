//! Exact arithmetic for the floor decisions behind sequence membership.
//!
//! Every `⌊·⌋` taken on a Beatty or Piatetski-Shapiro term goes through this
//! module and is decided by integer comparisons. Floating point appears only
//! as a seed for root finding or when reporting fractional parts.

mod limbs;
mod parse;
mod power;
mod surd;

use thiserror::Error;

pub use parse::{parse_count, parse_decimal};
pub(crate) use power::big_ratio_f64;
pub use power::{
    ceil_rational_power_u64, floor_rational_power, floor_rational_power_u64, rational_power_parts,
    PowerParts, RationalExponent,
};
pub use surd::{compare_surd, floor_surd_linear, QuadraticSurd, SurdLine};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("cannot combine sqrt({0}) and sqrt({1}): different quadratic fields")]
    IncompatibleRadicands(u64, u64),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid exponent `{0}`: expected num/den with positive integers")]
    InvalidExponent(String),
    #[error("cannot parse `{token}` in `{input}`")]
    Parse { token: String, input: String },
}
