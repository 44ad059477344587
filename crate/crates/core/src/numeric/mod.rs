//! Exact and high-precision numerics.

pub mod cf;
pub mod parse;
pub mod real;
pub mod scalar;
pub mod surd;

pub use cf::{cf_expand, lagrange_number_estimate, lambda_n, ContinuedFraction, Convergent, LagrangeEstimate};
pub use parse::{parse_complex, parse_surd};
pub use real::{Real, DEFAULT_PRECISION, MIN_PRECISION};
pub use scalar::Scalar;
pub use surd::QuadraticSurd;
