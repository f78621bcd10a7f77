//! Arbitrary-precision computation of Euler's constant from a two-parameter
//! residue-series identity
//!
//! ```text
//! gamma = w/2 - log x - w * S1(x, w) + w * S2(x, w) + S3(x, w),   x > 0, w > 0
//! ```
//!
//! where S1 is a double-exponential sum, S2 an alternating factorial sum,
//! and S3 an oscillatory sum over gamma-function values on the imaginary
//! axis. The crate provides the series evaluator with certified truncation
//! planning, the special functions it needs (complex gamma/digamma on the
//! imaginary axis, the exponential integral E1), several independently
//! evaluated identity checks, and reference constants computed by unrelated
//! algorithms for cross-validation.

pub mod big;
pub mod error;
pub mod identities;
pub mod oracle;
pub mod series;
pub mod specfun;

pub use big::{working_precision, BigComplex, BigReal, PrecisionPolicy};
pub use error::{Error, Result};
pub use series::{euler_gamma, plan_truncation, GammaResult, SeriesParams, TruncationPlan};
