//! Precision core: arbitrary-precision reals and complexes, elementary
//! functions, fundamental constants, and the working-precision policy.
//!
//! Everything here is immutable after construction and safe to use from
//! multiple threads; the constant caches initialize once and are read-only
//! afterwards.

pub mod complex;
pub mod consts;
pub mod elem;
pub mod format;
pub mod real;

pub use complex::BigComplex;
pub use real::{BigReal, Sign, EXP_MAX, EXP_MIN};

use crate::error::{Error, Result};
use num_bigint::BigUint;

/// Working-precision policy derived from a decimal digit target.
///
/// `working_bits = ceil(D log2 10) + guard_bits`, with the guard schedule
/// `32 + ceil(log2 D)` absorbing the rounding accumulated over O(D) series
/// terms at a few ulp each.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrecisionPolicy {
    pub digits: u32,
    pub guard_bits: u32,
    pub working_bits: u32,
}

/// Builds the policy for a decimal digit target. Errors when `digits` is 0
/// or absurdly large.
pub fn working_precision(digits: u32) -> Result<PrecisionPolicy> {
    if digits == 0 {
        return Err(Error::invalid("digit count must be at least 1"));
    }
    if digits > 10_000_000 {
        return Err(Error::invalid("digit count beyond supported range"));
    }
    // Exact ceil(D log2 10) = bit length of 10^D (10^D is never a power of 2).
    let pow = BigUint::from(10u32).pow(digits);
    let base = pow.bits() as u32;
    let guard = 32 + ceil_log2(digits);
    Ok(PrecisionPolicy {
        digits,
        guard_bits: guard,
        working_bits: base + guard,
    })
}

fn ceil_log2(v: u32) -> u32 {
    debug_assert!(v >= 1);
    32 - (v - 1).leading_zeros().min(32)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn policy_formula_instantiations() {
        let p1 = working_precision(1).unwrap();
        assert_eq!((p1.guard_bits, p1.working_bits), (32, 36));
        let p100 = working_precision(100).unwrap();
        assert_eq!((p100.guard_bits, p100.working_bits), (39, 372));
        let p1000 = working_precision(1000).unwrap();
        assert_eq!((p1000.guard_bits, p1000.working_bits), (42, 3364));
    }

    #[test]
    fn zero_digits_rejected() {
        assert!(working_precision(0).is_err());
    }
}
