//! Reference constants computed by algorithms unrelated to the series
//! evaluator, for cross-validation.
//!
//! gamma comes from the Bessel-function ratio method: with
//! A = sum H_k (n^k/k!)^2 and B = sum (n^k/k!)^2,
//!
//!   gamma = A/B - ln n + O(e^{-4n}),
//!
//! so n just above (P+16) ln2 / 4 pins the error well below the last bit.
//! The update uses only small-integer multiplies and divides per term.
//! This module never touches the series or gamma-function code paths.

use crate::big::consts;
use crate::big::elem;
use crate::big::real::BigReal;
use crate::big::working_precision;
use crate::error::{Error, Result};

/// A named reference constant and the method that produced it.
#[derive(Clone, Debug)]
pub struct ReferenceValue {
    pub name: &'static str,
    pub value: BigReal,
    pub digits: u32,
    pub method: &'static str,
}

/// Euler's constant at `prec` bits by the Bessel-ratio method.
pub(crate) fn gamma_bits(prec: u32) -> BigReal {
    let p = prec + 32;
    let n: u64 = (((prec as f64 + 16.0) * std::f64::consts::LN_2) / 4.0).ceil() as u64 + 4;
    let n2 = n * n;
    let mut t = BigReal::from_u64(1, p); // (n^k / k!)^2
    let mut u = BigReal::zero(p); // t_k * H_k
    let mut a = BigReal::zero(p);
    let mut b = t.clone();
    let mut k = 1u64;
    loop {
        t = t.mul_u64(n2, p).div_u64(k * k, p);
        u = u.mul_u64(n2, p).div_u64(k * k, p).add_p(&t.div_u64(k, p), p);
        a = a.add_p(&u, p);
        b = b.add_p(&t, p);
        if k > 2 * n && t.exponent() < b.exponent() - (p as i64 + 10) {
            break;
        }
        k += 1;
    }
    let ln_n = elem::ln(&BigReal::from_u64(n, p), p).expect("n >= 1");
    a.div_p(&b, p).sub_p(&ln_n, prec)
}

/// Euler's constant to `digits` correct decimal digits.
pub fn reference_gamma(digits: u32) -> Result<ReferenceValue> {
    if digits == 0 || digits > 100_000 {
        return Err(Error::invalid("digits must lie in 1..=100000"));
    }
    let policy = working_precision(digits)?;
    Ok(ReferenceValue {
        name: "gamma",
        value: gamma_bits(policy.working_bits),
        digits,
        method: "bessel-ratio",
    })
}

/// pi to `digits` correct decimal digits (Machin arctangent formula).
pub fn reference_pi(digits: u32) -> Result<ReferenceValue> {
    if digits == 0 || digits > 100_000 {
        return Err(Error::invalid("digits must lie in 1..=100000"));
    }
    let policy = working_precision(digits)?;
    Ok(ReferenceValue {
        name: "pi",
        value: consts::pi(policy.working_bits),
        digits,
        method: "machin-arctan",
    })
}

/// The defining limit truncated at n: sum_{j<=n} 1/j - ln n, at 64-digit
/// working precision. Converges like 1/(2n) — the demonstration of why the
/// series evaluator exists.
pub fn naive_gamma(n: u64) -> Result<BigReal> {
    if n == 0 {
        return Err(Error::invalid("naive_gamma requires n >= 1"));
    }
    let p = working_precision(64)?.working_bits;
    let mut h = BigReal::zero(p);
    // ascending magnitude: largest j first contributes the smallest term
    for j in (1..=n).rev() {
        h = h.add_p(&BigReal::from_u64(1, p).div_u64(j, p), p);
    }
    let ln_n = elem::ln(&BigReal::from_u64(n, p), p)?;
    Ok(h.sub_p(&ln_n, p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::big::format::to_decimal_string;

    const GAMMA_60: &str = "0.577215664901532860606512090082402431042159335939923598805767";

    #[test]
    fn twelve_digit_anchor() {
        let r = reference_gamma(12).unwrap();
        assert_eq!(to_decimal_string(&r.value, 12), "0.577215664901");
        assert_eq!(r.method, "bessel-ratio");
    }

    #[test]
    fn sixty_digit_value() {
        let r = reference_gamma(60).unwrap();
        assert_eq!(to_decimal_string(&r.value, 60), GAMMA_60);
    }

    #[test]
    fn stable_under_recomputation_at_higher_digits() {
        let a = reference_gamma(100).unwrap().value;
        let b = reference_gamma(130).unwrap().value;
        let diff = a.sub_p(&b, 600).abs();
        assert!(diff.log10_abs() < -99.0);
    }

    #[test]
    fn pi_anchor() {
        let r = reference_pi(12).unwrap();
        assert_eq!(to_decimal_string(&r.value, 11), "3.14159265358");
        let a = reference_pi(100).unwrap().value;
        let b = reference_pi(120).unwrap().value;
        assert!(a.sub_p(&b, 500).abs().log10_abs() < -99.0);
    }

    #[test]
    fn digit_range_validation() {
        assert!(reference_gamma(0).is_err());
        assert!(reference_pi(0).is_err());
        assert!(reference_gamma(100_001).is_err());
    }

    #[test]
    fn naive_single_term() {
        // n = 1: 1 - ln 1 = 1 exactly
        let v = naive_gamma(1).unwrap();
        assert_eq!(v, BigReal::from_u64(1, 64));
    }

    #[test]
    fn naive_ten_terms() {
        let v = naive_gamma(10).unwrap();
        assert!((v.to_f64() - 0.6263831609742082842359767992).abs() < 1e-15);
    }

    #[test]
    fn naive_error_tracks_half_over_n() {
        // H_n - ln n - gamma = 1/(2n) - O(1/n^2)
        let gamma = gamma_bits(256);
        let mut prev_err = f64::INFINITY;
        for &n in &[100u64, 1000, 10000] {
            let err = naive_gamma(n).unwrap().sub_p(&gamma.with_prec(251), 251);
            let scaled = err.to_f64() * 2.0 * n as f64;
            assert!((scaled - 1.0).abs() < 0.01, "n={n}: scaled error {scaled}");
            let e = err.to_f64().abs();
            assert!(e < prev_err, "error must shrink with n");
            prev_err = e;
        }
    }
}
