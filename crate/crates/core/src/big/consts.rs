//! Cached fundamental constants.
//!
//! Each constant is computed once per 64-bit precision bucket and re-rounded
//! on request, so repeated series evaluations at one working precision share
//! a single computation. The cache is a plain mutex-guarded map: initialize
//! once, read many.

use std::collections::HashMap;
use std::sync::Mutex;
use std::sync::OnceLock;

use super::real::{BigReal, Sign};
use num_bigint::BigUint;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Named {
    Pi,
    Ln2,
    Ln10,
    E,
}

fn cache() -> &'static Mutex<HashMap<(Named, u32), BigReal>> {
    static CACHE: OnceLock<Mutex<HashMap<(Named, u32), BigReal>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn cached(which: Named, prec: u32, compute: fn(u32) -> BigReal) -> BigReal {
    // Bucket to multiples of 64 bits; compute with 64 extra guard bits so the
    // re-round to `prec` stays faithful.
    let bucket = prec.div_ceil(64) * 64;
    let hit = cache().lock().unwrap().get(&(which, bucket)).cloned();
    let full = match hit {
        Some(v) => v,
        None => {
            let v = compute(bucket + 64);
            cache().lock().unwrap().insert((which, bucket), v.clone());
            v
        }
    };
    full.with_prec(prec)
}

/// pi to `prec` bits.
pub fn pi(prec: u32) -> BigReal {
    cached(Named::Pi, prec, compute_pi)
}

/// 2*pi to `prec` bits.
pub fn two_pi(prec: u32) -> BigReal {
    pi(prec + 2).mul_pow2(1).with_prec(prec)
}

/// ln 2 to `prec` bits.
pub fn ln2(prec: u32) -> BigReal {
    cached(Named::Ln2, prec, compute_ln2)
}

/// ln 10 to `prec` bits.
pub fn ln10(prec: u32) -> BigReal {
    cached(Named::Ln10, prec, compute_ln10)
}

/// Euler's number e to `prec` bits.
pub fn e(prec: u32) -> BigReal {
    cached(Named::E, prec, compute_e)
}

/// 10^k at `prec` bits (exact integer power for k >= 0, rounded reciprocal
/// otherwise).
pub fn pow10(k: i64, prec: u32) -> BigReal {
    if k >= 0 {
        let p = BigUint::from(10u32).pow(k as u32);
        BigReal::from_biguint(Sign::Pos, p, 0, prec)
    } else {
        let p = BigUint::from(10u32).pow((-k) as u32);
        BigReal::from_u64(1, prec + 8).div_p(&BigReal::from_biguint(Sign::Pos, p, 0, prec + 8), prec)
    }
}

/// arctan(1/q) by the Taylor series, all divisors small. Used by the Machin
/// formula; q*q must fit in u64.
fn atan_inv_u64(q: u64, prec: u32) -> BigReal {
    let p = prec + 16;
    let q2 = q.checked_mul(q).expect("q^2 must fit in u64");
    let mut term = BigReal::from_u64(1, p).div_u64(q, p);
    let mut sum = term.clone();
    let mut k = 1u64;
    let limit = -(p as i64) - 4;
    loop {
        term = term.div_u64(q2, p);
        if term.is_zero() || term.exponent() < limit {
            break;
        }
        let contrib = term.div_u64(2 * k + 1, p);
        sum = if k % 2 == 1 {
            sum.sub_p(&contrib, p)
        } else {
            sum.add_p(&contrib, p)
        };
        k += 1;
    }
    sum.with_prec(prec)
}

/// Machin: pi = 16*atan(1/5) - 4*atan(1/239).
fn compute_pi(prec: u32) -> BigReal {
    let p = prec + 8;
    let a = atan_inv_u64(5, p).mul_u64(16, p);
    let b = atan_inv_u64(239, p).mul_u64(4, p);
    a.sub_p(&b, prec)
}

/// ln 2 = sum_{k>=1} 1/(k * 2^k); one bit per term, shift-and-divide only.
fn compute_ln2(prec: u32) -> BigReal {
    let p = prec + 16;
    let mut sum = BigReal::zero(p);
    let mut pow = BigReal::from_u64(1, p); // 2^-k, maintained by shifting
    let limit = -(p as i64) - 4;
    let mut k = 1u64;
    loop {
        pow = pow.mul_pow2(-1);
        if pow.exponent() < limit {
            break;
        }
        sum = sum.add_p(&pow.div_u64(k, p), p);
        k += 1;
    }
    sum.with_prec(prec)
}

/// ln 10 = 3 ln 2 + 2 atanh(1/9)  (since 10 = 8 * 5/4 and ln(5/4) = 2 atanh(1/9)).
fn compute_ln10(prec: u32) -> BigReal {
    let p = prec + 16;
    let mut term = BigReal::from_u64(1, p).div_u64(9, p);
    let mut sum = term.clone();
    let limit = -(p as i64) - 4;
    let mut k = 1u64;
    loop {
        term = term.div_u64(81, p);
        if term.is_zero() || term.exponent() < limit {
            break;
        }
        sum = sum.add_p(&term.div_u64(2 * k + 1, p), p);
        k += 1;
    }
    let atanh = sum.mul_pow2(1); // 2 * atanh(1/9)
    ln2(p).mul_u64(3, p).add_p(&atanh, prec)
}

/// e = sum 1/k!.
fn compute_e(prec: u32) -> BigReal {
    let p = prec + 16;
    let mut term = BigReal::from_u64(1, p);
    let mut sum = BigReal::from_u64(1, p);
    let limit = -(p as i64) - 4;
    let mut k = 1u64;
    loop {
        term = term.div_u64(k, p);
        if term.exponent() < limit {
            break;
        }
        sum = sum.add_p(&term, p);
        k += 1;
    }
    sum.with_prec(prec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::big::format::to_decimal_string;

    #[test]
    fn pi_matches_published_digits() {
        let p = pi(400);
        let s = to_decimal_string(&p, 110);
        assert_eq!(
            s,
            "3.14159265358979323846264338327950288419716939937510582097494459230781640628620899862803482534211706798214808651"
        );
    }

    #[test]
    fn ln2_matches_published_digits() {
        let v = ln2(260);
        let s = to_decimal_string(&v, 60);
        assert_eq!(s, "0.693147180559945309417232121458176568075500134360255254120680");
    }

    #[test]
    fn ln10_consistent_with_ln2() {
        // ln 10 - 3 ln 2 = ln(10/8); cross-check against the direct series
        // for atanh evaluated at a different composition: ln(5/4) via pow10.
        let p = 256;
        let lhs = ln10(p);
        let e10 = crate::big::elem::exp(&lhs, p);
        let diff = e10.sub_p(&BigReal::from_u64(10, p), p).abs();
        assert!(diff.abs_le(&BigReal::from_u64(10, p).ulp().mul_pow2(4)));
    }

    #[test]
    fn e_matches_exp_of_one() {
        let p = 256;
        let a = e(p);
        let b = crate::big::elem::exp(&BigReal::from_u64(1, p), p);
        let diff = a.sub_p(&b, p).abs();
        assert!(diff.abs_le(&a.ulp().mul_pow2(3)));
    }

    #[test]
    fn pow10_round_trips() {
        let v = pow10(-3, 128);
        let back = v.mul_p(&pow10(3, 128), 128);
        let diff = back.sub_p(&BigReal::from_u64(1, 128), 128).abs();
        assert!(diff.abs_le(&BigReal::from_u64(1, 128).ulp().mul_pow2(2)));
    }

    #[test]
    fn cache_reuses_buckets() {
        let a = pi(100);
        let b = pi(90);
        // same bucket; values must agree after re-rounding
        assert_eq!(a.with_prec(80), b.with_prec(80));
    }
}
