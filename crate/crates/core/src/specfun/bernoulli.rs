//! Exact Bernoulli numbers and the per-precision coefficient cache for the
//! Stirling-type asymptotic series.
//!
//! B_{2n} is derived from tangent numbers, which are exact integers produced
//! by an O(n^2) triangle recurrence; the only rounding is the final division
//! into a `BigReal`. Coefficients are generated once per precision bucket
//! and shared behind an `Arc` (initialize once, read many).

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigUint;
use num_traits::One;

use crate::big::real::{BigReal, Sign};

/// Tangent numbers T_1..T_n (1, 2, 16, 272, ...), exact.
pub(crate) fn tangent_numbers(n: usize) -> Vec<BigUint> {
    if n == 0 {
        return Vec::new();
    }
    let mut t: Vec<BigUint> = Vec::with_capacity(n + 1);
    t.push(BigUint::one()); // placeholder for 1-based indexing
    t.push(BigUint::one()); // T_1 = 1
    for k in 2..=n {
        let prev = &t[k - 1] * (k as u32 - 1);
        t.push(prev);
    }
    for k in 2..=n {
        for j in k..=n {
            let a = &t[j - 1] * (j - k) as u32;
            let b = &t[j] * (j - k + 2) as u32;
            t[j] = a + b;
        }
    }
    t.remove(0);
    t
}

/// B_{2k} for k = 1..=count as `BigReal`s at `prec` bits:
/// B_{2k} = (-1)^(k-1) * T_k * 2k / (4^k (4^k - 1)).
fn bernoulli_values(count: usize, prec: u32) -> Vec<BigReal> {
    let p = prec + 16;
    let tangents = tangent_numbers(count);
    let mut out = Vec::with_capacity(count);
    for (i, t) in tangents.into_iter().enumerate() {
        let k = i + 1;
        let num = t * (2 * k) as u32;
        let four_k = BigUint::one() << (2 * k);
        let den = &four_k * (&four_k - BigUint::one());
        let sign = if k % 2 == 1 { Sign::Pos } else { Sign::Neg };
        let v = BigReal::from_biguint(sign, num, 0, p)
            .div_p(&BigReal::from_biguint(Sign::Pos, den, 0, p), prec);
        out.push(v);
    }
    out
}

fn cache() -> &'static Mutex<HashMap<u32, Arc<Vec<BigReal>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<BigReal>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Shared B_{2k} coefficients, at least `count` of them, at a precision
/// bucket covering `prec`.
pub(crate) fn bernoulli_cached(count: usize, prec: u32) -> Arc<Vec<BigReal>> {
    let bucket = prec.div_ceil(64) * 64;
    {
        let map = cache().lock().unwrap();
        if let Some(v) = map.get(&bucket) {
            if v.len() >= count {
                return Arc::clone(v);
            }
        }
    }
    // Grow generously so repeated small bumps do not recompute the triangle.
    let grown = count.max(32).next_power_of_two();
    let values = Arc::new(bernoulli_values(grown, bucket + 32));
    cache().lock().unwrap().insert(bucket, Arc::clone(&values));
    values
}

/// Number of asymptotic-series terms required to push the first omitted
/// term below 2^-(p+16) at modulus `z_abs` (callers guarantee
/// `z_abs >= sigma(p)`).
pub(crate) fn stirling_terms_needed(p: u32, z_abs: f64) -> usize {
    let ln2 = std::f64::consts::LN_2;
    let target = -((p as f64) + 16.0) * ln2;
    let ln_z = z_abs.ln();
    let ln_4pi2 = (4.0 * std::f64::consts::PI * std::f64::consts::PI).ln();
    // ln |B_2n| tracked by the ratio |B_{2n+2}|/|B_{2n}| ~ (2n+1)(2n+2)/(4 pi^2)
    let mut ln_b = -(6.0f64).ln(); // B_2 = 1/6
    let mut n = 1usize;
    loop {
        let two_n = (2 * n) as f64;
        let ln_term = ln_b - (two_n * (two_n - 1.0)).ln() - (two_n - 1.0) * ln_z;
        if ln_term < target {
            return n + 2; // margin
        }
        ln_b += ((two_n + 1.0) * (two_n + 2.0)).ln() - ln_4pi2;
        n += 1;
        assert!(n < 1_000_000, "asymptotic series cannot reach target precision");
    }
}
