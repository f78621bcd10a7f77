//! Elementary transcendental functions on `BigReal`.
//!
//! Every routine takes an explicit target precision and works internally
//! with enough guard bits that the result carries a relative error of a few
//! ulp (comfortably within 4*2^-P). Argument reduction for the periodic
//! functions runs at P + 64 + exponent-length extra bits so phases of large
//! magnitude keep their full fractional accuracy.

use num_bigint::{BigInt, Sign as IntSign};
use num_traits::Zero;

use super::consts;
use super::real::{BigReal, Sign};
use crate::error::{Error, Result};

fn isqrt_u32(v: u32) -> u32 {
    (v as f64).sqrt() as u32
}

/// floor(x) as a BigInt (toward negative infinity).
pub(crate) fn floor_bigint(x: &BigReal) -> BigInt {
    if x.is_zero() {
        return BigInt::zero();
    }
    let mag = x.abs().floor_biguint();
    if x.is_positive() {
        BigInt::from_biguint(IntSign::Plus, mag)
    } else {
        let m = BigInt::from_biguint(IntSign::Minus, mag.clone());
        // exact integers need no correction
        let back = BigReal::from_biguint(Sign::Pos, mag, 0, x.prec().max(64));
        if back == x.abs() {
            m
        } else {
            m - 1
        }
    }
}

fn bigint_to_real(n: &BigInt, prec: u32) -> BigReal {
    let (sign, mag) = n.clone().into_parts();
    let s = match sign {
        IntSign::Plus => Sign::Pos,
        IntSign::Minus => Sign::Neg,
        IntSign::NoSign => Sign::Zero,
    };
    BigReal::from_biguint(s, mag, 0, prec)
}

/// e^v rounded to `prec` bits. Underflows to exact zero below the exponent
/// floor; panics if the result exceeds the exponent ceiling.
pub fn exp(v: &BigReal, prec: u32) -> BigReal {
    if v.is_zero() {
        return BigReal::from_u64(1, prec);
    }
    if v.exponent() >= 62 {
        if v.is_positive() {
            panic!("exp overflow: argument exponent {}", v.exponent());
        }
        return BigReal::zero(prec);
    }
    let kbits = (v.exponent() + 2).max(0) as u32;
    let pr = prec + 48 + kbits;

    // v = k ln2 + r, |r| <= ln2/2 (plus rounding slop)
    let ln2 = consts::ln2(pr);
    let q = v.with_prec(pr).div_p(&ln2, pr);
    let half = BigReal::from_u64(1, 32).mul_pow2(-1);
    let k = floor_bigint(&q.add_p(&half, pr));
    let r = v.with_prec(pr).sub_p(&bigint_to_real(&k, pr).mul_p(&ln2, pr), pr);

    let k_i64 = i64::try_from(&k).expect("exp: scale fits i64 given the exponent guard");

    // Halve the reduced argument s times, run the Taylor series, square back.
    let s = isqrt_u32(prec).max(1);
    let ps = prec + s + 32;
    let rs = r.with_prec(ps).mul_pow2(-(s as i64));

    let one = BigReal::from_u64(1, ps);
    let mut term = rs.clone();
    let mut sum = one.add_p(&rs, ps);
    let mut j = 2u64;
    let limit = -((ps + 8) as i64);
    while !term.is_zero() && term.exponent() >= limit {
        term = term.mul_p(&rs, ps).div_u64(j, ps);
        sum = sum.add_p(&term, ps);
        j += 1;
    }
    for _ in 0..s {
        sum = sum.mul_p(&sum, ps);
    }
    sum.mul_pow2(k_i64).with_prec(prec)
}

/// e^v - 1 rounded to `prec` bits, cancellation-free for small v.
pub fn expm1(v: &BigReal, prec: u32) -> BigReal {
    if v.is_zero() {
        return BigReal::zero(prec);
    }
    if v.exponent() >= -1 {
        let e = exp(v, prec + 8);
        return e.sub_p(&BigReal::from_u64(1, prec + 8), prec);
    }
    // |v| < 1/2: direct series sum_{j>=1} v^j/j!
    let ps = prec + 24;
    let vv = v.with_prec(ps);
    let mut term = vv.clone();
    let mut sum = vv.clone();
    let mut j = 2u64;
    let limit_rel = sum.exponent() - ps as i64 - 8;
    loop {
        term = term.mul_p(&vv, ps).div_u64(j, ps);
        if term.is_zero() || term.exponent() < limit_rel {
            break;
        }
        sum = sum.add_p(&term, ps);
        j += 1;
    }
    sum.with_prec(prec)
}

/// Natural log; domain error for v <= 0.
pub fn ln(v: &BigReal, prec: u32) -> Result<BigReal> {
    if v.is_zero() || v.is_negative() {
        return Err(Error::domain("log requires a positive argument"));
    }
    let e0 = v.exponent();
    if e0 == 0 || e0 == -1 {
        // v in [1/2, 2): series directly on v to dodge cancellation against
        // the e0*ln2 part.
        return Ok(ln_near_one(v, prec));
    }
    let ebits = 64 - (e0.unsigned_abs().leading_zeros() as u32);
    let pi_ = prec + 40 + ebits;
    let m = v.with_prec(pi_).mul_pow2(-e0); // in [1, 2)
    let lead = consts::ln2(pi_).mul_p(&BigReal::from_i64(e0, pi_), pi_);
    Ok(lead.add_p(&ln_near_one(&m, pi_), prec))
}

/// ln of v in [1/2, 2): repeated square roots push the argument at 1, then
/// the atanh series finishes. Scaling back by 2^s preserves relative error
/// because the reduced log shrinks by the same factor.
fn ln_near_one(v: &BigReal, prec: u32) -> BigReal {
    let u = v.sub_p(&BigReal::from_u64(1, v.prec().max(prec) + 4), v.prec().max(prec) + 4);
    if u.is_zero() {
        return BigReal::zero(prec);
    }
    let j = (-u.exponent()).max(0) as u32;
    let s = isqrt_u32(prec).saturating_sub(j);
    let pi_ = prec + 48 + s;
    let mut m = v.with_prec(pi_);
    for _ in 0..s {
        m = m.sqrt_p(pi_);
    }
    let one = BigReal::from_u64(1, pi_);
    let num = m.sub_p(&one, pi_);
    let den = m.add_p(&one, pi_);
    let r = num.div_p(&den, pi_);
    if r.is_zero() {
        return BigReal::zero(prec);
    }
    let r2 = r.mul_p(&r, pi_);
    let mut term = r.clone();
    let mut sum = r.clone();
    let mut k = 1u64;
    let limit = sum.exponent() - pi_ as i64 - 8;
    loop {
        term = term.mul_p(&r2, pi_);
        if term.is_zero() || term.exponent() < limit {
            break;
        }
        sum = sum.add_p(&term.div_u64(2 * k + 1, pi_), pi_);
        k += 1;
    }
    // ln v = 2^(s+1) * atanh(r)
    sum.mul_pow2(s as i64 + 1).with_prec(prec)
}

/// sin and cos of v, with argument reduction mod 2*pi carried out at
/// prec + 64 + exponent-length bits.
pub fn sin_cos(v: &BigReal, prec: u32) -> (BigReal, BigReal) {
    if v.is_zero() {
        return (BigReal::zero(prec), BigReal::from_u64(1, prec));
    }
    let ebits = v.exponent().max(0) as u32;
    let pr = prec + 64 + ebits;
    let two_pi = consts::two_pi(pr);
    let q = v.with_prec(pr).div_p(&two_pi, pr);
    let half = BigReal::from_u64(1, 32).mul_pow2(-1);
    let n = floor_bigint(&q.add_p(&half, pr));
    let theta0 = if n.is_zero() {
        v.with_prec(pr)
    } else {
        let nbits = n.magnitude().bits() as u32;
        let prod = bigint_to_real(&n, pr + nbits).mul_p(&two_pi.with_prec(pr + nbits + 4), pr + nbits + 4);
        v.with_prec(pr + nbits + 4).sub_p(&prod, pr)
    };
    // theta0 in [-pi, pi]; fold into [-pi/4, pi/4] with a quadrant index.
    let half_pi = consts::pi(pr).mul_pow2(-1);
    let hq = theta0.div_p(&half_pi, pr);
    let qd = floor_bigint(&hq.add_p(&half, pr));
    let qd_i = i64::try_from(&qd).expect("quadrant index is tiny");
    let theta = theta0.sub_p(&bigint_to_real(&qd, pr).mul_p(&half_pi, pr), pr);

    let (s, c) = sin_cos_core(&theta, prec + 8);
    let out = match qd_i.rem_euclid(4) {
        0 => (s, c),
        1 => (c, s.neg()),
        2 => (s.neg(), c.neg()),
        _ => (c.neg(), s),
    };
    (out.0.with_prec(prec), out.1.with_prec(prec))
}

/// Core series for |theta| <= pi/4 (plus reduction slop).
fn sin_cos_core(theta: &BigReal, prec: u32) -> (BigReal, BigReal) {
    if theta.is_zero() {
        return (BigReal::zero(prec), BigReal::from_u64(1, prec));
    }
    let s_half = isqrt_u32(prec).max(1);
    let ps = prec + s_half + 24;
    let t = theta.with_prec(ps).mul_pow2(-(s_half as i64));
    let t2 = t.mul_p(&t, ps);

    // sin t
    let mut term = t.clone();
    let mut sin = t.clone();
    let mut j = 1u64;
    let limit = sin.exponent() - ps as i64 - 8;
    loop {
        term = term.mul_p(&t2, ps).div_u64(2 * j * (2 * j + 1), ps);
        if term.is_zero() || term.exponent() < limit {
            break;
        }
        sin = if j % 2 == 1 { sin.sub_p(&term, ps) } else { sin.add_p(&term, ps) };
        j += 1;
    }
    // cos t
    let one = BigReal::from_u64(1, ps);
    let mut term = one.clone();
    let mut cos = one.clone();
    let mut j = 1u64;
    loop {
        term = term.mul_p(&t2, ps).div_u64((2 * j - 1) * (2 * j), ps);
        if term.is_zero() || term.exponent() < -(ps as i64) - 8 {
            break;
        }
        cos = if j % 2 == 1 { cos.sub_p(&term, ps) } else { cos.add_p(&term, ps) };
        j += 1;
    }
    // double the angle back: sin 2a = 2 sin a cos a, cos 2a = 1 - 2 sin^2 a
    let mut s = sin;
    let mut c = cos;
    for _ in 0..s_half {
        let s2 = s.mul_p(&c, ps).mul_pow2(1);
        let c2 = one.sub_p(&s.mul_p(&s, ps).mul_pow2(1), ps);
        s = s2;
        c = c2;
    }
    (s.with_prec(prec), c.with_prec(prec))
}

pub fn sin(v: &BigReal, prec: u32) -> BigReal {
    sin_cos(v, prec).0
}

pub fn cos(v: &BigReal, prec: u32) -> BigReal {
    sin_cos(v, prec).1
}

/// Hyperbolic sine via expm1 (small |v|) or exp (otherwise).
pub fn sinh(v: &BigReal, prec: u32) -> BigReal {
    if v.is_zero() {
        return BigReal::zero(prec);
    }
    let p = prec + 8;
    if v.exponent() < 0 {
        // (e^v - e^-v)/2 = (expm1(v) - expm1(-v))/2, both terms reinforce
        let a = expm1(v, p);
        let b = expm1(&v.neg(), p);
        a.sub_p(&b, p).mul_pow2(-1).with_prec(prec)
    } else {
        let e = exp(v, p);
        let inv = BigReal::from_u64(1, p).div_p(&e, p);
        e.sub_p(&inv, p).mul_pow2(-1).with_prec(prec)
    }
}

/// arctangent, |result| < pi/2.
pub fn atan(v: &BigReal, prec: u32) -> BigReal {
    if v.is_zero() {
        return BigReal::zero(prec);
    }
    let a = v.abs();
    let one = BigReal::from_u64(1, prec + 16);
    let r = if a.exponent() >= 1 || a == one {
        // |v| >= 1: atan(v) = pi/2 - atan(1/v)
        let inv = one.div_p(&a.with_prec(prec + 16), prec + 16);
        let inner = atan_core(&inv, prec + 8);
        consts::pi(prec + 8).mul_pow2(-1).sub_p(&inner, prec)
    } else {
        atan_core(&a, prec)
    };
    if v.is_negative() {
        r.neg()
    } else {
        r
    }
}

/// atan for 0 < u <= 1 by repeated halving u -> u/(1+sqrt(1+u^2)) followed
/// by the Taylor series.
fn atan_core(u: &BigReal, prec: u32) -> BigReal {
    let s = isqrt_u32(prec).max(1);
    let pi_ = prec + 32 + s;
    let one = BigReal::from_u64(1, pi_);
    let mut x = u.with_prec(pi_);
    for _ in 0..s {
        let root = one.add_p(&x.mul_p(&x, pi_), pi_).sqrt_p(pi_);
        x = x.div_p(&one.add_p(&root, pi_), pi_);
    }
    let x2 = x.mul_p(&x, pi_);
    let mut term = x.clone();
    let mut sum = x.clone();
    let mut k = 1u64;
    let limit = sum.exponent() - pi_ as i64 - 8;
    loop {
        term = term.mul_p(&x2, pi_);
        if term.is_zero() || term.exponent() < limit {
            break;
        }
        let c = term.div_u64(2 * k + 1, pi_);
        sum = if k % 2 == 1 { sum.sub_p(&c, pi_) } else { sum.add_p(&c, pi_) };
        k += 1;
    }
    sum.mul_pow2(s as i64).with_prec(prec)
}

/// Principal-value atan2.
pub fn atan2(y: &BigReal, x: &BigReal, prec: u32) -> BigReal {
    if x.is_zero() {
        if y.is_zero() {
            return BigReal::zero(prec);
        }
        let half_pi = consts::pi(prec + 4).mul_pow2(-1).with_prec(prec);
        return if y.is_positive() { half_pi } else { half_pi.neg() };
    }
    let ratio = y.with_prec(prec + 16).div_p(&x.with_prec(prec + 16), prec + 16);
    let base = atan(&ratio, prec + 8);
    if x.is_positive() {
        base.with_prec(prec)
    } else if y.is_negative() {
        base.sub_p(&consts::pi(prec + 8), prec)
    } else {
        base.add_p(&consts::pi(prec + 8), prec)
    }
}

/// Reports e^{-X} as (mantissa in [1, 10), decimal exponent) without
/// materializing the value: exp10 = floor(-X/ln 10), mantissa =
/// 10^{-X/ln10 - exp10}. Works for magnitudes far beyond any exponent
/// range.
pub fn exponent_of_exp_neg(x_arg: &BigReal) -> Result<(BigReal, i64)> {
    if !x_arg.is_positive() {
        return Err(Error::invalid("exponent_of_exp_neg requires X > 0"));
    }
    let prec = x_arg.prec();
    let pi_ = prec + 64;
    let q = x_arg.with_prec(pi_).div_p(&consts::ln10(pi_), pi_);
    let f = floor_bigint(&q);
    if f.magnitude().bits() > 62 {
        return Err(Error::invalid("argument too large for a decimal exponent report"));
    }
    let f_i64 = i64::try_from(&f).unwrap();
    let frac = q.sub_p(&bigint_to_real(&f, pi_), pi_);
    if frac.is_zero() {
        return Ok((BigReal::from_u64(1, prec), -f_i64));
    }
    // mantissa = 10^(1 - frac), exponent = -(f+1)
    let one = BigReal::from_u64(1, pi_);
    let mant = exp(&one.sub_p(&frac, pi_).mul_p(&consts::ln10(pi_), pi_), pi_);
    let ten = BigReal::from_u64(10, pi_);
    let (mant, bump) = if !mant.abs_le(&ten) || mant == ten {
        (mant.div_u64(10, pi_), 1)
    } else {
        (mant, 0)
    };
    Ok((mant.with_prec(prec), -(f_i64 + 1) + bump))
}
