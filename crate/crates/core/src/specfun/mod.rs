//! Gamma and digamma on the imaginary axis, gamma on the positive reals,
//! and the exponential integral E1 — all at arbitrary precision.
//!
//! The gamma path follows the classic shift-then-asymptotic contract: raise
//! z by the recurrence Gamma(z) = Gamma(z+m) / (z (z+1) ... (z+m-1)) until
//! |z+m| clears the threshold sigma(P), evaluate log-gamma there with the
//! Bernoulli asymptotic series (first omitted term below 2^-(P+8)), then
//! exponentiate and divide out the recurrence product. Callers exploit the
//! conjugate symmetry Gamma(-it) = conj(Gamma(it)) instead of recomputing.

mod bernoulli;

use std::sync::atomic::{AtomicU64, Ordering};
use std::time::Instant;

use crate::big::complex::BigComplex;
use crate::big::consts;
use crate::big::elem;
use crate::big::real::BigReal;
use crate::big::PrecisionPolicy;
use crate::error::{Error, Result};

pub(crate) use bernoulli::bernoulli_cached;

/// Cumulative wall time spent in gamma evaluations, for profiling the
/// dominant cost of the oscillatory sum. Values are nanoseconds.
static GAMMA_NANOS: AtomicU64 = AtomicU64::new(0);

/// Resets the gamma-evaluation profiling counter.
pub fn reset_gamma_eval_nanos() {
    GAMMA_NANOS.store(0, Ordering::Relaxed);
}

/// Nanoseconds spent in gamma evaluations since the last reset.
pub fn gamma_eval_nanos() -> u64 {
    GAMMA_NANOS.load(Ordering::Relaxed)
}

/// Shift threshold: below this modulus the asymptotic series cannot reach
/// 2^-P, so arguments are raised by the recurrence first.
pub fn sigma(working_bits: u32) -> u32 {
    (((working_bits as f64) * 0.4).ceil() as u32).max(10)
}

/// A gamma evaluation with its algorithmic footprint.
#[derive(Clone, Debug)]
pub struct GammaEval {
    pub value: BigComplex,
    pub shift_count: u32,
    pub terms_used: u32,
}

/// log Gamma(z) by the Stirling-type series; requires |z| >= sigma and
/// Re z >= 0 (principal branch throughout).
fn log_gamma_stirling(z: &BigComplex, p: u32, bern: &[BigReal]) -> (BigComplex, u32) {
    let half = BigReal::from_u64(1, p).mul_pow2(-1);
    let ln_z = z.ln(p);
    let z_minus_half = BigComplex::new(z.re.sub_p(&half, p), z.im.clone());
    let mut acc = z_minus_half.mul_p(&ln_z, p).sub_p(z, p);
    let half_ln_two_pi = elem::ln(&consts::two_pi(p + 8), p)
        .expect("2 pi is positive")
        .mul_pow2(-1);
    acc.re = acc.re.add_p(&half_ln_two_pi, p);

    let one = BigReal::from_u64(1, p);
    let inv_z = BigComplex::from_re(one).div_p(z, p);
    let inv_z2 = inv_z.mul_p(&inv_z, p);
    let mut zpow = inv_z; // z^-(2n-1)
    let mut used = 0u32;
    let limit = -(p as i64) - 8;
    for (i, b) in bern.iter().enumerate() {
        let n = (i + 1) as u64;
        let coef = b.div_u64((2 * n - 1) * (2 * n), p);
        let term = zpow.scale(&coef, p);
        acc = acc.add_p(&term, p);
        used += 1;
        let mag = term.re.exponent().max(term.im.exponent());
        if mag < limit {
            return (acc, used);
        }
        zpow = zpow.mul_p(&inv_z2, p);
    }
    debug_assert!(false, "Bernoulli cache exhausted before convergence");
    (acc, used)
}

/// Gamma(z0) for Re z0 >= 0, z0 != 0, by shift + Stirling + recurrence
/// unwinding. Internal precision adds guard bits for the shift product.
pub(crate) fn gamma_shifted(z0: &BigComplex, policy: &PrecisionPolicy) -> GammaEval {
    let start = Instant::now();
    let target = policy.working_bits;
    let sig = sigma(target) as f64;
    let re_f = z0.re.to_f64();
    let im_f = z0.im.to_f64();
    let abs_f = re_f.hypot(im_f);
    let m: u32 = if abs_f >= sig {
        0
    } else {
        // smallest real shift putting |z0 + m| past sigma
        let rest = (sig * sig - im_f * im_f).max(0.0).sqrt();
        (rest - re_f).max(0.0).ceil() as u32 + 1
    };
    let mbits = 32 - m.leading_zeros();
    let p = target + 64 + mbits;

    let z = BigComplex::new(z0.re.add_p(&BigReal::from_u64(m as u64, p), p), z0.im.with_prec(p));
    let n_terms = bernoulli::stirling_terms_needed(p, abs_f.max(sig));
    let bern = bernoulli_cached(n_terms, p);
    let (lg, used) = log_gamma_stirling(&z, p, &bern);
    let mut value = lg.exp(p);
    if m > 0 {
        let mut prod = z0.with_prec(p);
        for j in 1..m {
            let zj = BigComplex::new(z0.re.add_p(&BigReal::from_u64(j as u64, p), p), z0.im.with_prec(p));
            prod = prod.mul_p(&zj, p);
        }
        value = value.div_p(&prod, p);
    }
    let out = GammaEval {
        value: value.with_prec(target),
        shift_count: m,
        terms_used: used,
    };
    GAMMA_NANOS.fetch_add(start.elapsed().as_nanos() as u64, Ordering::Relaxed);
    out
}

/// Gamma(it) for t > 0 with relative error <= 2^-(P-8).
pub fn gamma_imag(t: &BigReal, policy: &PrecisionPolicy) -> Result<BigComplex> {
    Ok(gamma_imag_eval(t, policy)?.value)
}

/// Gamma(it) with shift/terms diagnostics.
pub fn gamma_imag_eval(t: &BigReal, policy: &PrecisionPolicy) -> Result<GammaEval> {
    if !t.is_positive() {
        return Err(Error::invalid(
            "gamma_imag requires t > 0 (t = 0 is the excluded pole)",
        ));
    }
    let z0 = BigComplex::new(BigReal::zero(policy.working_bits), t.clone());
    Ok(gamma_shifted(&z0, policy))
}

/// Gamma(a) for real a > 0 (used by the transform spot check).
pub fn gamma_real(a: &BigReal, policy: &PrecisionPolicy) -> Result<BigReal> {
    if !a.is_positive() {
        return Err(Error::invalid("gamma_real requires a > 0"));
    }
    let z0 = BigComplex::from_re(a.with_prec(policy.working_bits));
    Ok(gamma_shifted(&z0, policy).value.re)
}

/// psi(z) by the asymptotic series; requires |z| >= sigma, Re z >= 0.
fn digamma_stirling(z: &BigComplex, p: u32, bern: &[BigReal]) -> BigComplex {
    let ln_z = z.ln(p);
    let one = BigReal::from_u64(1, p);
    let inv_z = BigComplex::from_re(one).div_p(z, p);
    let inv_z2 = inv_z.mul_p(&inv_z, p);
    // ln z - 1/(2z) - sum B_2n / (2n z^2n)
    let mut acc = ln_z.sub_p(&inv_z.scale(&BigReal::from_u64(1, p).mul_pow2(-1), p), p);
    let mut zpow = inv_z2.clone(); // z^-2n
    let limit = -(p as i64) - 8;
    for (i, b) in bern.iter().enumerate() {
        let n = (i + 1) as u64;
        let coef = b.div_u64(2 * n, p);
        let term = zpow.scale(&coef, p);
        acc = acc.sub_p(&term, p);
        let mag = term.re.exponent().max(term.im.exponent());
        if mag < limit {
            return acc;
        }
        zpow = zpow.mul_p(&inv_z2, p);
    }
    debug_assert!(false, "Bernoulli cache exhausted before convergence");
    acc
}

/// psi(it) for t > 0 with relative error <= 2^-(P-8), via
/// psi(z+1) = psi(z) + 1/z lifted m times, then the asymptotic series.
pub fn digamma_imag(t: &BigReal, policy: &PrecisionPolicy) -> Result<BigComplex> {
    if !t.is_positive() {
        return Err(Error::invalid("digamma_imag requires t > 0"));
    }
    let target = policy.working_bits;
    let sig = sigma(target) as f64;
    let t_f = t.to_f64();
    let m: u32 = if t_f >= sig {
        0
    } else {
        (sig * sig - t_f * t_f).max(0.0).sqrt().ceil() as u32 + 1
    };
    let mbits = 32 - m.leading_zeros();
    let p = target + 64 + mbits;

    let t_i = t.with_prec(p);
    let z = BigComplex::new(BigReal::from_u64(m as u64, p), t_i.clone());
    let n_terms = bernoulli::stirling_terms_needed(p, t_f.max(sig));
    let bern = bernoulli_cached(n_terms, p);
    let mut acc = digamma_stirling(&z, p, &bern);
    if m > 0 {
        // subtract sum_{j=0}^{m-1} 1/(j + it), folded to real operations
        let t2 = t_i.mul_p(&t_i, p);
        let mut re_sum = BigReal::zero(p);
        let mut im_sum = BigReal::zero(p);
        for j in 0..m as u64 {
            let den = t2.add_p(&BigReal::from_u64(j * j, p), p);
            re_sum = re_sum.add_p(&BigReal::from_u64(j, p).div_p(&den, p), p);
            im_sum = im_sum.sub_p(&t_i.div_p(&den, p), p);
        }
        acc = acc.sub_p(&BigComplex::new(re_sum, im_sum), p);
    }
    Ok(acc.with_prec(target))
}

/// Default series/continued-fraction crossover for E1.
pub fn e1_default_theta(policy: &PrecisionPolicy) -> f64 {
    ((policy.working_bits as f64) / 8.0 * std::f64::consts::LN_2).max(4.0)
}

/// Exponential integral E1(x) = int_x^inf e^-u / u du for x > 0, with
/// relative error <= 2^-(P-8).
pub fn exp_integral_e1(x: &BigReal, policy: &PrecisionPolicy) -> Result<BigReal> {
    exp_integral_e1_with_theta(x, policy, e1_default_theta(policy))
}

/// E1 with an explicit crossover (exposed so the branch-consistency
/// property can probe both sides at one point).
pub fn exp_integral_e1_with_theta(x: &BigReal, policy: &PrecisionPolicy, theta: f64) -> Result<BigReal> {
    if !x.is_positive() {
        return Err(Error::domain("E1 requires x > 0"));
    }
    let target = policy.working_bits;
    if x.to_f64() <= theta {
        Ok(e1_series(x, target, theta))
    } else {
        Ok(e1_continued_fraction(x, target))
    }
}

/// Power-series branch: E1(x) = -gamma - ln x + sum_{k>=1} (-1)^(k+1) x^k / (k k!).
/// The alternating sum peaks near e^x, so the working precision grows with
/// the crossover to absorb the cancellation.
fn e1_series(x: &BigReal, target: u32, theta: f64) -> BigReal {
    let cancel_bits = (theta * std::f64::consts::LOG2_E).ceil() as u32;
    let p = target + cancel_bits + 48;
    let x_i = x.with_prec(p);
    let gamma_ref = crate::oracle::gamma_bits(p);
    let ln_x = elem::ln(&x_i, p).expect("x > 0");
    let mut sum = BigReal::zero(p);
    let mut pow = BigReal::from_u64(1, p); // x^k / k!
    let mut k = 1u64;
    loop {
        pow = pow.mul_p(&x_i, p).div_u64(k, p);
        let term = pow.div_u64(k, p);
        if term.is_zero() || (k as f64) > theta && term.exponent() < -((target + 16) as i64) {
            break;
        }
        sum = if k % 2 == 1 { sum.add_p(&term, p) } else { sum.sub_p(&term, p) };
        k += 1;
    }
    sum.sub_p(&gamma_ref, p).sub_p(&ln_x, target)
}

/// Continued-fraction branch (modified Lentz):
/// E1(x) = e^-x / (x + 1 - 1^2/(x + 3 - 2^2/(x + 5 - ...))).
fn e1_continued_fraction(x: &BigReal, target: u32) -> BigReal {
    let p = target + 32;
    let x_i = x.with_prec(p);
    let one = BigReal::from_u64(1, p);
    let tiny = BigReal::from_u64(1, p).mul_pow2(-2 * p as i64); // Lentz floor
    let mut b = x_i.add_p(&one, p);
    let mut f = b.clone();
    let mut c = b.clone();
    let mut d = BigReal::zero(p);
    let mut n = 1u64;
    // generous cap: the fraction gains ~4 sqrt(n x) bits by term n
    let max_iter = {
        let xb = x.to_f64().max(4.0);
        let need = (p as f64) * std::f64::consts::LN_2 / 4.0;
        ((need * need / xb).ceil() as u64 + 64) * 2
    };
    loop {
        let a = BigReal::from_i64(-((n * n) as i64), p);
        b = x_i.add_p(&BigReal::from_u64(2 * n + 1, p), p);
        d = b.add_p(&a.mul_p(&d, p), p);
        if d.is_zero() {
            d = tiny.clone();
        }
        c = b.add_p(&a.div_p(&c, p), p);
        if c.is_zero() {
            c = tiny.clone();
        }
        d = one.div_p(&d, p);
        let delta = c.mul_p(&d, p);
        f = f.mul_p(&delta, p);
        let dev = delta.sub_p(&one, p);
        if dev.is_zero() || dev.exponent() < -(p as i64 - 4) {
            break;
        }
        n += 1;
        assert!(n < max_iter, "E1 continued fraction failed to converge");
    }
    elem::exp(&x_i.neg(), p).div_p(&f, target)
}
