//! Named identity checks, each evaluated with both sides computed
//! independently.
//!
//! The two corollary forms are evaluated exactly as printed (1/sinh k,
//! Gamma(pi i k), ...) rather than through the general series evaluator, so
//! they genuinely cross-check the specialization algebra. The classical
//! exponential-integral formula covers the w -> 0 limit as its own identity
//! (driving w numerically toward zero would blow up the double-exponential
//! sum instead). The transform spot check integrates term by term in closed
//! form, which reduces it to a geometric series against Gamma(a)/(1-e^{-aw}).

use crate::big::consts;
use crate::big::elem;
use crate::big::real::BigReal;
use crate::big::{working_precision, PrecisionPolicy};
use crate::error::{Error, Result};
use crate::oracle;
use crate::series::TailBound;
use crate::specfun;

const LN10: f64 = std::f64::consts::LN_10;
const LOG10_E: f64 = std::f64::consts::LOG10_E;

/// Outcome of one identity check. `pass` holds iff
/// |lhs - rhs| <= 10^-(digits-2).
#[derive(Clone, Debug)]
pub struct IdentityReport {
    pub name: &'static str,
    pub lhs: BigReal,
    pub rhs: BigReal,
    pub abs_diff: TailBound,
    pub digits: u32,
    pub pass: bool,
}

/// A formula evaluation with the term counts its planner chose.
#[derive(Clone, Debug)]
pub struct FormulaEval {
    pub value: BigReal,
    pub term_counts: (u32, u32, u32),
}

fn make_report(name: &'static str, lhs: BigReal, rhs: BigReal, digits: u32) -> IdentityReport {
    let p = lhs.prec().max(rhs.prec()) + 8;
    let diff = lhs.sub_p(&rhs, p).abs();
    let tol = consts::pow10(-(digits as i64) + 2, p.max(64));
    let pass = diff.abs_le(&tol);
    IdentityReport {
        name,
        lhs,
        rhs,
        abs_diff: TailBound::from_log10(diff.log10_abs()),
        digits,
        pass,
    }
}

// ---------------------------------------------------------------------
// Corollary specializations, printed forms
// ---------------------------------------------------------------------

/// gamma = -2 sum e^{-e^{2k+1}} + sum (-1)^{k+1}/(k! sinh k)
///         - 2 sum (-1)^{k+1} Re[Gamma(pi i k)]
/// (the x = e, w = 2 specialization in its printed shape).
pub fn corollary_one_value(digits: u32) -> Result<FormulaEval> {
    let policy = working_precision(digits)?;
    let p = policy.working_bits + 32;
    let d = digits as f64;

    // double-exponential part: stop once e^{2k+1} >= (D+4) ln 10
    let thr = ((d + 4.0) * LN10).ln();
    let mut k1 = 0u32;
    while (2 * k1 + 1) as f64 <= thr {
        k1 += 1;
    }
    let k1 = k1.max(1);
    let mut terms1 = Vec::with_capacity(k1 as usize);
    for k in 0..k1 as u64 {
        let e_arg = elem::exp(&BigReal::from_u64(2 * k + 1, p), p);
        terms1.push(elem::exp(&e_arg.neg(), p));
    }

    // alternating 1/(k! sinh k) part
    let mut k2 = 1u32;
    let mut lf = 0.0f64;
    loop {
        lf += (k2 as f64).ln();
        let ln_sinh = if k2 > 30 {
            k2 as f64 - std::f64::consts::LN_2
        } else {
            (k2 as f64).sinh().ln()
        };
        if lf + ln_sinh >= (d + 4.0) * LN10 {
            break;
        }
        k2 += 1;
    }
    let mut terms2 = Vec::with_capacity(k2 as usize);
    let mut inv_fact = BigReal::from_u64(1, p);
    for k in 1..=k2 as u64 {
        inv_fact = inv_fact.div_u64(k, p);
        let sinh_k = elem::sinh(&BigReal::from_u64(k, p), p);
        terms2.push(inv_fact.div_p(&sinh_k, p));
    }

    // oscillatory part: Gamma(pi i k), modulus bound from the identity
    let mut k3 = 1u32;
    while gamma_imag_modulus_log10(std::f64::consts::PI * k3 as f64) > -(d + 4.0) {
        k3 += 1;
    }
    let inner = PrecisionPolicy {
        digits,
        guard_bits: policy.guard_bits,
        working_bits: p,
    };
    let pi = consts::pi(p);
    let terms3: Vec<BigReal> = (1..=k3 as u64)
        .map(|k| {
            let t = pi.mul_u64(k, p);
            specfun::gamma_imag(&t, &inner).expect("t > 0").re
        })
        .collect();

    let mut sum1 = BigReal::zero(p);
    for t in terms1.iter().rev() {
        sum1 = sum1.add_p(t, p);
    }
    let mut sum2 = BigReal::zero(p);
    for (i, t) in terms2.iter().enumerate().rev() {
        let k = i as u64 + 1;
        sum2 = if k % 2 == 1 { sum2.add_p(t, p) } else { sum2.sub_p(t, p) };
    }
    let mut sum3 = BigReal::zero(p);
    for (i, t) in terms3.iter().enumerate().rev() {
        let k = i as u64 + 1;
        sum3 = if k % 2 == 1 { sum3.add_p(t, p) } else { sum3.sub_p(t, p) };
    }

    let value = sum2
        .sub_p(&sum1.mul_pow2(1), p)
        .sub_p(&sum3.mul_pow2(1), p)
        .with_prec(policy.working_bits);
    Ok(FormulaEval {
        value,
        term_counts: (k1, k2, k3),
    })
}

/// gamma = 1/2 - sum e^{-e^k} + sum (-1)^{k+1}/(k! (e^k - 1))
///         + 2 sum Re[Gamma(2 pi i k)]
/// (the x = w = 1 specialization; the alternating sum carries coefficient
/// w = 1, which is what the specialization algebra and the numerics force).
pub fn corollary_two_value(digits: u32) -> Result<FormulaEval> {
    let policy = working_precision(digits)?;
    let p = policy.working_bits + 32;
    let d = digits as f64;

    let thr = ((d + 4.0) * LN10).ln();
    let mut k1 = 0u32;
    while (k1 as f64) <= thr {
        k1 += 1;
    }
    let mut terms1 = Vec::with_capacity(k1 as usize);
    for k in 0..k1 as u64 {
        let e_arg = elem::exp(&BigReal::from_u64(k, p), p);
        terms1.push(elem::exp(&e_arg.neg(), p));
    }

    let mut k2 = 1u32;
    let mut lf = 0.0f64;
    loop {
        lf += (k2 as f64).ln();
        let ln_den = if k2 > 30 {
            k2 as f64
        } else {
            (k2 as f64).exp_m1().ln()
        };
        if lf + ln_den >= (d + 4.0) * LN10 {
            break;
        }
        k2 += 1;
    }
    let one = BigReal::from_u64(1, p);
    let mut terms2 = Vec::with_capacity(k2 as usize);
    let mut inv_fact = one.clone();
    for k in 1..=k2 as u64 {
        inv_fact = inv_fact.div_u64(k, p);
        let den = elem::expm1(&BigReal::from_u64(k, p), p);
        terms2.push(inv_fact.div_p(&den, p));
    }

    let mut k3 = 1u32;
    while gamma_imag_modulus_log10(2.0 * std::f64::consts::PI * k3 as f64) > -(d + 4.0) {
        k3 += 1;
    }
    let inner = PrecisionPolicy {
        digits,
        guard_bits: policy.guard_bits,
        working_bits: p,
    };
    let two_pi = consts::two_pi(p);
    let terms3: Vec<BigReal> = (1..=k3 as u64)
        .map(|k| {
            let t = two_pi.mul_u64(k, p);
            specfun::gamma_imag(&t, &inner).expect("t > 0").re
        })
        .collect();

    let mut sum1 = BigReal::zero(p);
    for t in terms1.iter().rev() {
        sum1 = sum1.add_p(t, p);
    }
    let mut sum2 = BigReal::zero(p);
    for (i, t) in terms2.iter().enumerate().rev() {
        let k = i as u64 + 1;
        sum2 = if k % 2 == 1 { sum2.add_p(t, p) } else { sum2.sub_p(t, p) };
    }
    let mut sum3 = BigReal::zero(p);
    for t in terms3.iter().rev() {
        sum3 = sum3.add_p(t, p);
    }

    let value = one
        .mul_pow2(-1)
        .sub_p(&sum1, p)
        .add_p(&sum2, p)
        .add_p(&sum3.mul_pow2(1), p)
        .with_prec(policy.working_bits);
    Ok(FormulaEval {
        value,
        term_counts: (k1, k2, k3),
    })
}

fn gamma_imag_modulus_log10(t: f64) -> f64 {
    let pi_t = std::f64::consts::PI * t;
    let ln_sinh = if pi_t > 40.0 {
        pi_t - std::f64::consts::LN_2
    } else {
        pi_t.sinh().ln()
    };
    0.5 * (std::f64::consts::PI.ln() - t.ln() - ln_sinh) * LOG10_E
}

/// Checks the x = e, w = 2 corollary against the reference constant.
pub fn corollary_one(digits: u32) -> Result<IdentityReport> {
    let eval = corollary_one_value(digits)?;
    let gamma = oracle::gamma_bits(working_precision(digits)?.working_bits);
    Ok(make_report("corollary-1", gamma, eval.value, digits))
}

/// Checks the x = w = 1 corollary against the reference constant.
pub fn corollary_two(digits: u32) -> Result<IdentityReport> {
    let eval = corollary_two_value(digits)?;
    let gamma = oracle::gamma_bits(working_precision(digits)?.working_bits);
    Ok(make_report("corollary-2", gamma, eval.value, digits))
}

// ---------------------------------------------------------------------
// Classical limit: gamma = -log x - E1(x) + sum (-1)^{k+1} x^k/(k k!)
// ---------------------------------------------------------------------

/// Evaluates the classical exponential-integral form at x.
pub fn limiting_value(x: &BigReal, digits: u32) -> Result<FormulaEval> {
    if !x.is_positive() {
        return Err(Error::invalid("x must satisfy x > 0"));
    }
    let policy = working_precision(digits)?;
    let d = digits as f64;
    let x_f = x.to_f64();
    // cancellation headroom: partial sums peak near e^x
    let cancel = (x_f * std::f64::consts::LOG2_E).max(0.0).ceil() as u32;
    let p = policy.working_bits + 32 + cancel;

    let ln_x = x.log10_abs() * LN10;
    let mut n = (2.0 * x_f).ceil().max(1.0) as u64;
    let mut lf: f64 = (1..=n).map(|j| (j as f64).ln()).sum();
    while (n as f64 * ln_x - lf - (n as f64).ln()) * LOG10_E > -(d + 4.0) {
        n += 1;
        lf += (n as f64).ln();
    }

    let x_i = x.with_prec(p);
    let mut terms = Vec::with_capacity(n as usize);
    let mut pow = BigReal::from_u64(1, p);
    for k in 1..=n {
        pow = pow.mul_p(&x_i, p).div_u64(k, p);
        terms.push(pow.div_u64(k, p));
    }
    let mut series = BigReal::zero(p);
    for (i, t) in terms.iter().enumerate().rev() {
        let k = i as u64 + 1;
        series = if k % 2 == 1 { series.add_p(t, p) } else { series.sub_p(t, p) };
    }

    let e1_policy = PrecisionPolicy {
        digits,
        guard_bits: policy.guard_bits,
        working_bits: p,
    };
    let e1 = specfun::exp_integral_e1(&x_i, &e1_policy)?;
    let ln_x_big = elem::ln(&x_i, p).expect("x > 0");
    let value = series
        .sub_p(&e1, p)
        .sub_p(&ln_x_big, p)
        .with_prec(policy.working_bits);
    Ok(FormulaEval {
        value,
        term_counts: (0, n as u32, 0),
    })
}

/// Checks the classical formula at x against the reference constant.
pub fn limiting_formula(x: &BigReal, digits: u32) -> Result<IdentityReport> {
    let eval = limiting_value(x, digits)?;
    let gamma = oracle::gamma_bits(working_precision(digits)?.working_bits);
    Ok(make_report("limiting-formula", gamma, eval.value, digits))
}

// ---------------------------------------------------------------------
// 6 gamma^2 + pi^2 display
// ---------------------------------------------------------------------

/// 6 gamma^2 + pi^2 = 1 + 12 sum k (e^{-e^k} - e^{-e^{-k}} + 1)
///                    - 24 sum Re[Gamma'(2 pi i k)].
///
/// The k-term composes 1 - e^{-e^{-k}} as -expm1(-u) with u = e^{-k}
/// separately from e^{-e^k}; a naive subtraction would cancel every digit
/// once e^{-e^{-k}} approaches 1.
pub fn gamma_pi_identity(digits: u32) -> Result<IdentityReport> {
    let policy = working_precision(digits)?;
    let p = policy.working_bits + 32;
    let d = digits as f64;

    // lhs from reference constants
    let gamma = oracle::gamma_bits(p);
    let pi = consts::pi(p);
    let lhs = gamma
        .mul_p(&gamma, p)
        .mul_u64(6, p)
        .add_p(&pi.mul_p(&pi, p), p)
        .with_prec(policy.working_bits);

    // k-sum: terms settle onto k e^{-k}; stop once 2k e^{-k} clears the
    // target
    let mut k_max = 1u64;
    while ((2 * k_max) as f64).ln() - k_max as f64 > -(d + 4.0) * LN10 {
        k_max += 1;
    }
    let mut terms_k = Vec::with_capacity(k_max as usize);
    for k in 1..=k_max {
        let e_k = elem::exp(&BigReal::from_u64(k, p), p);
        let a = elem::exp(&e_k.neg(), p); // e^{-e^k}; underflows to 0 for large k
        let u = elem::exp(&BigReal::from_u64(k, p).neg(), p);
        let b = elem::expm1(&u.neg(), p).neg(); // 1 - e^{-u}
        terms_k.push(a.add_p(&b, p).mul_u64(k, p));
    }
    let mut ksum = BigReal::zero(p);
    for t in terms_k.iter().rev() {
        ksum = ksum.add_p(t, p);
    }

    // Gamma' sum: |Gamma'(2 pi i k)| <= |Gamma(2 pi i k)| (ln 2 pi k + 2)
    let mut k3 = 1u64;
    loop {
        let t = 2.0 * std::f64::consts::PI * k3 as f64;
        let bound = gamma_imag_modulus_log10(t) + (t.ln() + 2.0).log10();
        if bound <= -(d + 4.0) {
            break;
        }
        k3 += 1;
    }
    let inner = PrecisionPolicy {
        digits,
        guard_bits: policy.guard_bits,
        working_bits: p,
    };
    let two_pi = consts::two_pi(p);
    let terms_g: Vec<BigReal> = (1..=k3)
        .map(|k| {
            let t = two_pi.mul_u64(k, p);
            let g = specfun::gamma_imag(&t, &inner).expect("t > 0");
            let psi = specfun::digamma_imag(&t, &inner).expect("t > 0");
            g.mul_p(&psi, p).re
        })
        .collect();
    let mut gsum = BigReal::zero(p);
    for t in terms_g.iter().rev() {
        gsum = gsum.add_p(t, p);
    }

    let one = BigReal::from_u64(1, p);
    let rhs = one
        .add_p(&ksum.mul_u64(12, p), p)
        .sub_p(&gsum.mul_u64(24, p), p)
        .with_prec(policy.working_bits);
    Ok(make_report("gamma-pi", lhs, rhs, digits))
}

// ---------------------------------------------------------------------
// Transform spot check
// ---------------------------------------------------------------------

/// Digit target for the spot check (a modest-precision verification).
pub const MELLIN_DIGITS: u32 = 30;

/// Verifies int_0^inf x^{a-1} sum_k e^{-x e^{wk}} dx = Gamma(a)/(1-e^{-aw})
/// for 0 < a <= 1, w > 0: each term integrates in closed form to
/// Gamma(a) e^{-awk}, so the truncated left side is a geometric partial sum
/// with a certified tail.
pub fn mellin_spot_check(a: &BigReal, w: &BigReal) -> Result<IdentityReport> {
    let one_small = BigReal::from_u64(1, 64);
    if !a.is_positive() || !a.abs_le(&one_small) {
        return Err(Error::invalid("a must lie in (0, 1]"));
    }
    if !w.is_positive() {
        return Err(Error::invalid("w must satisfy w > 0"));
    }
    let digits = MELLIN_DIGITS;
    let policy = working_precision(digits)?;
    let p = policy.working_bits + 16;
    let a_i = a.with_prec(p);
    let w_i = w.with_prec(p);

    let gamma_a = specfun::gamma_real(&a_i, &policy)?.with_prec(p);
    let aw = a_i.mul_p(&w_i, p);
    let denom = elem::expm1(&aw.neg(), p).neg(); // 1 - e^{-aw}
    let rhs = gamma_a.div_p(&denom, p);

    // geometric partial sum up to K with ratio e^{-aw}
    let aw_f = aw.to_f64();
    let k_cap = (((digits as f64 + 6.0) * LN10) / aw_f).ceil() as u64 + 1;
    let r = elem::exp(&aw.neg(), p);
    let mut powers = Vec::with_capacity(k_cap as usize + 1);
    let mut cur = BigReal::from_u64(1, p);
    powers.push(cur.clone());
    for _ in 1..=k_cap {
        cur = cur.mul_p(&r, p);
        powers.push(cur.clone());
    }
    let mut geo = BigReal::zero(p);
    for t in powers.iter().rev() {
        geo = geo.add_p(t, p);
    }
    let lhs = gamma_a.mul_p(&geo, p);

    Ok(make_report(
        "mellin-transform",
        lhs.with_prec(policy.working_bits),
        rhs.with_prec(policy.working_bits),
        digits,
    ))
}

/// Relative difference |lhs/rhs - 1| of a report, for tolerance checks
/// stated in relative terms.
pub fn relative_diff(report: &IdentityReport) -> f64 {
    let p = report.lhs.prec().max(64);
    let diff = report.lhs.sub_p(&report.rhs, p).abs();
    if diff.is_zero() {
        return 0.0;
    }
    10f64.powf(diff.log10_abs() - report.rhs.log10_abs())
}
