//! Acceptance suite: one test per criterion, each printing a PASS line with
//! the measured quantity. Run with
//! `cargo test -p eulergamma-cli --test acceptance -- --nocapture`.

use std::process::Command;
use std::time::Instant;

use eulergamma::big::consts;
use eulergamma::big::elem;
use eulergamma::big::format::to_decimal_string;
use eulergamma::big::{working_precision, PrecisionPolicy};
use eulergamma::identities;
use eulergamma::oracle;
use eulergamma::series::{
    euler_gamma, plan_truncation, sum_alternating, sum_double_exponential, sum_gamma_oscillatory,
    SeriesParams,
};
use eulergamma::specfun;
use eulergamma::BigReal;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_eulergamma"))
}

fn params(x: &str, w: &str, d: u32) -> SeriesParams {
    SeriesParams::from_decimal(x, w, d).unwrap()
}

fn pow10_tol(e: i64, bits: u32) -> BigReal {
    consts::pow10(e, bits)
}

#[test]
fn acceptance_01_digit_correctness_d1000() {
    let start = Instant::now();
    let r = euler_gamma(&params("1", "1", 1000));
    let elapsed = start.elapsed();
    let reference = oracle::reference_gamma(1000).unwrap().value;
    let diff = r.value.sub_p(&reference, 4000).abs();
    let tol = pow10_tol(-998, 4000);
    assert!(
        diff.abs_le(&tol),
        "criterion 1 FAILED: |diff| = 10^{:.1}",
        diff.log10_abs()
    );
    assert!(
        elapsed.as_secs() < 60,
        "criterion 1 FAILED: runtime {elapsed:?} exceeds 60 s"
    );
    println!(
        "[PASS] criterion 01 — euler_gamma(1,1,1000) vs independent reference: |diff| = 10^{:.1} (tol 1e-998), runtime {:.2?}",
        diff.log10_abs(),
        elapsed
    );
}

#[test]
fn acceptance_02_twelve_digit_anchor() {
    let r = euler_gamma(&params("1", "1", 12));
    let digits = to_decimal_string(&r.value, 12);
    assert_eq!(digits, "0.577215664901", "criterion 2 FAILED");
    println!("[PASS] criterion 02 — first 12 digits: {digits}");
}

#[test]
fn acceptance_03_parameter_invariance_d200() {
    let d = 200u32;
    let bits = working_precision(d).unwrap().working_bits;
    let one = BigReal::from_u64(1, bits);
    let grid = [
        SeriesParams::new(one.clone(), one.clone(), d).unwrap(),
        SeriesParams::new(consts::e(bits), BigReal::from_u64(2, bits), d).unwrap(),
        SeriesParams::new(BigReal::from_u64(2, bits), one.clone(), d).unwrap(),
        SeriesParams::new(one.mul_pow2(-1), BigReal::from_u64(3, bits), d).unwrap(),
        SeriesParams::new(one.clone(), consts::ln2(bits), d).unwrap(),
    ];
    let values: Vec<BigReal> = grid.iter().map(|p| euler_gamma(p).value).collect();
    let tol = pow10_tol(-198, bits);
    let mut worst = f64::NEG_INFINITY;
    for i in 0..values.len() {
        for j in (i + 1)..values.len() {
            let diff = values[i].sub_p(&values[j], bits).abs();
            worst = worst.max(diff.log10_abs());
            assert!(
                diff.abs_le(&tol),
                "criterion 3 FAILED: pair ({i},{j}) differs by 10^{:.1}",
                diff.log10_abs()
            );
        }
    }
    println!("[PASS] criterion 03 — 10 grid pairs at D=200 agree; worst |diff| = 10^{worst:.1} (tol 1e-198)");
}

#[test]
fn acceptance_04_corollary_fidelity_d200() {
    let d = 200u32;
    let bits = working_precision(d).unwrap().working_bits;
    let tol = pow10_tol(-198, bits);
    let reference = oracle::reference_gamma(d).unwrap().value;

    let c1 = identities::corollary_one_value(d).unwrap().value;
    let c2 = identities::corollary_two_value(d).unwrap().value;
    let g_e2 = euler_gamma(&SeriesParams::new(consts::e(bits), BigReal::from_u64(2, bits), d).unwrap()).value;
    let g_11 = euler_gamma(&params("1", "1", d)).value;

    let checks = [
        ("corollary-1 vs reference", c1.sub_p(&reference, bits).abs()),
        ("corollary-2 vs reference", c2.sub_p(&reference, bits).abs()),
        ("corollary-1 vs general(e,2)", c1.sub_p(&g_e2, bits).abs()),
        ("corollary-2 vs general(1,1)", c2.sub_p(&g_11, bits).abs()),
    ];
    let mut worst = f64::NEG_INFINITY;
    for (label, diff) in checks {
        worst = worst.max(diff.log10_abs());
        assert!(
            diff.abs_le(&tol),
            "criterion 4 FAILED at {label}: 10^{:.1}",
            diff.log10_abs()
        );
    }
    println!("[PASS] criterion 04 — corollary forms reproduce the constant at D=200; worst |diff| = 10^{worst:.1}");
}

#[test]
fn acceptance_05_gamma_modulus_identity_d100() {
    let policy = working_precision(100).unwrap();
    let p = policy.working_bits; // 372
    let tol = BigReal::from_u64(1, 64).mul_pow2(-(p as i64) + 16);
    let one = BigReal::from_u64(1, p);
    let pi = consts::pi(p);
    let ts = [
        BigReal::from_f64(0.5, p),
        one.clone(),
        consts::two_pi(p),
        BigReal::from_u64(10, p),
        BigReal::from_u64(50, p),
    ];
    let mut worst = i64::MIN;
    for t in &ts {
        let g = specfun::gamma_imag(t, &policy).unwrap();
        let sinh_pi_t = elem::sinh(&pi.mul_p(t, p), p);
        let product = g.norm_sqr(p).mul_p(t, p).mul_p(&sinh_pi_t, p).div_p(&pi, p);
        let dev = product.sub_p(&one, p).abs();
        if !dev.is_zero() {
            worst = worst.max(dev.exponent());
        }
        assert!(
            dev.abs_le(&tol),
            "criterion 5 FAILED at t={}: deviation 2^{}",
            t.to_f64(),
            dev.exponent()
        );
    }
    println!(
        "[PASS] criterion 05 — modulus identity at D=100 over 5 t-values; worst deviation 2^{worst} (tol 2^-{})",
        p - 16
    );
}

#[test]
fn acceptance_06_decay_estimate_fitted_constant() {
    let policy = working_precision(30).unwrap();
    let p = policy.working_bits;
    let mut fitted: f64 = 0.0;
    for w in [1u64, 2] {
        for k in 1..=40u64 {
            let t = consts::two_pi(p).mul_u64(k, p).div_u64(w, p);
            let modulus = specfun::gamma_imag(&t, &policy).unwrap().abs(p);
            // C_k = |Gamma(2 pi i k / w)| * e^{pi^2 k / w}
            let envelope = elem::exp(
                &consts::pi(p)
                    .mul_p(&consts::pi(p), p)
                    .mul_u64(k, p)
                    .div_u64(w, p),
                p,
            );
            let c = modulus.mul_p(&envelope, p).to_f64();
            fitted = fitted.max(c);
        }
    }
    assert!(fitted <= 10.0, "criterion 6 FAILED: fitted C = {fitted}");
    println!("[PASS] criterion 06 — |Gamma(2 pi i k/w)| <= C e^(-pi^2 k/w) for k=1..40, w in {{1,2}}; fitted C = {fitted:.3} <= 10");
}

#[test]
fn acceptance_07_gamma_pi_identity_d100() {
    let r = identities::gamma_pi_identity(100).unwrap();
    assert!(
        r.pass && r.abs_diff.log10() <= -98.0,
        "criterion 7 FAILED: |diff| = 10^{:.1}",
        r.abs_diff.log10()
    );
    println!(
        "[PASS] criterion 07 — 6*gamma^2 + pi^2 display verifies at D=100: |diff| = 10^{:.1}",
        r.abs_diff.log10()
    );
}

#[test]
fn acceptance_08_limiting_formula_d100() {
    let bits = working_precision(100).unwrap().working_bits;
    let xs = [
        BigReal::from_u64(1, bits).mul_pow2(-1),
        BigReal::from_u64(1, bits),
        BigReal::from_u64(2, bits),
    ];
    let mut worst = f64::NEG_INFINITY;
    for x in &xs {
        let r = identities::limiting_formula(x, 100).unwrap();
        worst = worst.max(r.abs_diff.log10());
        assert!(
            r.pass && r.abs_diff.log10() <= -98.0,
            "criterion 8 FAILED at x={}: |diff| = 10^{:.1}",
            x.to_f64(),
            r.abs_diff.log10()
        );
    }
    println!("[PASS] criterion 08 — exponential-integral formula at x in {{0.5, 1, 2}}, D=100; worst |diff| = 10^{worst:.1}");
}

#[test]
fn acceptance_09_mellin_spot_check() {
    let one = BigReal::from_u64(1, 96);
    let half = one.mul_pow2(-1);
    let two = BigReal::from_u64(2, 96);
    let cases = [
        ("a=1, w=1", identities::mellin_spot_check(&one, &one).unwrap()),
        ("a=1/2, w=1", identities::mellin_spot_check(&half, &one).unwrap()),
        ("a=1/2, w=2", identities::mellin_spot_check(&half, &two).unwrap()),
    ];
    let mut worst: f64 = 0.0;
    for (label, r) in cases {
        let rel = identities::relative_diff(&r);
        worst = worst.max(rel);
        assert!(rel <= 1e-12, "criterion 9 FAILED at {label}: rel = {rel:e}");
    }
    println!("[PASS] criterion 09 — transform spot check at 30-digit working precision; worst rel diff = {worst:.2e} (tol 1e-12)");
}

#[test]
fn acceptance_10_term_magnitude_claim() {
    // CLI report for the decimal-e approximation
    let out = bin()
        .args([
            "exponent",
            "--x",
            "2.718281828459045",
            "--w",
            "2",
            "--k",
            "10",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let line = String::from_utf8(out.stdout).unwrap();
    let (mant_s, exp_s) = line.trim().split_once('e').expect("mantissa e exponent");
    let cli_mant: f64 = mant_s.parse().unwrap();
    let cli_exp: i64 = exp_s.parse().unwrap();
    assert!(
        (-572_754_398..=-572_754_397).contains(&cli_exp),
        "criterion 10 FAILED: exponent {cli_exp}"
    );

    // oracle for the same decimal x at doubled precision
    let p2 = 512;
    let x = eulergamma::big::format::parse_decimal("2.718281828459045", p2).unwrap();
    let arg = x.mul_p(&elem::exp(&BigReal::from_u64(20, p2), p2), p2);
    let (mant_o, exp_o) = elem::exponent_of_exp_neg(&arg).unwrap();
    assert_eq!(cli_exp, exp_o, "criterion 10 FAILED: exponent mismatch vs oracle");
    assert!(
        (cli_mant - mant_o.to_f64()).abs() < 1e-9,
        "criterion 10 FAILED: mantissa {cli_mant} vs oracle {}",
        mant_o.to_f64()
    );

    // exact-e evaluation of e^21 / ln 10 at high precision: the recorded
    // claim of a leading digit 7 at 10^-572,754,397
    let arg_e = elem::exp(&BigReal::from_u64(21, p2), p2);
    let (mant_e, exp_e) = elem::exponent_of_exp_neg(&arg_e).unwrap();
    assert_eq!(exp_e, -572_754_397);
    assert!(
        (mant_e.to_f64() - 7.357931618359164).abs() < 1e-8,
        "criterion 10 FAILED: exact-e mantissa {}",
        mant_e.to_f64()
    );
    println!(
        "[PASS] criterion 10 — term k=10 at (x~e, w=2): {} x 10^{cli_exp}; exact e^21 gives {:.9} x 10^{exp_e} — leading digit 7 confirmed",
        mant_s.trim(),
        mant_e.to_f64()
    );
}

#[test]
fn acceptance_11_tail_soundness() {
    for d in [20u32, 50] {
        let p = params("1", "1", d);
        let policy: PrecisionPolicy = p.policy();
        let plan = plan_truncation(&p);
        let base = euler_gamma(&p);

        let pw = policy.working_bits + 16;
        let w = p.w().with_prec(pw);
        let ln_x = elem::ln(&p.x().with_prec(pw), pw).unwrap();
        let s1 = sum_double_exponential(&p, plan.n1 + 10, &policy);
        let s2 = sum_alternating(&p, plan.n2 + 10, &policy);
        let s3 = sum_gamma_oscillatory(&p, plan.n3 + 10, &policy);
        let refined = w
            .mul_pow2(-1)
            .sub_p(&ln_x, pw)
            .sub_p(&w.mul_p(&s1, pw), pw)
            .add_p(&w.mul_p(&s2, pw), pw)
            .add_p(&s3, pw);
        let delta = refined.sub_p(&base.value, pw).abs();
        let bound = base.error_bound.to_big(pw);
        assert!(
            delta.abs_le(&bound),
            "criterion 11 FAILED at D={d}: delta 10^{:.1} vs bound 10^{:.1}",
            delta.log10_abs(),
            base.error_bound.log10()
        );
        println!(
            "[PASS] criterion 11 — D={d}: +10 extra terms move the result by 10^{:.1}, under the reported bound 10^{:.1}",
            delta.log10_abs(),
            base.error_bound.log10()
        );
    }
}

#[test]
fn acceptance_12_bit_identical_stdout() {
    let run = |threads: Option<&str>| {
        let mut c = bin();
        c.args(["compute", "--digits", "500"]);
        if let Some(t) = threads {
            c.env("THREADS", t);
        }
        let out = c.output().unwrap();
        assert!(out.status.success());
        out.stdout
    };
    let a = run(None); // default: maximum available parallelism
    let b = run(None);
    let c = run(Some("1"));
    assert_eq!(a, b, "criterion 12 FAILED: repeated runs differ");
    assert_eq!(a, c, "criterion 12 FAILED: parallel and serial runs differ");
    assert_eq!(a.len(), 503, "digits + '0.' + newline");
    println!("[PASS] criterion 12 — `compute --digits 500` stdout is bit-identical across runs and thread counts");
}
