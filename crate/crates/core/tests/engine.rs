//! Cross-module checks through the public API: the evaluator against the
//! independent reference, corollary paths against the general path, and the
//! identity suite at digit counts beyond the unit tests.

use eulergamma::big::consts;
use eulergamma::big::format::to_decimal_string;
use eulergamma::big::working_precision;
use eulergamma::identities;
use eulergamma::oracle;
use eulergamma::series::{euler_gamma, SeriesParams};
use eulergamma::BigReal;

#[test]
fn evaluator_matches_reference_at_d50() {
    let params = SeriesParams::from_decimal("1", "1", 50).unwrap();
    let value = euler_gamma(&params).value;
    let reference = oracle::reference_gamma(50).unwrap().value;
    let diff = value.sub_p(&reference, 400).abs();
    assert!(diff.log10_abs() < -48.0, "diff 10^{}", diff.log10_abs());
}

#[test]
fn corollary_paths_cross_check_general_path_at_d120() {
    let d = 120u32;
    let bits = working_precision(d).unwrap().working_bits;
    let c1 = identities::corollary_one_value(d).unwrap().value;
    let c2 = identities::corollary_two_value(d).unwrap().value;
    let general_e2 =
        euler_gamma(&SeriesParams::new(consts::e(bits), BigReal::from_u64(2, bits), d).unwrap()).value;
    let general_11 = euler_gamma(&SeriesParams::from_decimal("1", "1", d).unwrap()).value;
    assert!(c1.sub_p(&general_e2, bits).abs().log10_abs() < -118.0);
    assert!(c2.sub_p(&general_11, bits).abs().log10_abs() < -118.0);
}

#[test]
fn identity_reports_pass_at_d500() {
    let c1 = identities::corollary_one(500).unwrap();
    let c2 = identities::corollary_two(500).unwrap();
    assert!(c1.pass, "corollary-1 diff 10^{}", c1.abs_diff.log10());
    assert!(c2.pass, "corollary-2 diff 10^{}", c2.abs_diff.log10());
    assert!(c1.abs_diff.log10() <= -498.0);
    assert!(c2.abs_diff.log10() <= -498.0);
}

#[test]
fn gamma_pi_and_limit_pass_at_d300() {
    let gp = identities::gamma_pi_identity(300).unwrap();
    assert!(gp.pass, "gamma-pi diff 10^{}", gp.abs_diff.log10());
    let bits = working_precision(300).unwrap().working_bits;
    let lf = identities::limiting_formula(&BigReal::from_u64(2, bits), 300).unwrap();
    assert!(lf.pass, "limit diff 10^{}", lf.abs_diff.log10());
}

#[test]
fn rendered_digits_are_stable_across_digit_targets() {
    // the first 40 digits of a 60-digit run match a 40-digit run
    let a = euler_gamma(&SeriesParams::from_decimal("1", "1", 60).unwrap()).value;
    let b = euler_gamma(&SeriesParams::from_decimal("1", "1", 40).unwrap()).value;
    assert_eq!(to_decimal_string(&a, 40), to_decimal_string(&b, 40));
}

#[test]
fn evaluator_handles_asymmetric_parameters() {
    // sharp x and w values away from the defaults still hit the target
    let cases = [("0.03125", "4"), ("17", "0.5"), ("3.75", "1.375")];
    let reference = oracle::reference_gamma(80).unwrap().value;
    for (x, w) in cases {
        let r = euler_gamma(&SeriesParams::from_decimal(x, w, 80).unwrap());
        let diff = r.value.sub_p(&reference, 500).abs();
        assert!(
            diff.log10_abs() < -78.0,
            "(x,w)=({x},{w}): diff 10^{}",
            diff.log10_abs()
        );
    }
}
