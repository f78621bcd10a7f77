//! Decimal parsing and printing.
//!
//! Parsing maps a decimal literal onto the nearest `prec`-bit value
//! (digits * 10^e evaluated in integer arithmetic, one rounding at the end).
//! Printing truncates toward zero: the digit string of `floor(|v| * 10^D)`
//! is exactly determined by the computed value, so repeated runs render
//! bit-identical output.

use num_bigint::BigUint;
use num_traits::{Num, Zero};

use super::consts;
use super::real::{BigReal, Sign};
use crate::error::{Error, Result};

/// Parses a decimal literal (`12`, `-0.5`, `2.75e-3`) to `prec` bits.
pub fn parse_decimal(s: &str, prec: u32) -> Result<BigReal> {
    let t = s.trim();
    if t.is_empty() {
        return Err(Error::invalid("empty decimal literal"));
    }
    let (sign, rest) = match t.as_bytes()[0] {
        b'+' => (Sign::Pos, &t[1..]),
        b'-' => (Sign::Neg, &t[1..]),
        _ => (Sign::Pos, t),
    };
    let (mantissa_part, exp_part) = match rest.find(['e', 'E']) {
        Some(i) => (&rest[..i], Some(&rest[i + 1..])),
        None => (rest, None),
    };
    let exp10: i64 = match exp_part {
        Some(e) if !e.is_empty() => e
            .parse()
            .map_err(|_| Error::invalid(format!("bad exponent in decimal literal: {s:?}")))?,
        Some(_) => return Err(Error::invalid(format!("bad exponent in decimal literal: {s:?}"))),
        None => 0,
    };
    let (int_part, frac_part) = match mantissa_part.find('.') {
        Some(i) => (&mantissa_part[..i], &mantissa_part[i + 1..]),
        None => (mantissa_part, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(Error::invalid(format!("no digits in decimal literal: {s:?}")));
    }
    let digits: String = int_part.chars().chain(frac_part.chars()).collect();
    if !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::invalid(format!("bad decimal literal: {s:?}")));
    }
    let n = BigUint::from_str_radix(&digits, 10).map_err(|_| Error::invalid("bad digits"))?;
    if n.is_zero() {
        return Ok(BigReal::zero(prec));
    }
    let scale = exp10 - frac_part.len() as i64;
    let p = prec + 16;
    let base = BigReal::from_biguint(sign, n, 0, p);
    let v = if scale == 0 {
        base
    } else if scale > 0 {
        base.mul_p(&consts::pow10(scale, p), p)
    } else {
        let pow = BigReal::from_biguint(Sign::Pos, BigUint::from(10u32).pow((-scale) as u32), 0, p);
        base.div_p(&pow, p)
    };
    Ok(v.with_prec(prec))
}

/// Renders |v| truncated to `digits` places after the decimal point, with
/// sign, e.g. `0.57721...` or `-12.5000...`. The caller supplies a value
/// whose working precision comfortably exceeds `digits` decimal digits.
pub fn to_decimal_string(v: &BigReal, digits: u32) -> String {
    let sign = if v.is_negative() { "-" } else { "" };
    if v.is_zero() {
        return format!("{sign}0.{}", "0".repeat(digits as usize));
    }
    let scaled = v
        .abs()
        .mul_p(&consts::pow10(digits as i64, v.prec() + 2 * digits + 32), v.prec() + 2 * digits + 32);
    let int = scaled.floor_biguint();
    let s = int.to_str_radix(10);
    let d = digits as usize;
    if s.len() <= d {
        format!("{sign}0.{}{}", "0".repeat(d - s.len()), s)
    } else {
        let (whole, frac) = s.split_at(s.len() - d);
        if d == 0 {
            format!("{sign}{whole}")
        } else {
            format!("{sign}{whole}.{frac}")
        }
    }
}

/// (mantissa in [1,10), exp10) of |v|, f64 mantissa: a compact magnitude
/// report for tails and error bounds.
pub fn to_sci_parts(v: &BigReal) -> (f64, i64) {
    if v.is_zero() {
        return (0.0, 0);
    }
    let l = v.log10_abs();
    let e = l.floor();
    let mut mant = 10f64.powf(l - e);
    let mut e10 = e as i64;
    if mant >= 10.0 {
        mant /= 10.0;
        e10 += 1;
    }
    if mant < 1.0 {
        mant *= 10.0;
        e10 -= 1;
    }
    (mant, e10)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_simple_values() {
        assert_eq!(parse_decimal("2.5", 64).unwrap().to_f64(), 2.5);
        assert_eq!(parse_decimal("-0.125", 64).unwrap().to_f64(), -0.125);
        assert_eq!(parse_decimal("10", 64).unwrap().to_f64(), 10.0);
        assert_eq!(parse_decimal("1e-3", 96).unwrap().to_f64(), 1e-3);
        assert_eq!(parse_decimal("2.75e2", 64).unwrap().to_f64(), 275.0);
    }

    #[test]
    fn parse_rejects_garbage() {
        for bad in ["", "abc", "1.2.3", "1e", "--5", "0x10"] {
            assert!(parse_decimal(bad, 64).is_err(), "{bad:?} should fail");
        }
    }

    #[test]
    fn parse_full_precision_not_double() {
        // A 40-digit literal must survive beyond f64 fidelity.
        let s = "0.1234567890123456789012345678901234567890";
        let v = parse_decimal(s, 256).unwrap();
        let rendered = to_decimal_string(&v, 40);
        assert_eq!(rendered, s);
    }

    #[test]
    fn truncated_rendering() {
        let v = parse_decimal("0.9999", 128).unwrap();
        assert_eq!(to_decimal_string(&v, 2), "0.99");
        let v = parse_decimal("123.456", 128).unwrap();
        assert_eq!(to_decimal_string(&v, 1), "123.4");
        assert_eq!(to_decimal_string(&v, 0), "123");
    }

    #[test]
    fn sci_parts_sane() {
        let v = parse_decimal("0.00345", 96).unwrap();
        let (m, e) = to_sci_parts(&v);
        assert_eq!(e, -3);
        assert!((m - 3.45).abs() < 1e-9);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn print_parse_round_trip(v in -1.0e6f64..1.0e6) {
            let x = BigReal::from_f64(v, 128);
            let s = to_decimal_string(&x, 25);
            let back = parse_decimal(&s, 128).unwrap();
            let diff = back.sub_p(&x, 128).abs();
            prop_assert!(diff.to_f64() <= 1e-24);
        }
    }
}
