//! Arbitrary-precision binary floating point.
//!
//! A `BigReal` is `sign * mant * 2^exp` with the mantissa normalized to
//! exactly `prec` bits (top bit set). Every operation rounds its result to
//! the target precision with round-to-nearest, ties to even, so each step
//! carries a relative error of at most one ulp (2^(1-P) in the worst case).
//!
//! The exponent lives in an `i64` clamped to ±2^62, wide enough to hold
//! magnitudes like 10^(-10^9) that appear when double-exponential series
//! terms are materialized. Anything below the floor underflows to exact
//! zero; callers that care about smaller magnitudes work in (mantissa,
//! decimal exponent) form instead (see `exponent_of_exp_neg`).

use num_bigint::BigUint;
use num_traits::{One, Zero};
use std::cmp::Ordering;

/// Exponent floor/ceiling for the value `mant * 2^exp`, measured at the
/// most significant bit. ±2^62 leaves i64 headroom for intermediate sums.
pub const EXP_MIN: i64 = -(1 << 62);
pub const EXP_MAX: i64 = 1 << 62;

/// Sign of a `BigReal`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Neg,
    Zero,
    Pos,
}

impl Sign {
    fn flip(self) -> Sign {
        match self {
            Sign::Neg => Sign::Pos,
            Sign::Zero => Sign::Zero,
            Sign::Pos => Sign::Neg,
        }
    }
}

/// Arbitrary-precision floating-point value.
#[derive(Clone, Debug)]
pub struct BigReal {
    sign: Sign,
    /// Normalized mantissa: `bits() == prec` unless the value is zero.
    mant: BigUint,
    /// Value is `mant * 2^exp` (exponent of the least significant bit).
    exp: i64,
    prec: u32,
}

impl BigReal {
    // ---------------------------------------------------------------
    // Construction
    // ---------------------------------------------------------------

    pub fn zero(prec: u32) -> Self {
        debug_assert!(prec >= 2);
        BigReal {
            sign: Sign::Zero,
            mant: BigUint::zero(),
            exp: 0,
            prec,
        }
    }

    pub fn from_u64(v: u64, prec: u32) -> Self {
        Self::from_biguint(Sign::Pos, BigUint::from(v), 0, prec)
    }

    pub fn from_i64(v: i64, prec: u32) -> Self {
        let sign = if v > 0 {
            Sign::Pos
        } else if v < 0 {
            Sign::Neg
        } else {
            Sign::Zero
        };
        Self::from_biguint(sign, BigUint::from(v.unsigned_abs()), 0, prec)
    }

    /// Builds `sign * mant * 2^exp` rounded to `prec` bits.
    pub fn from_biguint(sign: Sign, mant: BigUint, exp: i64, prec: u32) -> Self {
        if mant.is_zero() || sign == Sign::Zero {
            return Self::zero(prec);
        }
        Self::normalize(sign, mant, exp, false, prec)
    }

    /// Exact conversion from `f64` (finite values only), then rounding to
    /// `prec` bits.
    pub fn from_f64(v: f64, prec: u32) -> Self {
        assert!(v.is_finite(), "from_f64 requires a finite value");
        if v == 0.0 {
            return Self::zero(prec);
        }
        let sign = if v > 0.0 { Sign::Pos } else { Sign::Neg };
        let bits = v.abs().to_bits();
        let ieee_exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (mant, exp) = if ieee_exp == 0 {
            (frac, -1074) // subnormal
        } else {
            (frac | (1u64 << 52), ieee_exp - 1075)
        };
        Self::from_biguint(sign, BigUint::from(mant), exp, prec)
    }

    // ---------------------------------------------------------------
    // Accessors
    // ---------------------------------------------------------------

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn is_zero(&self) -> bool {
        self.sign == Sign::Zero
    }

    pub fn is_positive(&self) -> bool {
        self.sign == Sign::Pos
    }

    pub fn is_negative(&self) -> bool {
        self.sign == Sign::Neg
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    /// Exponent of the most significant bit: `floor(log2 |v|)`.
    /// Zero returns `i64::MIN` as a sentinel.
    pub fn exponent(&self) -> i64 {
        if self.is_zero() {
            i64::MIN
        } else {
            self.exp + self.prec as i64 - 1
        }
    }

    // ---------------------------------------------------------------
    // Normalization and rounding
    // ---------------------------------------------------------------

    /// Rounds `mant * 2^exp` to `prec` bits, round-to-nearest ties-to-even.
    /// `sticky` is set when discarded information exists below `mant`
    /// (inexact division or sqrt remainders).
    pub(crate) fn normalize(sign: Sign, mut mant: BigUint, mut exp: i64, sticky: bool, prec: u32) -> Self {
        debug_assert!(prec >= 2);
        if mant.is_zero() {
            return Self::zero(prec);
        }
        let bits = mant.bits();
        let prec64 = prec as u64;
        if bits > prec64 {
            let drop = bits - prec64;
            let round_bit = mant.bit(drop - 1);
            let low_sticky = sticky
                || match mant.trailing_zeros() {
                    Some(tz) => tz < drop - 1,
                    None => false,
                };
            mant >>= drop;
            exp = exp
                .checked_add(drop as i64)
                .expect("exponent overflow during rounding");
            if round_bit && (low_sticky || mant.bit(0)) {
                mant += 1u32;
                if mant.bits() > prec64 {
                    mant >>= 1;
                    exp += 1;
                }
            }
        } else if bits < prec64 {
            let lift = prec64 - bits;
            mant <<= lift;
            exp = exp
                .checked_sub(lift as i64)
                .expect("exponent underflow during normalization");
        }
        let msb_exp = exp + prec as i64 - 1;
        if msb_exp < EXP_MIN {
            return Self::zero(prec); // underflow to exact zero
        }
        assert!(msb_exp <= EXP_MAX, "exponent overflow: 2^{msb_exp}");
        BigReal { sign, mant, exp, prec }
    }

    /// Re-rounds the value to `prec` bits (exact when extending).
    pub fn with_prec(&self, prec: u32) -> Self {
        if self.is_zero() {
            return Self::zero(prec);
        }
        if prec == self.prec {
            return self.clone();
        }
        Self::normalize(self.sign, self.mant.clone(), self.exp, false, prec)
    }

    // ---------------------------------------------------------------
    // Sign manipulation
    // ---------------------------------------------------------------

    pub fn neg(&self) -> Self {
        let mut r = self.clone();
        r.sign = r.sign.flip();
        r
    }

    pub fn abs(&self) -> Self {
        let mut r = self.clone();
        if r.sign == Sign::Neg {
            r.sign = Sign::Pos;
        }
        r
    }

    /// Exact scaling by 2^k (only the exponent moves; may underflow to zero).
    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let exp = self.exp.checked_add(k).expect("exponent overflow in mul_pow2");
        Self::normalize(self.sign, self.mant.clone(), exp, false, self.prec)
    }

    // ---------------------------------------------------------------
    // Arithmetic
    // ---------------------------------------------------------------

    /// Sum rounded to `prec` bits.
    pub fn add_p(&self, rhs: &Self, prec: u32) -> Self {
        match (self.is_zero(), rhs.is_zero()) {
            (true, true) => Self::zero(prec),
            (true, false) => rhs.with_prec(prec),
            (false, true) => self.with_prec(prec),
            (false, false) => {
                if self.sign == rhs.sign {
                    Self::add_magnitude(self, rhs, self.sign, prec)
                } else {
                    match Self::cmp_magnitude(self, rhs) {
                        Ordering::Equal => Self::zero(prec),
                        Ordering::Greater => Self::sub_magnitude(self, rhs, self.sign, prec),
                        Ordering::Less => Self::sub_magnitude(rhs, self, rhs.sign, prec),
                    }
                }
            }
        }
    }

    pub fn sub_p(&self, rhs: &Self, prec: u32) -> Self {
        self.add_p(&rhs.neg(), prec)
    }

    /// |a| >= |b| is not required; callers pass operands in either order.
    fn add_magnitude(a: &Self, b: &Self, sign: Sign, prec: u32) -> Self {
        let (hi, lo) = if a.exponent() >= b.exponent() { (a, b) } else { (b, a) };
        // Window: far-apart operands cannot influence the rounded result
        // beyond a fraction of an ulp.
        if hi.exponent() - lo.exponent() > prec as i64 + 4 {
            let mut r = hi.with_prec(prec);
            r.sign = sign;
            return r;
        }
        let (mant, exp) = if hi.exp >= lo.exp {
            ((&hi.mant << (hi.exp - lo.exp) as u64) + &lo.mant, lo.exp)
        } else {
            (&hi.mant + (&lo.mant << (lo.exp - hi.exp) as u64), hi.exp)
        };
        Self::normalize(sign, mant, exp, false, prec)
    }

    /// Exact magnitude subtraction, |a| > |b|.
    fn sub_magnitude(a: &Self, b: &Self, sign: Sign, prec: u32) -> Self {
        if a.exponent() - b.exponent() > prec as i64 + 4 {
            let mut r = a.with_prec(prec);
            r.sign = sign;
            return r;
        }
        let (mant, exp) = if a.exp >= b.exp {
            ((&a.mant << (a.exp - b.exp) as u64) - &b.mant, b.exp)
        } else {
            (&a.mant - (&b.mant << (b.exp - a.exp) as u64), a.exp)
        };
        Self::normalize(sign, mant, exp, false, prec)
    }

    /// Product rounded to `prec` bits.
    pub fn mul_p(&self, rhs: &Self, prec: u32) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero(prec);
        }
        let sign = if self.sign == rhs.sign { Sign::Pos } else { Sign::Neg };
        let mant = &self.mant * &rhs.mant;
        let exp = self
            .exp
            .checked_add(rhs.exp)
            .expect("exponent overflow in multiplication");
        Self::normalize(sign, mant, exp, false, prec)
    }

    /// Quotient rounded to `prec` bits. Panics on division by zero.
    pub fn div_p(&self, rhs: &Self, prec: u32) -> Self {
        assert!(!rhs.is_zero(), "division by zero");
        if self.is_zero() {
            return Self::zero(prec);
        }
        let sign = if self.sign == rhs.sign { Sign::Pos } else { Sign::Neg };
        // Scale the dividend so the integer quotient keeps prec + >=3 bits.
        let scale = prec as u64 + 3 + rhs.mant.bits();
        let num = &self.mant << scale;
        let (q, r) = num_integer::Integer::div_rem(&num, &rhs.mant);
        let exp = self.exp - rhs.exp - scale as i64;
        Self::normalize(sign, q, exp, !r.is_zero(), prec)
    }

    /// Multiplication by a small unsigned integer.
    pub fn mul_u64(&self, k: u64, prec: u32) -> Self {
        if self.is_zero() || k == 0 {
            return Self::zero(prec);
        }
        Self::normalize(self.sign, &self.mant * k, self.exp, false, prec)
    }

    /// Division by a small unsigned integer.
    pub fn div_u64(&self, k: u64, prec: u32) -> Self {
        assert!(k != 0, "division by zero");
        if self.is_zero() {
            return Self::zero(prec);
        }
        let num = &self.mant << 67u32;
        let (q, r) = num_integer::Integer::div_rem(&num, &BigUint::from(k));
        Self::normalize(self.sign, q, self.exp - 67, !r.is_zero(), prec)
    }

    /// Square root rounded to `prec` bits. Negative input is a domain error
    /// handled by callers; this panics in that case.
    pub fn sqrt_p(&self, prec: u32) -> Self {
        assert!(self.sign != Sign::Neg, "sqrt of negative value");
        if self.is_zero() {
            return Self::zero(prec);
        }
        // Shift to an even exponent with >= 2*(prec+2) mantissa bits so the
        // integer square root carries prec+2 significant bits.
        let want = 2 * (prec as u64 + 3);
        let bits = self.mant.bits();
        let mut lift = want.saturating_sub(bits);
        if (self.exp - lift as i64) % 2 != 0 {
            lift += 1;
        }
        let m = &self.mant << lift;
        let root = num_integer::Roots::sqrt(&m);
        let sticky = &root * &root != m;
        Self::normalize(Sign::Pos, root, (self.exp - lift as i64) / 2, sticky, prec)
    }

    // ---------------------------------------------------------------
    // Comparison
    // ---------------------------------------------------------------

    fn cmp_magnitude(a: &Self, b: &Self) -> Ordering {
        match (a.is_zero(), b.is_zero()) {
            (true, true) => return Ordering::Equal,
            (true, false) => return Ordering::Less,
            (false, true) => return Ordering::Greater,
            _ => {}
        }
        match a.exponent().cmp(&b.exponent()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        // Same leading-bit position: align least significant bits.
        if a.exp >= b.exp {
            (&a.mant << (a.exp - b.exp) as u64).cmp(&b.mant)
        } else {
            a.mant.cmp(&(&b.mant << (b.exp - a.exp) as u64))
        }
    }

    /// Exact value comparison (independent of stored precision).
    pub fn cmp_value(&self, rhs: &Self) -> Ordering {
        match (self.sign, rhs.sign) {
            (Sign::Zero, Sign::Zero) => Ordering::Equal,
            (Sign::Neg, Sign::Zero) | (Sign::Neg, Sign::Pos) | (Sign::Zero, Sign::Pos) => Ordering::Less,
            (Sign::Pos, Sign::Zero) | (Sign::Pos, Sign::Neg) | (Sign::Zero, Sign::Neg) => Ordering::Greater,
            (Sign::Pos, Sign::Pos) => Self::cmp_magnitude(self, rhs),
            (Sign::Neg, Sign::Neg) => Self::cmp_magnitude(rhs, self),
        }
    }

    /// |self| <= |rhs|.
    pub fn abs_le(&self, rhs: &Self) -> bool {
        Self::cmp_magnitude(self, rhs) != Ordering::Greater
    }

    // ---------------------------------------------------------------
    // Conversions
    // ---------------------------------------------------------------

    /// f64 approximation (top 64 mantissa bits, saturating on exponent
    /// overflow); good to well under an f64 ulp of slop.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mant.bits();
        let take = bits.min(64);
        let top: u64 = {
            let shifted = &self.mant >> (bits - take);
            shifted.iter_u64_digits().next().unwrap_or(0)
        };
        let mut v = top as f64; // magnitude in [2^63, 2^64) when take == 64
        let e = self.exp + (bits - take) as i64;
        v = ldexp_f64(v, e);
        if self.sign == Sign::Neg {
            -v
        } else {
            v
        }
    }

    /// Approximate log10 of |v| as f64; -inf for zero. Robust for values far
    /// outside the f64 range (planner workhorse).
    pub fn log10_abs(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        let bits = self.mant.bits();
        let take = bits.min(53);
        let top: u64 = {
            let shifted = &self.mant >> (bits - take);
            shifted.iter_u64_digits().next().unwrap_or(0)
        };
        let frac = top as f64 / (1u64 << (take - 1)) as f64; // in [1, 2)
        let log2v = (self.exponent()) as f64 + frac.log2();
        log2v * std::f64::consts::LOG10_2
    }

    /// One unit in the last place of |self| at its own precision.
    pub fn ulp(&self) -> Self {
        assert!(!self.is_zero(), "ulp of zero");
        Self::normalize(Sign::Pos, BigUint::one(), self.exp, false, self.prec)
    }

    /// Integer floor of a nonnegative value as (BigUint, true) or, for
    /// negative values, the floor magnitude handling via callers. Fractional
    /// part is discarded.
    pub fn floor_biguint(&self) -> BigUint {
        assert!(self.sign != Sign::Neg, "floor_biguint requires v >= 0");
        if self.is_zero() || self.exponent() < 0 {
            return BigUint::zero();
        }
        if self.exp >= 0 {
            &self.mant << self.exp as u64
        } else {
            &self.mant >> (-self.exp) as u64
        }
    }
}

fn ldexp_f64(x: f64, e: i64) -> f64 {
    if e > 2000 {
        f64::INFINITY * x.signum()
    } else if e < -2000 {
        0.0
    } else {
        let mut v = x;
        let mut e = e;
        // powi in chunks to stay within f64 exponent range
        while e > 1000 {
            v *= 2f64.powi(1000);
            e -= 1000;
        }
        while e < -1000 {
            v *= 2f64.powi(-1000);
            e += 1000;
        }
        v * 2f64.powi(e as i32)
    }
}

// -------------------------------------------------------------------
// Operators (result precision = max of operand precisions)
// -------------------------------------------------------------------

impl PartialEq for BigReal {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_value(other) == Ordering::Equal
    }
}

impl Eq for BigReal {}

impl PartialOrd for BigReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp_value(other))
    }
}

impl Ord for BigReal {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_value(other)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $imp:ident) => {
        impl std::ops::$trait for &BigReal {
            type Output = BigReal;
            fn $method(self, rhs: &BigReal) -> BigReal {
                let prec = self.prec().max(rhs.prec());
                self.$imp(rhs, prec)
            }
        }
        impl std::ops::$trait for BigReal {
            type Output = BigReal;
            fn $method(self, rhs: BigReal) -> BigReal {
                (&self).$method(&rhs)
            }
        }
        impl std::ops::$trait<&BigReal> for BigReal {
            type Output = BigReal;
            fn $method(self, rhs: &BigReal) -> BigReal {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(Add, add, add_p);
binop!(Sub, sub, sub_p);
binop!(Mul, mul, mul_p);
binop!(Div, div, div_p);

impl std::ops::Neg for &BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        BigReal::neg(self)
    }
}

impl std::ops::Neg for BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        BigReal::neg(&self)
    }
}
