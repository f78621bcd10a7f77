//! Complex arithmetic over `BigReal` pairs.

use super::elem;
use super::real::BigReal;

/// Complex value with `BigReal` components.
#[derive(Clone, Debug, PartialEq)]
pub struct BigComplex {
    pub re: BigReal,
    pub im: BigReal,
}

impl BigComplex {
    pub fn new(re: BigReal, im: BigReal) -> Self {
        BigComplex { re, im }
    }

    pub fn zero(prec: u32) -> Self {
        BigComplex {
            re: BigReal::zero(prec),
            im: BigReal::zero(prec),
        }
    }

    pub fn from_re(re: BigReal) -> Self {
        let prec = re.prec();
        BigComplex {
            re,
            im: BigReal::zero(prec),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        BigComplex {
            re: self.re.clone(),
            im: self.im.neg(),
        }
    }

    pub fn neg(&self) -> Self {
        BigComplex {
            re: self.re.neg(),
            im: self.im.neg(),
        }
    }

    pub fn add_p(&self, rhs: &Self, prec: u32) -> Self {
        BigComplex {
            re: self.re.add_p(&rhs.re, prec),
            im: self.im.add_p(&rhs.im, prec),
        }
    }

    pub fn sub_p(&self, rhs: &Self, prec: u32) -> Self {
        BigComplex {
            re: self.re.sub_p(&rhs.re, prec),
            im: self.im.sub_p(&rhs.im, prec),
        }
    }

    pub fn mul_p(&self, rhs: &Self, prec: u32) -> Self {
        let ac = self.re.mul_p(&rhs.re, prec + 2);
        let bd = self.im.mul_p(&rhs.im, prec + 2);
        let ad = self.re.mul_p(&rhs.im, prec + 2);
        let bc = self.im.mul_p(&rhs.re, prec + 2);
        BigComplex {
            re: ac.sub_p(&bd, prec),
            im: ad.add_p(&bc, prec),
        }
    }

    /// Multiply by a real scalar.
    pub fn scale(&self, k: &BigReal, prec: u32) -> Self {
        BigComplex {
            re: self.re.mul_p(k, prec),
            im: self.im.mul_p(k, prec),
        }
    }

    pub fn div_p(&self, rhs: &Self, prec: u32) -> Self {
        let p = prec + 4;
        let den = rhs.norm_sqr(p);
        let num = self.mul_p(&rhs.conj(), p);
        BigComplex {
            re: num.re.div_p(&den, prec),
            im: num.im.div_p(&den, prec),
        }
    }

    /// |z|^2 = re^2 + im^2.
    pub fn norm_sqr(&self, prec: u32) -> BigReal {
        self.re
            .mul_p(&self.re, prec + 2)
            .add_p(&self.im.mul_p(&self.im, prec + 2), prec)
    }

    /// Modulus |z|.
    pub fn abs(&self, prec: u32) -> BigReal {
        self.norm_sqr(prec + 4).sqrt_p(prec)
    }

    /// Principal argument.
    pub fn arg(&self, prec: u32) -> BigReal {
        elem::atan2(&self.im, &self.re, prec)
    }

    /// e^z = e^re (cos im + i sin im).
    pub fn exp(&self, prec: u32) -> Self {
        let p = prec + 8;
        let r = elem::exp(&self.re, p);
        let (s, c) = elem::sin_cos(&self.im, p);
        BigComplex {
            re: r.mul_p(&c, prec),
            im: r.mul_p(&s, prec),
        }
    }

    /// Principal log: ln|z| + i arg z. Panics on zero (callers guard).
    pub fn ln(&self, prec: u32) -> Self {
        assert!(!self.is_zero(), "log of complex zero");
        let p = prec + 8;
        let modulus_sq = self.norm_sqr(p + 8);
        let half_log = elem::ln(&modulus_sq, p)
            .expect("norm_sqr of a nonzero value is positive")
            .mul_pow2(-1);
        BigComplex {
            re: half_log.with_prec(prec),
            im: self.arg(prec),
        }
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        BigComplex {
            re: self.re.with_prec(prec),
            im: self.im.with_prec(prec),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> BigComplex {
        BigComplex::new(BigReal::from_f64(re, 128), BigReal::from_f64(im, 128))
    }

    #[test]
    fn square_of_known_value() {
        let z = c(1.5, 2.5);
        let sq = z.mul_p(&z, 128);
        assert_eq!(sq.re.to_f64(), -4.0);
        assert_eq!(sq.im.to_f64(), 7.5);
    }

    #[test]
    fn division_inverts_multiplication() {
        let a = c(3.25, -1.5);
        let b = c(-0.75, 2.0);
        let q = a.mul_p(&b, 128).div_p(&b, 128);
        assert!((q.re.to_f64() - 3.25).abs() < 1e-30);
        assert!((q.im.to_f64() + 1.5).abs() < 1e-30);
    }

    #[test]
    fn exp_ln_round_trip() {
        let z = c(0.5, 1.25);
        let back = z.exp(128).ln(128);
        assert!((back.re.to_f64() - 0.5).abs() < 1e-30);
        assert!((back.im.to_f64() - 1.25).abs() < 1e-30);
    }

    #[test]
    fn modulus_and_argument() {
        let z = c(3.0, 4.0);
        assert!((z.abs(128).to_f64() - 5.0).abs() < 1e-30);
        assert!((z.arg(128).to_f64() - (4f64 / 3f64).atan()).abs() < 1e-15);
    }

    #[test]
    fn modulus_and_argument_at_large_imaginary_part() {
        let z = c(1.0, 1.0e6);
        let modulus = z.abs(128);
        assert!((modulus.to_f64() - 1.0e6).abs() < 1.0);
        let arg = z.arg(128);
        let want = std::f64::consts::FRAC_PI_2 - 1e-6;
        assert!((arg.to_f64() - want).abs() < 1e-12);
    }
}
