//! Binary floating point over `BigInt` mantissas, just enough to polish
//! complex roots at a chosen precision. Every operation rounds its result to
//! `prec` significant bits, to nearest.

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, Zero};

use crate::poly::Rational;

/// `mant * 2^exp`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct BigFloat {
    mant: BigInt,
    exp: i64,
}

impl BigFloat {
    pub(crate) fn zero() -> Self {
        BigFloat {
            mant: BigInt::zero(),
            exp: 0,
        }
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    fn raw(mant: BigInt, exp: i64, prec: u64) -> Self {
        let bits = mant.bits();
        if bits <= prec {
            return BigFloat { mant, exp };
        }
        let shift = bits - prec;
        let neg = mant.is_negative();
        let mag = mant.abs();
        let half = BigInt::one() << (shift - 1);
        let mut m = (mag + half) >> shift;
        if neg {
            m = -m;
        }
        BigFloat {
            mant: m,
            exp: exp + shift as i64,
        }
    }

    pub(crate) fn from_rational(q: &Rational, prec: u64) -> Self {
        let n = BigFloat::raw(q.numer().clone(), 0, u64::MAX);
        let d = BigFloat::raw(q.denom().clone(), 0, u64::MAX);
        n.div(&d, prec)
    }

    /// Exact decoding of a finite `f64`.
    pub(crate) fn from_f64(x: f64) -> Self {
        if x == 0.0 || !x.is_finite() {
            return BigFloat::zero();
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 0 { Sign::Plus } else { Sign::Minus };
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if raw_exp == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), raw_exp - 1075)
        };
        BigFloat {
            mant: BigInt::from_biguint(sign, m.into()),
            exp: e,
        }
    }

    pub(crate) fn to_rational(&self) -> Rational {
        if self.exp >= 0 {
            Rational::from_integer(&self.mant << self.exp as usize)
        } else {
            Rational::new(self.mant.clone(), BigInt::one() << (-self.exp) as usize)
        }
    }

    /// `floor(log2 |x|)`, or `None` for zero.
    pub(crate) fn mag(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.mant.bits() as i64 - 1 + self.exp)
        }
    }

    pub(crate) fn neg(&self) -> Self {
        BigFloat {
            mant: -&self.mant,
            exp: self.exp,
        }
    }

    pub(crate) fn add(&self, other: &Self, prec: u64) -> Self {
        let (Some(ma), Some(mb)) = (self.mag(), other.mag()) else {
            let x = if self.is_zero() { other } else { self };
            return BigFloat::raw(x.mant.clone(), x.exp, prec);
        };
        let gap = prec as i64 + 2;
        if ma - mb > gap {
            return BigFloat::raw(self.mant.clone(), self.exp, prec);
        }
        if mb - ma > gap {
            return BigFloat::raw(other.mant.clone(), other.exp, prec);
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as usize;
        let b = &other.mant << (other.exp - e) as usize;
        BigFloat::raw(a + b, e, prec)
    }

    pub(crate) fn sub(&self, other: &Self, prec: u64) -> Self {
        self.add(&other.neg(), prec)
    }

    pub(crate) fn mul(&self, other: &Self, prec: u64) -> Self {
        BigFloat::raw(&self.mant * &other.mant, self.exp + other.exp, prec)
    }

    /// Division; `other` must be nonzero.
    pub(crate) fn div(&self, other: &Self, prec: u64) -> Self {
        if self.is_zero() {
            return BigFloat::zero();
        }
        let prec = prec.min(1 << 24);
        let s = (prec as i64 + 2 + other.mant.bits() as i64 - self.mant.bits() as i64).max(0);
        let q = (&self.mant << s as usize) / &other.mant;
        BigFloat::raw(q, self.exp - s - other.exp, prec)
    }
}

/// Complex number with `BigFloat` parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct BigComplex {
    pub(crate) re: BigFloat,
    pub(crate) im: BigFloat,
}

impl BigComplex {
    pub(crate) fn new(re: BigFloat, im: BigFloat) -> Self {
        BigComplex { re, im }
    }

    pub(crate) fn zero() -> Self {
        BigComplex::new(BigFloat::zero(), BigFloat::zero())
    }

    pub(crate) fn real(re: BigFloat) -> Self {
        BigComplex::new(re, BigFloat::zero())
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// `floor(log2 max(|re|, |im|))`; within a factor of two of `log2 |z|`.
    pub(crate) fn mag(&self) -> Option<i64> {
        match (self.re.mag(), self.im.mag()) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        }
    }

    pub(crate) fn add(&self, o: &Self, prec: u64) -> Self {
        BigComplex::new(self.re.add(&o.re, prec), self.im.add(&o.im, prec))
    }

    pub(crate) fn sub(&self, o: &Self, prec: u64) -> Self {
        BigComplex::new(self.re.sub(&o.re, prec), self.im.sub(&o.im, prec))
    }

    pub(crate) fn mul(&self, o: &Self, prec: u64) -> Self {
        let p = prec + 8;
        let re = self.re.mul(&o.re, p).sub(&self.im.mul(&o.im, p), prec);
        let im = self.re.mul(&o.im, p).add(&self.im.mul(&o.re, p), prec);
        BigComplex::new(re, im)
    }

    /// Division; `o` must be nonzero.
    pub(crate) fn div(&self, o: &Self, prec: u64) -> Self {
        let p = prec + 8;
        let den = o.re.mul(&o.re, p).add(&o.im.mul(&o.im, p), p);
        let re = self.re.mul(&o.re, p).add(&self.im.mul(&o.im, p), p);
        let im = self.im.mul(&o.re, p).sub(&self.re.mul(&o.im, p), p);
        BigComplex::new(re.div(&den, prec), im.div(&den, prec))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, rat};

    #[test]
    fn rational_round_trip_and_rounding() {
        let third = BigFloat::from_rational(&rat(1, 3), 10);
        let err = (third.to_rational() - rat(1, 3)).abs();
        assert!(err <= rat(1, 3) / int(1 << 10));
        let exact = BigFloat::from_rational(&rat(-5, 16), 10);
        assert_eq!(exact.to_rational(), rat(-5, 16));
        assert_eq!(BigFloat::from_f64(0.375).to_rational(), rat(3, 8));
        assert_eq!(BigFloat::from_f64(-2.5).to_rational(), rat(-5, 2));
    }

    #[test]
    fn arithmetic_matches_rationals() {
        let a = BigFloat::from_rational(&rat(7, 4), 64);
        let b = BigFloat::from_rational(&rat(-3, 8), 64);
        assert_eq!(a.add(&b, 64).to_rational(), rat(11, 8));
        assert_eq!(a.mul(&b, 64).to_rational(), rat(-21, 32));
        assert_eq!(a.div(&b, 64).to_rational().round(), int(-5));
        assert_eq!(a.mag(), Some(0));
        assert_eq!(b.mag(), Some(-2));
    }

    #[test]
    fn complex_division() {
        let i = BigComplex::new(BigFloat::zero(), BigFloat::from_rational(&int(1), 64));
        let one = BigComplex::real(BigFloat::from_rational(&int(1), 64));
        let q = one.div(&i, 64);
        assert_eq!(q.re.to_rational(), int(0));
        assert_eq!(q.im.to_rational(), int(-1));
    }
}
