//! Dense univariate polynomials with exact rational coefficients.
//!
//! Coefficients are stored from degree 0 upwards. The zero polynomial is the
//! empty coefficient vector, and every other value has a nonzero leading
//! coefficient, so structural equality is mathematical equality.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number; always kept in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Builds `num/den` from machine integers.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Builds the integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `2^e` for any integer exponent.
pub fn pow2(e: i64) -> Rational {
    let p = BigInt::one() << e.unsigned_abs();
    if e >= 0 {
        Rational::from_integer(p)
    } else {
        Rational::new(BigInt::one(), p)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RationalPoly {
    coeffs: Vec<Rational>,
}

impl RationalPoly {
    /// Creates a polynomial from coefficients ordered by increasing degree.
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RationalPoly { coeffs }
    }

    pub fn zero() -> Self {
        RationalPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `X`.
    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    /// `c * X^k`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// Convenience constructor from integer coefficients (degree 0 first).
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    /// Monic linear factor `X - r`.
    pub fn linear_root(r: &Rational) -> Self {
        Self::new(vec![-r.clone(), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    /// Coefficient of `X^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree of a nonzero polynomial.
    pub fn try_degree(&self) -> Result<usize> {
        self.degree().ok_or(Error::ZeroPolynomial)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    /// Leading coefficient, zero for the zero polynomial.
    pub fn leading_or_zero(&self) -> Rational {
        self.leading().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RationalPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn square(&self) -> Self {
        self * self
    }

    /// Multiplies by `X^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        RationalPoly { coeffs }
    }

    /// Makes the leading coefficient one; the zero polynomial stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    /// Exact value at `x` by Horner's scheme.
    pub fn evaluate(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Euclidean division over the rationals: `self = q * d + r`, `deg r < deg d`.
    pub fn div_rem(&self, d: &RationalPoly) -> Result<(RationalPoly, RationalPoly)> {
        let dd = d.try_degree()?;
        let lc_inv = d.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let q = &rem[i] * &lc_inv;
            for (j, dc) in d.coeffs.iter().enumerate() {
                let idx = i - dd + j;
                rem[idx] = &rem[idx] - &q * dc;
            }
            quot[i - dd] = q;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Division that must be exact; a nonzero remainder is a logic error upstream.
    pub fn exact_div(&self, d: &RationalPoly) -> Result<RationalPoly> {
        let (q, r) = self.div_rem(d)?;
        debug_assert!(r.is_zero(), "inexact polynomial division");
        Ok(q)
    }

    /// Returns `(q, m)` with `q = m * self` having integer coefficients and `m`
    /// the lcm of the coefficient denominators. Content is not removed.
    pub fn clear_denominators(&self) -> Result<(RationalPoly, Rational)> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let m = self.denominator_lcm();
        let mr = Rational::from_integer(m);
        Ok((self.scale(&mr), mr))
    }

    pub(crate) fn denominator_lcm(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// Integer coefficients of a positive multiple of `self` (same sign everywhere).
    pub(crate) fn integer_multiple(&self) -> Vec<BigInt> {
        let m = self.denominator_lcm();
        self.coeffs
            .iter()
            .map(|c| c.numer() * (&m / c.denom()))
            .collect()
    }

    pub fn bitsize(&self) -> BitsizeReport {
        let mut report = BitsizeReport::default();
        for c in &self.coeffs {
            report.absorb(c);
        }
        report
    }

    /// Human-readable rendering, highest degree first, e.g. `1/16*X^6 - 1/9*X^3 + 2`.
    pub fn pretty(&self) -> String {
        self.pretty_in("X")
    }

    pub fn pretty_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if i == 0 {
                out.push_str(&a.to_string());
            } else if a.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{a}*{mono}"));
            }
        }
        out
    }
}

impl fmt::Display for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty())
    }
}

/// Bitsize of an integer: `floor(log2 |b|) + 1`, with `tau(0) = 1`.
pub fn int_bitsize(b: &BigInt) -> u64 {
    b.bits().max(1)
}

/// Bitsize of a rational: the larger of numerator and denominator bitsizes.
pub fn rat_bitsize(q: &Rational) -> u64 {
    int_bitsize(q.numer()).max(int_bitsize(q.denom()))
}

/// Coefficient-size summary.
///
/// `max_coeff_bits` is the usual τ. `total_bits` adds numerator and
/// denominator bitsizes over every nonzero coefficient, so padding a sparse
/// polynomial with zero coefficients does not change it.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BitsizeReport {
    pub max_coeff_bits: u64,
    pub total_bits: u64,
}

impl BitsizeReport {
    pub(crate) fn absorb(&mut self, c: &Rational) {
        if c.is_zero() {
            return;
        }
        self.max_coeff_bits = self.max_coeff_bits.max(rat_bitsize(c));
        self.total_bits += int_bitsize(c.numer()) + int_bitsize(c.denom());
    }
}

fn add_coeffs(a: &[Rational], b: &[Rational], negate_b: bool) -> RationalPoly {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i);
        let y = b.get(i);
        let v = match (x, y, negate_b) {
            (Some(x), Some(y), false) => x + y,
            (Some(x), Some(y), true) => x - y,
            (Some(x), None, _) => x.clone(),
            (None, Some(y), false) => y.clone(),
            (None, Some(y), true) => -y,
            (None, None, _) => unreachable!(),
        };
        out.push(v);
    }
    RationalPoly::new(out)
}

fn mul_coeffs(a: &[Rational], b: &[Rational]) -> RationalPoly {
    if a.is_empty() || b.is_empty() {
        return RationalPoly::zero();
    }
    // Accumulate over a common denominator per operand to avoid a gcd per product.
    let la = a.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let lb = b.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ia: Vec<BigInt> = a.iter().map(|c| c.numer() * (&la / c.denom())).collect();
    let ib: Vec<BigInt> = b.iter().map(|c| c.numer() * (&lb / c.denom())).collect();
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in ia.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in ib.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    let den = la * lb;
    RationalPoly::new(
        out.into_iter()
            .map(|n| Rational::new(n, den.clone()))
            .collect(),
    )
}

macro_rules! impl_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&RationalPoly> for &RationalPoly {
            type Output = RationalPoly;
            fn $method(self, rhs: &RationalPoly) -> RationalPoly {
                $body(&self.coeffs, &rhs.coeffs)
            }
        }
        impl $trait<RationalPoly> for RationalPoly {
            type Output = RationalPoly;
            fn $method(self, rhs: RationalPoly) -> RationalPoly {
                $body(&self.coeffs, &rhs.coeffs)
            }
        }
        impl $trait<&RationalPoly> for RationalPoly {
            type Output = RationalPoly;
            fn $method(self, rhs: &RationalPoly) -> RationalPoly {
                $body(&self.coeffs, &rhs.coeffs)
            }
        }
        impl $trait<RationalPoly> for &RationalPoly {
            type Output = RationalPoly;
            fn $method(self, rhs: RationalPoly) -> RationalPoly {
                $body(&self.coeffs, &rhs.coeffs)
            }
        }
    };
}

impl_binop!(Add, add, |a, b| add_coeffs(a, b, false));
impl_binop!(Sub, sub, |a, b| add_coeffs(a, b, true));
impl_binop!(Mul, mul, mul_coeffs);

impl Neg for &RationalPoly {
    type Output = RationalPoly;
    fn neg(self) -> RationalPoly {
        RationalPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for RationalPoly {
    type Output = RationalPoly;
    fn neg(self) -> RationalPoly {
        -&self
    }
}

/// Arithmetic selector mirroring the single-entry-point form of the API.
#[derive(Clone, Debug)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
    Scale(Rational),
    Pow(u32),
}

/// Applies `op` to `a` (and `b` for the binary operations).
pub fn poly_arith(a: &RationalPoly, b: &RationalPoly, op: &PolyOp) -> RationalPoly {
    match op {
        PolyOp::Add => a + b,
        PolyOp::Sub => a - b,
        PolyOp::Mul => a * b,
        PolyOp::Scale(c) => a.scale(c),
        PolyOp::Pow(k) => a.pow(*k),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn f_ex1() -> RationalPoly {
        RationalPoly::new(vec![
            int(2),
            rat(2, 15),
            rat(-11, 10),
            rat(-1, 9),
            int(1),
            int(0),
            rat(1, 16),
        ])
    }

    #[test]
    fn product_of_linear_factors() {
        let a = RationalPoly::from_ints(&[1, 1]);
        let b = RationalPoly::from_ints(&[-1, 1]);
        assert_eq!(poly_arith(&a, &b, &PolyOp::Mul), RationalPoly::from_ints(&[-1, 0, 1]));
    }

    #[test]
    fn adding_zero_is_identity() {
        let p = f_ex1();
        assert_eq!(&p + &RationalPoly::zero(), p);
        assert!((&p - &p).is_zero());
    }

    #[test]
    fn square_of_linear_with_fractions() {
        let p = RationalPoly::new(vec![rat(271, 360), rat(-19, 16)]);
        let sq = poly_arith(&p, &RationalPoly::zero(), &PolyOp::Pow(2));
        // (a + bX)^2 = a^2 + 2ab X + b^2 X^2
        let a = rat(271, 360);
        let b = rat(-19, 16);
        let expect = RationalPoly::new(vec![&a * &a, int(2) * &a * &b, &b * &b]);
        assert_eq!(sq, expect);
        assert_eq!(sq.coeff(2), rat(361, 256));
    }

    #[test]
    fn evaluation_of_worked_example() {
        assert_eq!(RationalPoly::from_ints(&[1, 0, 1]).evaluate(&int(0)), int(1));
        let f = f_ex1();
        assert_eq!(f.evaluate(&int(-1)), rat(1397, 720));
        assert_eq!(f.derivative().evaluate(&int(-1)), rat(-19, 8));
    }

    #[test]
    fn derivative_basics() {
        assert_eq!(RationalPoly::monomial(int(1), 3).derivative(), RationalPoly::monomial(int(3), 2));
        assert!(RationalPoly::constant(int(5)).derivative().is_zero());
        assert!(RationalPoly::zero().derivative().is_zero());
    }

    #[test]
    fn bitsize_conventions() {
        assert_eq!(RationalPoly::one().bitsize().max_coeff_bits, 1);
        assert_eq!(RationalPoly::constant(int(1024)).bitsize().max_coeff_bits, 11);
        let p = RationalPoly::monomial(rat(7, 5), 1);
        assert_eq!(p.bitsize().max_coeff_bits, 3);
        assert_eq!(p.bitsize().total_bits, 6);
        assert_eq!(RationalPoly::zero().bitsize(), BitsizeReport::default());
        assert_eq!(int_bitsize(&BigInt::zero()), 1);
    }

    #[test]
    fn clearing_denominators() {
        let p = RationalPoly::new(vec![rat(1, 3), rat(1, 2)]);
        let (q, m) = p.clear_denominators().unwrap();
        assert_eq!(m, int(6));
        assert_eq!(q, RationalPoly::from_ints(&[2, 3]));

        let p = RationalPoly::from_ints(&[4, -2, 7]);
        assert_eq!(p.clear_denominators().unwrap(), (p.clone(), int(1)));

        let (q, m) = f_ex1().clear_denominators().unwrap();
        assert_eq!(m, int(720));
        assert_eq!(q, RationalPoly::from_ints(&[1440, 96, -792, -80, 720, 0, 45]));

        assert_eq!(RationalPoly::zero().clear_denominators(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn division_with_remainder() {
        let a = RationalPoly::from_ints(&[1, 0, 0, 1]);
        let d = RationalPoly::from_ints(&[1, 2]);
        let (q, r) = a.div_rem(&d).unwrap();
        assert_eq!(&(&q * &d) + &r, a);
        assert!(r.degree().unwrap_or(0) < 1);
        assert_eq!(a.div_rem(&RationalPoly::zero()), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn pretty_printing() {
        assert_eq!(f_ex1().pretty(), "1/16*X^6 + X^4 - 1/9*X^3 - 11/10*X^2 + 2/15*X + 2");
        assert_eq!(RationalPoly::zero().pretty(), "0");
    }
}
