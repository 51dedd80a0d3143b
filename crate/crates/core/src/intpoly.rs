//! Integer-coefficient helpers used for remainder sequences and sign queries.
//!
//! Remainders are only ever needed up to a positive constant factor (Sturm
//! sequences, gcds), so everything here works on primitive integer vectors.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::poly::{Rational, RationalPoly};

pub(crate) fn trim(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

/// Divides out the (positive) content; sign pattern is preserved.
pub(crate) fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    trim(&mut v);
    let mut g = BigInt::zero();
    for c in &v {
        g = g.gcd(c);
        if g.is_one() {
            return v;
        }
    }
    if g.is_zero() {
        return v;
    }
    v.into_iter().map(|c| c / &g).collect()
}

/// Primitive integer vector with the same sign as `p` at every point.
pub(crate) fn from_rational(p: &RationalPoly) -> Vec<BigInt> {
    primitive(p.integer_multiple())
}

pub(crate) fn to_rational(v: &[BigInt]) -> RationalPoly {
    RationalPoly::new(v.iter().map(|c| Rational::from_integer(c.clone())).collect())
}

/// A positive multiple of the Euclidean remainder of `a` by `b`.
///
/// Intermediate coefficients are tracked as `num / l^e` with `l = lc(b)`, so
/// only the touched coefficients are ever rescaled.
pub(crate) fn rem_positive(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = b.len() - 1;
    if a.len() < b.len() {
        return a.to_vec();
    }
    let l = &b[n];
    let mut powers: Vec<BigInt> = vec![BigInt::one()];
    let pow_of = |k: usize, powers: &mut Vec<BigInt>| -> BigInt {
        while powers.len() <= k {
            let next = powers.last().unwrap() * l;
            powers.push(next);
        }
        powers[k].clone()
    };
    let mut num: Vec<BigInt> = a.to_vec();
    let mut exp: Vec<usize> = vec![0; a.len()];
    for top in (n..a.len()).rev() {
        if num[top].is_zero() {
            continue;
        }
        // quotient coefficient q = num[top] / l^(exp[top] + 1)
        let qn = num[top].clone();
        let qe = exp[top] + 1;
        for j in 0..n {
            let idx = top - n + j;
            if b[j].is_zero() {
                continue;
            }
            let prod = &qn * &b[j];
            // num[idx]/l^exp[idx] - prod/l^qe
            match exp[idx].cmp(&qe) {
                Ordering::Equal => num[idx] -= prod,
                Ordering::Less => {
                    num[idx] = &num[idx] * pow_of(qe - exp[idx], &mut powers) - prod;
                    exp[idx] = qe;
                }
                Ordering::Greater => {
                    num[idx] -= prod * pow_of(exp[idx] - qe, &mut powers);
                }
            }
        }
        num[top] = BigInt::zero();
    }
    num.truncate(n);
    exp.truncate(n);
    let emax = exp.iter().copied().max().unwrap_or(0);
    let mut out: Vec<BigInt> = num
        .into_iter()
        .zip(exp)
        .map(|(c, e)| c * pow_of(emax - e, &mut powers))
        .collect();
    if l.is_negative() && emax % 2 == 1 {
        for c in &mut out {
            *c = -&*c;
        }
    }
    trim(&mut out);
    out
}

pub(crate) fn derivative(v: &[BigInt]) -> Vec<BigInt> {
    let d: Vec<BigInt> = v
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect();
    primitive(d)
}

/// Monic gcd over the rationals, computed with a primitive remainder sequence.
pub(crate) fn gcd(a: &RationalPoly, b: &RationalPoly) -> RationalPoly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    let (mut x, mut y) = (from_rational(a), from_rational(b));
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    loop {
        if y.len() == 1 {
            return RationalPoly::one();
        }
        let r = primitive(rem_positive(&x, &y));
        if r.is_empty() {
            return to_rational(&y).monic();
        }
        x = y;
        y = r;
    }
}

/// Sign of `v` at the rational `num/den` (den > 0), without building rationals.
pub(crate) fn sign_at(v: &[BigInt], num: &BigInt, den: &BigInt) -> Ordering {
    let Some(top) = v.last() else {
        return Ordering::Equal;
    };
    let mut acc = top.clone();
    let mut dp = BigInt::one();
    for c in v.iter().rev().skip(1) {
        dp *= den;
        acc = acc * num + c * &dp;
    }
    acc.sign_ordering()
}

trait SignOrdering {
    fn sign_ordering(&self) -> Ordering;
}

impl SignOrdering for BigInt {
    fn sign_ordering(&self) -> Ordering {
        self.cmp(&BigInt::zero())
    }
}

pub(crate) fn sign_at_rational(v: &[BigInt], x: &Rational) -> Ordering {
    sign_at(v, x.numer(), x.denom())
}

/// Sign as `x -> +inf` (`at_pos`) or `x -> -inf`.
pub(crate) fn sign_at_infinity(v: &[BigInt], at_pos: bool) -> Ordering {
    let Some(lc) = v.last() else {
        return Ordering::Equal;
    };
    let s = lc.sign_ordering();
    if at_pos || (v.len() - 1) % 2 == 0 {
        s
    } else {
        s.reverse()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::int;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn positive_remainder_matches_rational_division() {
        let a = RationalPoly::from_ints(&[3, -1, 4, 1, -5, 9]);
        let b = RationalPoly::from_ints(&[2, 6, -5]);
        let (_, r) = a.div_rem(&b).unwrap();
        let ri = rem_positive(&from_rational(&a), &from_rational(&b));
        let ri = to_rational(&ri);
        // ri must be a positive multiple of r
        let ratio = ri.leading().unwrap() / r.leading().unwrap();
        assert!(ratio > int(0));
        assert_eq!(r.scale(&ratio), ri);
    }

    #[test]
    fn gcd_of_shared_factor() {
        let a = RationalPoly::from_ints(&[-1, 0, 1]);
        let b = RationalPoly::from_ints(&[1, 2, 1]);
        assert_eq!(gcd(&a, &b), RationalPoly::from_ints(&[1, 1]));
        assert_eq!(gcd(&a, &RationalPoly::from_ints(&[2, 0, 1])), RationalPoly::one());
    }

    #[test]
    fn homogeneous_sign_evaluation() {
        let v = ints(&[-2, 0, 1]);
        assert_eq!(sign_at(&v, &BigInt::from(3), &BigInt::from(2)), Ordering::Greater);
        assert_eq!(sign_at(&v, &BigInt::from(1), &BigInt::from(1)), Ordering::Less);
        assert_eq!(sign_at_infinity(&ints(&[0, 0, 0, -1]), false), Ordering::Greater);
    }
}
