//! Exact real-root counting, isolation and refinement with Sturm sequences.
//!
//! Isolation bisects `(-L, L)`, where `L` is the first power of two above the
//! Cauchy bound, until every open subinterval holds exactly one root and has
//! non-root endpoints. Midpoints that happen to be roots become point
//! intervals. Returned intervals are at most one unit wide. All sign queries
//! run on primitive integer polynomials.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::intpoly;
use crate::poly::{int, int_bitsize, pow2, Rational, RationalPoly};
use crate::squarefree::{cauchy_bound, gcd, square_split};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IntervalKind {
    /// `lo == hi` is the root itself.
    Point,
    /// The root lies strictly between `lo` and `hi`; neither endpoint is a root.
    Open,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IsolatingInterval {
    pub lo: Rational,
    pub hi: Rational,
    pub kind: IntervalKind,
}

impl IsolatingInterval {
    pub fn point(x: Rational) -> Self {
        IsolatingInterval {
            lo: x.clone(),
            hi: x,
            kind: IntervalKind::Point,
        }
    }

    pub fn open(lo: Rational, hi: Rational) -> Self {
        IsolatingInterval {
            lo,
            hi,
            kind: IntervalKind::Open,
        }
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn is_point(&self) -> bool {
        self.kind == IntervalKind::Point
    }

    pub fn contains(&self, x: &Rational) -> bool {
        match self.kind {
            IntervalKind::Point => *x == self.lo,
            IntervalKind::Open => self.lo < *x && *x < self.hi,
        }
    }
}

/// Classical Sturm sequence `p, p', -rem(p, p'), ...`.
///
/// Members are stored as primitive integer polynomials; each one is a
/// positive multiple of the corresponding textbook member, so sign
/// variations are unchanged.
#[derive(Clone, Debug)]
pub struct SturmSequence {
    seq: Vec<Vec<BigInt>>,
}

impl SturmSequence {
    pub fn new(p: &RationalPoly) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let first = intpoly::from_rational(p);
        let mut seq = vec![first.clone()];
        let second = intpoly::derivative(&first);
        if second.is_empty() {
            return Ok(SturmSequence { seq });
        }
        seq.push(second);
        loop {
            let n = seq.len();
            let r = intpoly::rem_positive(&seq[n - 2], &seq[n - 1]);
            if r.is_empty() {
                break;
            }
            let neg: Vec<BigInt> = r.into_iter().map(|c| -c).collect();
            seq.push(intpoly::primitive(neg));
        }
        Ok(SturmSequence { seq })
    }

    pub fn polys(&self) -> Vec<RationalPoly> {
        self.seq.iter().map(|v| intpoly::to_rational(v)).collect()
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    fn variations<I: Iterator<Item = Ordering>>(signs: I) -> usize {
        let mut count = 0;
        let mut last = Ordering::Equal;
        for s in signs {
            if s == Ordering::Equal {
                continue;
            }
            if last != Ordering::Equal && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    pub fn variations_at(&self, x: &Rational) -> usize {
        Self::variations(self.seq.iter().map(|v| intpoly::sign_at_rational(v, x)))
    }

    pub fn variations_at_infinity(&self, positive: bool) -> usize {
        Self::variations(self.seq.iter().map(|v| intpoly::sign_at_infinity(v, positive)))
    }

    /// Distinct real roots over the whole line.
    pub fn total_count(&self) -> usize {
        self.variations_at_infinity(false) - self.variations_at_infinity(true)
    }
}

/// Number of distinct real roots of `p` in `(lo, hi]`.
pub fn sturm_count(p: &RationalPoly, lo: &Rational, hi: &Rational) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if lo >= hi {
        return Err(Error::EmptyInterval);
    }
    if p.evaluate(lo).is_zero() || p.evaluate(hi).is_zero() {
        return Err(Error::EndpointIsRoot);
    }
    let s = SturmSequence::new(p)?;
    Ok(s.variations_at(lo) - s.variations_at(hi))
}

/// Number of distinct real roots of `p`.
pub fn real_root_count(p: &RationalPoly) -> Result<usize> {
    Ok(SturmSequence::new(p)?.total_count())
}

pub fn has_real_roots(p: &RationalPoly) -> Result<bool> {
    Ok(real_root_count(p)? > 0)
}

/// Exact global nonnegativity: even degree, positive leading coefficient and
/// no real root of odd multiplicity. Zero counts as nonnegative.
pub fn is_nonnegative(p: &RationalPoly) -> bool {
    let Some(n) = p.degree() else {
        return true;
    };
    if n % 2 == 1 || p.leading_or_zero().is_negative() {
        return false;
    }
    if n == 0 {
        return true;
    }
    let seq = SturmSequence::new(p).expect("nonzero");
    if seq.total_count() == 0 {
        return true;
    }
    let split = square_split(p).expect("nonzero");
    !has_real_roots(&split.square_free_part).expect("nonzero")
}

/// Root isolation and refinement for a fixed polynomial.
///
/// Works on the square-free part of the input, so the isolated roots are the
/// distinct real roots of the original polynomial.
#[derive(Clone, Debug)]
pub struct RootIsolator {
    sqfree: Vec<BigInt>,
    sturm: SturmSequence,
}

impl RootIsolator {
    pub fn new(p: &RationalPoly) -> Result<Self> {
        let n = p.try_degree()?;
        if n == 0 {
            return Err(Error::ConstantPolynomial);
        }
        let g = gcd(p, &p.derivative());
        let s = p.exact_div(&g)?;
        let sturm = SturmSequence::new(&s)?;
        Ok(RootIsolator {
            sqfree: intpoly::from_rational(&s),
            sturm,
        })
    }

    /// Square-free part (up to a positive constant) whose roots are isolated.
    pub fn square_free_part(&self) -> RationalPoly {
        intpoly::to_rational(&self.sqfree)
    }

    pub fn sign_at(&self, x: &Rational) -> Ordering {
        intpoly::sign_at_rational(&self.sqfree, x)
    }

    fn open_count(&self, lo: &Rational, hi: &Rational) -> usize {
        let c = self.sturm.variations_at(lo) - self.sturm.variations_at(hi);
        if self.sign_at(hi) == Ordering::Equal {
            c - 1
        } else {
            c
        }
    }

    pub fn isolate(&self) -> Vec<IsolatingInterval> {
        let s = self.square_free_part();
        let bound = cauchy_bound(&s).expect("degree >= 1");
        let mut l = int(1);
        while l <= bound {
            l = l * int(2);
        }
        let mut out = Vec::new();
        let total = self.sturm.total_count();
        let mut stack = vec![(-l.clone(), l, total)];
        while let Some((lo, hi, c)) = stack.pop() {
            if c == 0 {
                continue;
            }
            if c == 1
                && self.sign_at(&lo) != Ordering::Equal
                && self.sign_at(&hi) != Ordering::Equal
            {
                out.push(IsolatingInterval::open(lo, hi));
                continue;
            }
            let mid = (&lo + &hi) / int(2);
            let on_root = self.sign_at(&mid) == Ordering::Equal;
            if on_root {
                out.push(IsolatingInterval::point(mid.clone()));
            }
            let cl = self.open_count(&lo, &mid);
            let cr = c - cl - usize::from(on_root);
            stack.push((lo, mid.clone(), cl));
            stack.push((mid, hi, cr));
        }
        out.sort_by(|a, b| a.lo.cmp(&b.lo));
        out.into_iter().map(|iv| self.refine(&iv, &int(1))).collect()
    }

    /// Halves an open interval once, keeping the root.
    pub fn bisect(&self, iv: &IsolatingInterval) -> IsolatingInterval {
        if iv.is_point() {
            return iv.clone();
        }
        let mid = (&iv.lo + &iv.hi) / int(2);
        let sm = self.sign_at(&mid);
        if sm == Ordering::Equal {
            IsolatingInterval::point(mid)
        } else if sm == self.sign_at(&iv.lo) {
            IsolatingInterval::open(mid, iv.hi.clone())
        } else {
            IsolatingInterval::open(iv.lo.clone(), mid)
        }
    }

    pub fn refine(&self, iv: &IsolatingInterval, width: &Rational) -> IsolatingInterval {
        let mut cur = iv.clone();
        while !cur.is_point() && cur.width() > *width {
            cur = self.bisect(&cur);
        }
        cur
    }
}

pub fn isolate_real_roots(p: &RationalPoly) -> Result<Vec<IsolatingInterval>> {
    Ok(RootIsolator::new(p)?.isolate())
}

pub fn refine_interval(
    p: &RationalPoly,
    iv: &IsolatingInterval,
    width: &Rational,
) -> Result<IsolatingInterval> {
    if iv.is_point() || iv.width() <= *width {
        return Ok(iv.clone());
    }
    Ok(RootIsolator::new(p)?.refine(iv, width))
}

/// Window `(1/(2^tau+1), 2^tau+1)` holding the magnitude of every nonzero
/// root of an integer polynomial with nonzero constant term.
pub fn root_magnitude_window(p: &RationalPoly) -> Result<(Rational, Rational)> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.coeffs().iter().any(|c| !c.is_integer()) {
        return Err(Error::BadParameters(
            "root magnitude window needs integer coefficients".into(),
        ));
    }
    if p.coeff(0).is_zero() {
        return Err(Error::ZeroConstantTerm);
    }
    let tau = p
        .coeffs()
        .iter()
        .map(|c| int_bitsize(c.numer()))
        .max()
        .unwrap_or(1);
    let hi = pow2(tau as i64) + int(1);
    Ok((hi.recip(), hi))
}
