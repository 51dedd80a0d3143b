//! Square-free decomposition (Yun) and the `f = g * h^2` split built on it.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::intpoly;
use crate::poly::{Rational, RationalPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareFreeFactor {
    pub factor: RationalPoly,
    pub multiplicity: usize,
}

/// `p = unit * prod(factor^multiplicity)`, factors monic, square-free and
/// pairwise coprime, listed by increasing multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareFreeDecomposition {
    pub unit: Rational,
    pub factors: Vec<SquareFreeFactor>,
}

impl SquareFreeDecomposition {
    /// Expands the decomposition back into a polynomial.
    pub fn expand(&self) -> RationalPoly {
        self.factors
            .iter()
            .fold(RationalPoly::constant(self.unit.clone()), |acc, f| {
                &acc * &f.factor.pow(f.multiplicity as u32)
            })
    }
}

/// Monic gcd over the rationals.
pub fn gcd(a: &RationalPoly, b: &RationalPoly) -> RationalPoly {
    intpoly::gcd(a, b)
}

pub fn is_square_free(p: &RationalPoly) -> bool {
    !p.is_zero() && gcd(p, &p.derivative()).is_constant()
}

pub fn yun_squarefree(p: &RationalPoly) -> Result<SquareFreeDecomposition> {
    let unit = p.leading().ok_or(Error::ZeroPolynomial)?.clone();
    let mut factors = Vec::new();
    if p.is_constant() {
        return Ok(SquareFreeDecomposition { unit, factors });
    }
    let f = p.monic();
    let df = f.derivative();
    let b = gcd(&f, &df);
    let mut c = f.exact_div(&b)?;
    let mut d = &df.exact_div(&b)? - &c.derivative();
    let mut i = 1;
    while !c.is_constant() {
        let a = gcd(&c, &d);
        c = c.exact_div(&a)?;
        d = &d.exact_div(&a)? - &c.derivative();
        if !a.is_constant() {
            factors.push(SquareFreeFactor {
                factor: a,
                multiplicity: i,
            });
        }
        i += 1;
    }
    Ok(SquareFreeDecomposition { unit, factors })
}

/// `p = g * h^2` with `h` monic and `g` square-free.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareSplit {
    pub square_free_part: RationalPoly,
    pub square_root_part: RationalPoly,
}

pub fn square_split(p: &RationalPoly) -> Result<SquareSplit> {
    let dec = yun_squarefree(p)?;
    Ok(split_from(&dec))
}

pub(crate) fn split_from(dec: &SquareFreeDecomposition) -> SquareSplit {
    let mut g = RationalPoly::constant(dec.unit.clone());
    let mut h = RationalPoly::one();
    for f in &dec.factors {
        if f.multiplicity % 2 == 1 {
            g = &g * &f.factor;
        }
        let half = (f.multiplicity / 2) as u32;
        if half > 0 {
            h = &h * &f.factor.pow(half);
        }
    }
    SquareSplit {
        square_free_part: g,
        square_root_part: h,
    }
}

/// Cauchy bound `max(1, sum_{i<n} |a_i| / |a_n|)` on the magnitude of every root.
pub fn cauchy_bound(p: &RationalPoly) -> Result<Rational> {
    let n = p.try_degree()?;
    if n == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let lc = p.coeff(n).abs();
    let s = p.coeffs()[..n]
        .iter()
        .fold(Rational::zero(), |acc, c| acc + c.abs())
        / lc;
    Ok(s.max(Rational::from_integer(1.into())))
}
