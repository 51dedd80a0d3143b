//! Nonnegativity on a closed interval `[b, c]` reduced to nonnegativity on
//! the whole line via `x = (b + c y^2) / (1 + y^2)`.

use crate::error::{Error, Result};
use crate::poly::{Rational, RationalPoly};

/// `q(Y) = (1 + Y^2)^n p((b + c Y^2) / (1 + Y^2))` with `n = deg p`.
///
/// `q >= 0` on the reals iff `p >= 0` on `[b, c]`.
pub fn interval_to_line(p: &RationalPoly, b: &Rational, c: &Rational) -> Result<RationalPoly> {
    if b >= c {
        return Err(Error::EmptyInterval);
    }
    let n = p.try_degree()?;
    let num = RationalPoly::new(vec![b.clone(), Rational::from_integer(0.into()), c.clone()]);
    let den = RationalPoly::from_ints(&[1, 0, 1]);
    // Horner on the homogenized form: acc_i = acc_{i+1} * num + a_i * den^(n-i)
    let mut acc = RationalPoly::constant(p.coeff(n));
    let mut den_pow = RationalPoly::one();
    for i in (0..n).rev() {
        den_pow = &den_pow * &den;
        acc = &(&acc * &num) + &den_pow.scale(&p.coeff(i));
    }
    Ok(acc)
}
