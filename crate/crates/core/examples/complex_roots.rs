//! Dyadic approximations of complex roots, conjugate pairing, and the
//! exact residual at the rounded points.
//!
//! ```text
//! cargo run --example complex_roots
//! ```

use univsos::complex_roots::{approx_complex_roots, expand_linear_factors, pair_conjugates};
use univsos::RationalPoly;

fn main() -> univsos::Result<()> {
    // (X^2 + 1)(X^2 + 4) + 1/2 X, no real roots
    let p = &(&RationalPoly::from_ints(&[1, 0, 1]) * &RationalPoly::from_ints(&[4, 0, 1]))
        + &RationalPoly::new(vec![univsos::poly::int(0), univsos::poly::rat(1, 2)]);
    for delta in [8, 32, 128] {
        let rs = approx_complex_roots(&p, delta)?;
        let upper = pair_conjugates(&rs)?;
        let (s1, s2) = expand_linear_factors(&upper);
        println!("delta = {delta}");
        for z in &upper {
            println!("  {} + {} i", approx(&z.re), approx(&z.im));
        }
        println!("  residual bound {:.3e}", approx(&rs.residual_bound));
        println!("  p - (s1^2 + s2^2) = {}", &p - &(&s1.square() + &s2.square()));
    }
    Ok(())
}

fn approx(q: &univsos::Rational) -> f64 {
    num_traits::ToPrimitive::to_f64(q).unwrap_or(f64::NAN)
}
