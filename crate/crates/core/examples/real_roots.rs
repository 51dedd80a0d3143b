//! Sturm counting, isolation and the global nonnegativity test.
//!
//! ```text
//! cargo run --example real_roots
//! ```

use univsos::poly::rat;
use univsos::real_roots::{is_nonnegative, isolate_real_roots, real_root_count, refine_interval};
use univsos::squarefree::{square_split, yun_squarefree};
use univsos::RationalPoly;

fn main() -> univsos::Result<()> {
    // (X+1)^2 (X-1)^2 (X^2+2)
    let f = &RationalPoly::from_ints(&[-1, 0, 1]).square() * &RationalPoly::from_ints(&[2, 0, 1]);
    println!("f = {f}");
    let dec = yun_squarefree(&f)?;
    for fac in &dec.factors {
        println!("  factor {} with multiplicity {}", fac.factor, fac.multiplicity);
    }
    let split = square_split(&f)?;
    println!("f = ({}) * ({})^2", split.square_free_part, split.square_root_part);
    println!("distinct real roots: {}", real_root_count(&f)?);
    println!("nonnegative: {}", is_nonnegative(&f));

    let g = RationalPoly::from_ints(&[-2, 0, 1]);
    for iv in isolate_real_roots(&g)? {
        let fine = refine_interval(&g, &iv, &rat(1, 1 << 20))?;
        println!("root of {g} in ({}, {})", fine.lo, fine.hi);
    }
    println!("{g} nonnegative: {}", is_nonnegative(&g));
    Ok(())
}
