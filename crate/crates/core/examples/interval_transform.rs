//! Certificate of nonnegativity on an interval via the substitution
//! `x = (b + c y^2) / (1 + y^2)`.
//!
//! ```text
//! cargo run --example interval_transform
//! ```

use univsos::certificate::verify_exact;
use univsos::poly::{int, rat};
use univsos::transform::interval_to_line;
use univsos::univsos2::univsos2;
use univsos::RationalPoly;

fn main() -> univsos::Result<()> {
    // X (1 - X) is nonnegative on [0, 1] but not on the line.
    let p = RationalPoly::from_ints(&[0, 1, -1]);
    let q = interval_to_line(&p, &int(0), &int(1))?;
    println!("p = {p}  ->  q = {q}");

    // (X - 1/3)^2 - 1/100 + X^3 on [0, 2]
    let p = &(&RationalPoly::new(vec![rat(-1, 3), int(1)]).square() - &RationalPoly::constant(rat(1, 100)))
        + &RationalPoly::monomial(int(1), 3);
    let q = interval_to_line(&p, &int(0), &int(2))?;
    println!("p = {p}\nq = {q}");
    match univsos2(&q) {
        Ok(cert) => println!("q certified with {} squares, exact check {}", cert.len(), verify_exact(&cert).ok),
        Err(e) => println!("q not certified: {e}"),
    }
    Ok(())
}
