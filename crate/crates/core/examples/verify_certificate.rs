//! Writes a certificate in the text format, reads it back and checks it
//! both by expansion and by evaluation; then shows a tampered copy failing.
//!
//! ```text
//! cargo run --example verify_certificate
//! ```

use univsos::certificate::{parse, serialize, verify_eval_default, verify_exact};
use univsos::poly::int;
use univsos::univsos1::univsos1;
use univsos::RationalPoly;

fn main() -> univsos::Result<()> {
    // X^4 - 2X^3 + 3X^2 - 2X + 1 = (X^2 - X + 1)^2
    let f = RationalPoly::from_ints(&[1, -2, 3, -2, 1]);
    let cert = univsos1(&f)?;
    let text = serialize(&cert);
    print!("{text}");

    let back = parse(&text)?;
    println!("exact: {:?}", verify_exact(&back));
    println!("eval:  {:?}", verify_eval_default(&back));

    let mut bad = back.clone();
    bad.terms[0].weight += int(1);
    println!("tampered exact: {:?}", verify_exact(&bad));
    println!("tampered eval:  {:?}", verify_eval_default(&bad));
    Ok(())
}
