//! Nested certificate for the worked sextic, flattened and checked.
//!
//! ```text
//! cargo run --example certify_univsos1
//! ```

use univsos::certificate::{certificate_bitsize, verify_exact};
use univsos::poly::{int, rat};
use univsos::univsos1::{flatten_nested, parab_at, univsos1_run, DEFAULT_MAX_REFINE_BITS};
use univsos::RationalPoly;

fn main() -> univsos::Result<()> {
    // 1/16 X^6 + X^4 - 1/9 X^3 - 11/10 X^2 + 2/15 X + 2
    let f = RationalPoly::new(vec![int(2), rat(2, 15), rat(-11, 10), rat(-1, 9), int(1), int(0), rat(1, 16)]);
    println!("f = {f}");

    // The pivot t = -1 is admissible: f - f_t is a nonnegative multiple of (X+1)^2.
    let (f_t, rest) = parab_at(&f, &int(-1)).expect("t = -1 admissible");
    println!("at t = -1: f_t = {f_t}");
    println!("           (f - f_t)/(X+1)^2 = {rest}");

    let nested = univsos1_run(&f, DEFAULT_MAX_REFINE_BITS)?;
    println!("\npivots chosen by the search: {:?}", nested.pivots.iter().map(|t| t.to_string()).collect::<Vec<_>>());
    for (i, (h, q)) in nested.h_list.iter().zip(&nested.q_list).enumerate() {
        println!("  level {i}: q = {q}   h = {h}");
    }

    let cert = flatten_nested(&nested)?;
    println!("\nf = sum of {} weighted squares:", cert.len());
    for t in &cert.terms {
        println!("  {} * ({})^2", t.weight, t.poly);
    }
    let report = verify_exact(&cert);
    let bits = certificate_bitsize(&cert);
    println!("\nexact check: {}   total bits: {}", if report.ok { "ok" } else { "FAILED" }, bits.total_bits);
    Ok(())
}
