//! Perturbation certificate for the worked sextic, step by step.
//!
//! ```text
//! cargo run --example certify_univsos2
//! ```

use univsos::certificate::verify_exact;
use univsos::poly::{int, rat};
use univsos::univsos2::{
    assemble_certificate, compute_remainder, find_epsilon, sum_two_squares, weights_admissible,
};
use univsos::RationalPoly;

fn main() -> univsos::Result<()> {
    let f = RationalPoly::new(vec![int(2), rat(2, 15), rat(-11, 10), rat(-1, 9), int(1), int(0), rat(1, 16)]);
    println!("f = {f}");

    // f is square-free, so p = f and h = 1.
    let ps = find_epsilon(&f, &rat(1, 32))?;
    println!("eps = {}   p_eps = {}", ps.eps, ps.p_eps);

    let mut delta = 16;
    let cert = loop {
        let ts = sum_two_squares(&ps, delta)?;
        let r = compute_remainder(&ps, &ts)?;
        let ok = weights_admissible(&ps, &r);
        println!("delta = {delta:>4}: s1 = {}   remainder absorbed: {ok}", ts.s1);
        if ok {
            break assemble_certificate(&ps, &ts, &r)?;
        }
        delta *= 2;
    };

    println!("\nf = sum of {} weighted squares:", cert.len());
    for t in &cert.terms {
        println!("  {} * ({})^2", t.weight, t.poly);
    }
    println!("\nexact check: {}", if verify_exact(&cert).ok { "ok" } else { "FAILED" });
    Ok(())
}
