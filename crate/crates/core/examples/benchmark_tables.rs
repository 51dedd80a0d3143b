//! Small versions of the benchmark tables: power sums, Wilkinson-type and
//! Mignotte-type polynomials with both algorithms.
//!
//! ```text
//! cargo run --release --example benchmark_tables
//! ```

use std::time::Duration;

use univsos::bench::{run_bench, to_csv, Algo, Family};

fn main() -> univsos::Result<()> {
    let timeout = Duration::from_secs(60);
    let runs: [(Family, &[u32], Option<u32>); 4] = [
        (Family::PowerSum, &[10, 20, 40], None),
        (Family::Wilkinson, &[10, 20], None),
        (Family::Mignotte, &[10, 100, 1000], Some(2)),
        (Family::MignotteProd, &[10, 20], None),
    ];
    let mut records = Vec::new();
    for (family, ns, m) in runs {
        for algo in [Algo::One, Algo::Two] {
            if family == Family::Mignotte && algo == Algo::Two {
                // degree 1000 is out of desk range for the root finder
                records.extend(run_bench(family, &ns[..2], m, algo, timeout)?);
                continue;
            }
            records.extend(run_bench(family, ns, m, algo, timeout)?);
        }
    }
    print!("{}", to_csv(&records));
    Ok(())
}
