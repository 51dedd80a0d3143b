//! Benchmark families and a small timing harness.
//!
//! Families:
//!
//! - `powersum`: `P_n = 1 + X + ... + X^n`
//! - `wilkinson`: `W_n = 1 + prod_{j=1}^{n/2} (X - j)^2`
//! - `mignotte`: `M_{n,m} = X^n + 2 (101 X - 1)^m`
//! - `mignotte-prod`: `N_n = (X^n + 2 (101 X - 1)^2) (X^n + 2 ((101 + 1/101) X - 1)^2)`
//!
//! Compute times are averaged over 5 runs and verification times over 100.

use std::fmt;
use std::str::FromStr;
use std::sync::mpsc;
use std::thread;
use std::time::{Duration, Instant};

use crate::certificate::{certificate_bitsize, verify_exact, WeightedSosCert};
use crate::error::{Error, Result};
use crate::poly::{int, rat, RationalPoly};
use crate::{univsos1, univsos2};

pub const COMPUTE_RUNS: u32 = 5;
pub const VERIFY_RUNS: u32 = 100;
pub const CSV_HEADER: &str = "family,n,m,algo,tau_in,tau_cert_total,t_compute_ms,t_verify_ms,status";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    PowerSum,
    Wilkinson,
    Mignotte,
    MignotteProd,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::PowerSum => "powersum",
            Family::Wilkinson => "wilkinson",
            Family::Mignotte => "mignotte",
            Family::MignotteProd => "mignotte-prod",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "powersum" => Ok(Family::PowerSum),
            "wilkinson" => Ok(Family::Wilkinson),
            "mignotte" => Ok(Family::Mignotte),
            "mignotte-prod" => Ok(Family::MignotteProd),
            other => Err(Error::BadParameters(format!("unknown family `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algo {
    One,
    Two,
}

impl Algo {
    pub fn number(self) -> u8 {
        match self {
            Algo::One => 1,
            Algo::Two => 2,
        }
    }

    pub fn run(self, f: &RationalPoly) -> Result<WeightedSosCert> {
        match self {
            Algo::One => univsos1::univsos1(f),
            Algo::Two => univsos2::univsos2(f),
        }
    }
}

impl FromStr for Algo {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "1" => Ok(Algo::One),
            "2" => Ok(Algo::Two),
            other => Err(Error::BadParameters(format!("algo must be 1 or 2, got `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    NotNonnegative,
    PrecisionExhausted,
    Timeout,
    /// Any other error, or a certificate that failed exact verification.
    Failed,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::NotNonnegative => "not_nonnegative",
            Status::PrecisionExhausted => "precision_exhausted",
            Status::Timeout => "timeout",
            Status::Failed => "failed",
        }
    }
}

#[derive(Clone, Debug)]
pub struct BenchRecord {
    pub family: Family,
    pub n: u32,
    pub m: Option<u32>,
    pub algo: Algo,
    pub tau_in: u64,
    pub tau_cert_total: u64,
    pub t_compute_ms: f64,
    pub t_verify_ms: f64,
    pub status: Status,
    /// The verified certificate when `status` is `Ok`.
    pub certificate: Option<WeightedSosCert>,
}

impl BenchRecord {
    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{:.3},{:.3},{}",
            self.family,
            self.n,
            self.m.map(|m| m.to_string()).unwrap_or_default(),
            self.algo.number(),
            self.tau_in,
            self.tau_cert_total,
            self.t_compute_ms,
            self.t_verify_ms,
            self.status.name()
        )
    }
}

pub fn to_csv(records: &[BenchRecord]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&r.csv_line());
        out.push('\n');
    }
    out
}

fn mignotte_quadratic(n: u32, a: crate::Rational, m: u32) -> RationalPoly {
    let lin = RationalPoly::new(vec![int(-1), a]);
    &RationalPoly::monomial(int(1), n as usize) + &lin.pow(m).scale(&int(2))
}

/// Builds a member of a family. `m` is only used by `mignotte` (default 2).
pub fn gen_family(family: Family, n: u32, m: Option<u32>) -> Result<RationalPoly> {
    if n < 2 || n % 2 == 1 {
        return Err(Error::BadParameters(format!("n must be even and at least 2, got {n}")));
    }
    Ok(match family {
        Family::PowerSum => RationalPoly::new(vec![int(1); n as usize + 1]),
        Family::Wilkinson => {
            let mut p = RationalPoly::one();
            for j in 1..=(n / 2) as i64 {
                p = &p * &RationalPoly::from_ints(&[-j, 1]).square();
            }
            &p + &RationalPoly::one()
        }
        Family::Mignotte => {
            let m = m.unwrap_or(2);
            if m < 2 || m % 2 == 1 {
                return Err(Error::BadParameters(format!("m must be even and at least 2, got {m}")));
            }
            mignotte_quadratic(n, int(101), m)
        }
        Family::MignotteProd => {
            let a = mignotte_quadratic(n, int(101), 2);
            let b = mignotte_quadratic(n, int(101) + rat(1, 101), 2);
            &a * &b
        }
    })
}

fn status_of(e: &Error) -> Status {
    match e {
        Error::NotNonnegative(_) => Status::NotNonnegative,
        Error::PrecisionExhausted(_) => Status::PrecisionExhausted,
        _ => Status::Failed,
    }
}

fn mean_ms(total: Duration, runs: u32) -> f64 {
    total.as_secs_f64() * 1000.0 / runs as f64
}

struct Measured {
    status: Status,
    cert: Option<WeightedSosCert>,
    t_compute_ms: f64,
    t_verify_ms: f64,
}

fn measure(f: &RationalPoly, algo: Algo) -> Measured {
    let mut total = Duration::ZERO;
    let mut cert = None;
    for _ in 0..COMPUTE_RUNS {
        let start = Instant::now();
        let out = algo.run(f);
        total += start.elapsed();
        match out {
            Ok(c) => cert = Some(c),
            Err(e) => {
                return Measured {
                    status: status_of(&e),
                    cert: None,
                    t_compute_ms: total.as_secs_f64() * 1000.0,
                    t_verify_ms: 0.0,
                }
            }
        }
    }
    let cert = cert.expect("at least one compute run");
    let mut vtotal = Duration::ZERO;
    let mut ok = true;
    for _ in 0..VERIFY_RUNS {
        let start = Instant::now();
        ok &= verify_exact(&cert).ok;
        vtotal += start.elapsed();
    }
    Measured {
        status: if ok { Status::Ok } else { Status::Failed },
        cert: ok.then_some(cert),
        t_compute_ms: mean_ms(total, COMPUTE_RUNS),
        t_verify_ms: mean_ms(vtotal, VERIFY_RUNS),
    }
}

/// Runs one instance on a worker thread. A run that exceeds `timeout` is
/// recorded as `Timeout`; its thread is left to finish in the background.
pub fn run_instance(family: Family, n: u32, m: Option<u32>, algo: Algo, timeout: Duration) -> Result<BenchRecord> {
    let f = gen_family(family, n, m)?;
    let tau_in = f.bitsize().max_coeff_bits;
    let (tx, rx) = mpsc::channel();
    let input = f.clone();
    thread::spawn(move || {
        let _ = tx.send(measure(&input, algo));
    });
    let m = if family == Family::Mignotte { Some(m.unwrap_or(2)) } else { None };
    let mut record = BenchRecord {
        family,
        n,
        m,
        algo,
        tau_in,
        tau_cert_total: 0,
        t_compute_ms: 0.0,
        t_verify_ms: 0.0,
        status: Status::Timeout,
        certificate: None,
    };
    if let Ok(res) = rx.recv_timeout(timeout) {
        record.status = res.status;
        record.t_compute_ms = res.t_compute_ms;
        record.t_verify_ms = res.t_verify_ms;
        record.tau_cert_total = res.cert.as_ref().map(|c| certificate_bitsize(c).total_bits).unwrap_or(0);
        record.certificate = res.cert;
    } else {
        record.t_compute_ms = timeout.as_secs_f64() * 1000.0;
    }
    Ok(record)
}

/// One record per `n` in `ns`, in order.
pub fn run_bench(family: Family, ns: &[u32], m: Option<u32>, algo: Algo, timeout: Duration) -> Result<Vec<BenchRecord>> {
    for &n in ns {
        gen_family(family, n, m)?;
    }
    ns.iter()
        .map(|&n| run_instance(family, n, m, algo, timeout))
        .collect()
}

/// `min, min + step, ...` up to and including `max`.
pub fn n_range(min: u32, max: u32, step: u32) -> Result<Vec<u32>> {
    if step == 0 || min > max {
        return Err(Error::BadParameters("need min <= max and step > 0".into()));
    }
    Ok((min..=max).step_by(step as usize).collect())
}
