//! Command-line front end.
//!
//! Exit codes: 0 success, 1 not nonnegative, 2 bad input or parameters,
//! 3 precision exhausted, 4 verification failure.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};

use crate::bench::{self, Algo, Family};
use crate::certificate::{self, verify_exact, verify_eval_default, WeightedSosCert};
use crate::error::Error;
use crate::poly::{Rational, RationalPoly};
use crate::text;
use crate::transform::interval_to_line;
use crate::univsos1::{flatten_nested, univsos1_run, DEFAULT_MAX_REFINE_BITS};
use crate::univsos2::{univsos2_run, DEFAULT_DELTA, DEFAULT_MAX_DOUBLINGS};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_NONNEGATIVE: i32 = 1;
pub const EXIT_BAD_INPUT: i32 = 2;
pub const EXIT_PRECISION: i32 = 3;
pub const EXIT_VERIFY_FAILED: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "univsos", version, about = "Exact weighted SOS certificates for univariate polynomials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Certificate by successive quadratic under-approximations
    Sos1 {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_MAX_REFINE_BITS)]
        max_refine_bits: u32,
    },
    /// Certificate by perturbation and approximate complex roots
    Sos2 {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Initial perturbation, `num/den`; defaults to half the leading coefficient
        #[arg(long, value_parser = parse_rational_arg)]
        eps: Option<Rational>,
        #[arg(long, default_value_t = DEFAULT_DELTA)]
        delta: u64,
        #[arg(long, default_value_t = DEFAULT_MAX_DOUBLINGS)]
        max_doublings: u32,
    },
    /// Check a certificate file
    Verify {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Exact)]
        mode: Mode,
    },
    /// Map nonnegativity on [lo, hi] to nonnegativity on the real line
    Transform {
        input: PathBuf,
        #[arg(long, value_parser = parse_rational_arg, allow_hyphen_values = true)]
        lo: Rational,
        #[arg(long, value_parser = parse_rational_arg, allow_hyphen_values = true)]
        hi: Rational,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run a benchmark family
    Bench {
        #[arg(long, value_parser = parse_family)]
        family: Family,
        #[arg(long)]
        min: u32,
        #[arg(long)]
        max: u32,
        #[arg(long, default_value_t = 2)]
        step: u32,
        #[arg(long, value_parser = parse_algo)]
        algo: Algo,
        /// Exponent of the quadratic factor for `mignotte`
        #[arg(long)]
        m: Option<u32>,
        /// Emit CSV instead of an aligned table
        #[arg(long)]
        csv: bool,
        #[arg(long, default_value_t = 120)]
        timeout_secs: u64,
        /// Write each generated polynomial here as `<family>-<n>.poly`
        #[arg(long)]
        dump_dir: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Exact,
    Eval,
}

fn parse_rational_arg(s: &str) -> Result<Rational, String> {
    text::parse_rational(s).ok_or_else(|| format!("expected `num` or `num/den`, got `{s}`"))
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_algo(s: &str) -> Result<Algo, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Failure carrying its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotNonnegative(_) => EXIT_NOT_NONNEGATIVE,
            Error::PrecisionExhausted(_) => EXIT_PRECISION,
            _ => EXIT_BAD_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure {
        code: EXIT_BAD_INPUT,
        message: format!("{}: {e}", path.display()),
    }
}

pub fn parse_poly_file(path: &Path) -> crate::Result<RationalPoly> {
    let text = fs::read_to_string(path).map_err(|e| Error::Parse {
        line: 0,
        column: 0,
        message: format!("{}: {e}", path.display()),
    })?;
    text::parse_poly(&text)
}

fn emit(output: Option<&Path>, body: &str) -> Result<(), Failure> {
    match output {
        Some(p) => fs::write(p, body).map_err(|e| io_failure(p, e)),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(body.as_bytes()).map_err(|e| io_failure(Path::new("<stdout>"), e))
        }
    }
}

/// Serializes, re-reads and re-verifies before writing anything.
fn emit_certificate(cert: &WeightedSosCert, output: Option<&Path>) -> Result<(), Failure> {
    let body = certificate::serialize(cert);
    let reread = certificate::parse(&body)?;
    if !verify_exact(&reread).ok {
        return Err(Failure {
            code: EXIT_VERIFY_FAILED,
            message: "internal error: certificate failed exact verification".into(),
        });
    }
    emit(output, &body)
}

fn run_command(cmd: Command) -> Result<(), Failure> {
    match cmd {
        Command::Sos1 {
            input,
            output,
            max_refine_bits,
        } => {
            let f = parse_poly_file(&input)?;
            let cert = flatten_nested(&univsos1_run(&f, max_refine_bits)?)?;
            emit_certificate(&cert, output.as_deref())
        }
        Command::Sos2 {
            input,
            output,
            eps,
            delta,
            max_doublings,
        } => {
            let f = parse_poly_file(&input)?;
            let cert = univsos2_run(&f, eps.as_ref(), delta, max_doublings)?;
            emit_certificate(&cert, output.as_deref())
        }
        Command::Verify { input, mode } => {
            let body = fs::read_to_string(&input).map_err(|e| io_failure(&input, e))?;
            let cert = certificate::parse(&body)?;
            let report = match mode {
                Mode::Exact => verify_exact(&cert),
                Mode::Eval => verify_eval_default(&cert),
            };
            if report.ok {
                println!("ok");
                Ok(())
            } else {
                Err(Failure {
                    code: EXIT_VERIFY_FAILED,
                    message: format!("verification failed: {:?}", report.detail),
                })
            }
        }
        Command::Transform { input, lo, hi, output } => {
            let p = parse_poly_file(&input)?;
            let q = interval_to_line(&p, &lo, &hi)?;
            emit(output.as_deref(), &text::format_poly(&q))
        }
        Command::Bench {
            family,
            min,
            max,
            step,
            algo,
            m,
            csv,
            timeout_secs,
            dump_dir,
        } => {
            let ns = bench::n_range(min, max, step)?;
            if let Some(dir) = &dump_dir {
                fs::create_dir_all(dir).map_err(|e| io_failure(dir, e))?;
                for &n in &ns {
                    let f = bench::gen_family(family, n, m)?;
                    let path = dir.join(format!("{family}-{n}.poly"));
                    fs::write(&path, text::format_poly(&f)).map_err(|e| io_failure(&path, e))?;
                }
            }
            let records = bench::run_bench(family, &ns, m, algo, Duration::from_secs(timeout_secs))?;
            let body = if csv {
                bench::to_csv(&records)
            } else {
                table(&records)
            };
            emit(None, &body)
        }
    }
}

fn table(records: &[bench::BenchRecord]) -> String {
    let mut out = format!(
        "{:<14} {:>6} {:>4} {:>5} {:>8} {:>12} {:>12} {:>12}  {}\n",
        "family", "n", "m", "algo", "tau_in", "tau_cert", "compute_ms", "verify_ms", "status"
    );
    for r in records {
        out.push_str(&format!(
            "{:<14} {:>6} {:>4} {:>5} {:>8} {:>12} {:>12.3} {:>12.3}  {}\n",
            r.family.name(),
            r.n,
            r.m.map(|m| m.to_string()).unwrap_or_else(|| "-".into()),
            r.algo.number(),
            r.tau_in,
            r.tau_cert_total,
            r.t_compute_ms,
            r.t_verify_ms,
            r.status.name()
        ));
    }
    out
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_BAD_INPUT } else { EXIT_OK };
        }
    };
    match run_command(cli.command) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            eprintln!("univsos: {}", f.message);
            f.code
        }
    }
}
