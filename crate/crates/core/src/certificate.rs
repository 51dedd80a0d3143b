//! Weighted SOS certificates `target = sum weight_i * poly_i^2`.
//!
//! Certificates are checked in exact rational arithmetic, either by full
//! expansion or by evaluation at enough distinct points. The text format is
//!
//! ```text
//! univsos-cert v1
//! target: poly v1 deg 2 1 0 1
//! terms: 2
//! 1 | poly v1 deg 1 0 1
//! 1 | poly v1 deg 0 1
//! ```

use std::collections::HashSet;
use std::fmt::Write as _;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{int, BitsizeReport, Rational, RationalPoly};
use crate::text::{self, parse_error, tokens};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SosTerm {
    pub weight: Rational,
    pub poly: RationalPoly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedSosCert {
    pub target: RationalPoly,
    pub terms: Vec<SosTerm>,
}

impl WeightedSosCert {
    pub fn new(target: RationalPoly) -> Self {
        WeightedSosCert {
            target,
            terms: Vec::new(),
        }
    }

    /// Appends a term unless it contributes nothing (zero weight or zero poly).
    pub fn push(&mut self, weight: Rational, poly: RationalPoly) {
        if weight.is_zero() || poly.is_zero() {
            return;
        }
        self.terms.push(SosTerm { weight, poly });
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `sum weight_i * poly_i^2`, expanded.
    pub fn expand(&self) -> RationalPoly {
        self.terms.iter().fold(RationalPoly::zero(), |acc, t| {
            &acc + &t.poly.square().scale(&t.weight)
        })
    }

    /// `sum weight_i * poly_i(x)^2`.
    pub fn evaluate(&self, x: &Rational) -> Rational {
        self.terms.iter().fold(Rational::zero(), |acc, t| {
            let v = t.poly.evaluate(x);
            acc + &t.weight * &v * &v
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerificationMode {
    Exact,
    Eval,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FailureDetail {
    /// Term index carrying a negative weight.
    NegativeWeight(usize),
    /// First coefficient index where the expansion differs from the target.
    Coefficient(usize),
    /// First evaluation point where the two sides differ.
    Point(Rational),
    /// A term squares to a higher degree than the target; index of that term.
    DegreeExceeded(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub ok: bool,
    pub mode: VerificationMode,
    pub detail: Option<FailureDetail>,
}

impl VerificationReport {
    fn pass(mode: VerificationMode) -> Self {
        VerificationReport {
            ok: true,
            mode,
            detail: None,
        }
    }

    fn fail(mode: VerificationMode, detail: FailureDetail) -> Self {
        VerificationReport {
            ok: false,
            mode,
            detail: Some(detail),
        }
    }
}

fn negative_weight(c: &WeightedSosCert) -> Option<usize> {
    c.terms.iter().position(|t| t.weight.is_negative())
}

/// Expands the certificate and compares it with the target coefficientwise.
pub fn verify_exact(c: &WeightedSosCert) -> VerificationReport {
    let mode = VerificationMode::Exact;
    if let Some(i) = negative_weight(c) {
        return VerificationReport::fail(mode, FailureDetail::NegativeWeight(i));
    }
    let lhs = c.expand();
    let n = lhs.coeffs().len().max(c.target.coeffs().len());
    match (0..n).find(|&i| lhs.coeff(i) != c.target.coeff(i)) {
        Some(i) => VerificationReport::fail(mode, FailureDetail::Coefficient(i)),
        None => VerificationReport::pass(mode),
    }
}

/// `0, 1, -1, 2, -2, ...`: the `count` integers of smallest magnitude.
pub fn default_eval_points(count: usize) -> Vec<Rational> {
    (0..count)
        .map(|i| {
            let k = i.div_ceil(2) as i64;
            if i % 2 == 1 {
                int(k)
            } else {
                int(-k)
            }
        })
        .collect()
}

/// Checks the identity at `points`, which must be distinct and number at
/// least `deg(target) + 1`.
///
/// With nonnegative weights the leading coefficients of the squares cannot
/// cancel, so a term whose square exceeds the target degree is rejected
/// structurally; the remaining identity has degree at most `deg(target)`
/// and is decided by the evaluations.
pub fn verify_eval(c: &WeightedSosCert, points: &[Rational]) -> Result<VerificationReport> {
    let target_degree = c.target.degree().unwrap_or(0);
    let needed = target_degree + 1;
    if points.len() < needed {
        return Err(Error::InsufficientPoints {
            needed,
            got: points.len(),
        });
    }
    let mut seen = HashSet::new();
    for x in points {
        if !seen.insert(x) {
            return Err(Error::DuplicatePoint(x.to_string()));
        }
    }
    let mode = VerificationMode::Eval;
    if let Some(i) = negative_weight(c) {
        return Ok(VerificationReport::fail(mode, FailureDetail::NegativeWeight(i)));
    }
    let too_high = c.terms.iter().position(|t| {
        let d = t.poly.degree().unwrap_or(0);
        c.target.is_zero() || 2 * d > target_degree
    });
    if let Some(i) = too_high {
        return Ok(VerificationReport::fail(mode, FailureDetail::DegreeExceeded(i)));
    }
    for x in points {
        if c.evaluate(x) != c.target.evaluate(x) {
            return Ok(VerificationReport::fail(mode, FailureDetail::Point(x.clone())));
        }
    }
    Ok(VerificationReport::pass(mode))
}

/// `verify_eval` at the default points `0, 1, -1, ...`.
pub fn verify_eval_default(c: &WeightedSosCert) -> VerificationReport {
    let n = c.target.degree().unwrap_or(0) + 1;
    verify_eval(c, &default_eval_points(n)).expect("default points are distinct and sufficient")
}

/// Sizes of all weights and term coefficients (the target is not counted).
pub fn certificate_bitsize(c: &WeightedSosCert) -> BitsizeReport {
    let mut report = BitsizeReport::default();
    for t in &c.terms {
        report.absorb(&t.weight);
        for coeff in t.poly.coeffs() {
            report.absorb(coeff);
        }
    }
    report
}

const MAGIC: &str = "univsos-cert v1";

pub fn serialize(c: &WeightedSosCert) -> String {
    let mut out = String::new();
    writeln!(out, "{MAGIC}").unwrap();
    writeln!(out, "target: {}", text::format_poly_inline(&c.target)).unwrap();
    writeln!(out, "terms: {}", c.terms.len()).unwrap();
    for t in &c.terms {
        writeln!(out, "{} | {}", t.weight, text::format_poly_inline(&t.poly)).unwrap();
    }
    out
}

pub fn parse(input: &str) -> Result<WeightedSosCert> {
    let lines: Vec<&str> = input.lines().collect();
    let line_at = |i: usize| -> Result<&str> {
        lines
            .get(i)
            .copied()
            .ok_or_else(|| parse_error(i + 1, 1, "unexpected end of input"))
    };

    let magic = line_at(0)?;
    if magic.trim() != MAGIC {
        return Err(parse_error(1, 1, format!("expected `{MAGIC}`")));
    }

    let target_line = line_at(1)?;
    let toks = tokens(target_line);
    if toks.first().map(|t| t.1) != Some("target:") {
        return Err(parse_error(2, 1, "expected `target:`"));
    }
    let target = text::parse_poly_inline(2, &toks[1..], target_line.len() + 1)?;

    let count_line = line_at(2)?;
    let toks = tokens(count_line);
    let count = match toks.as_slice() {
        [(_, "terms:"), (col, n)] => n
            .parse::<usize>()
            .map_err(|_| parse_error(3, *col, format!("bad term count `{n}`")))?,
        _ => return Err(parse_error(3, 1, "expected `terms: <m>`")),
    };

    let mut terms = Vec::with_capacity(count);
    for k in 0..count {
        let ln = 3 + k;
        let line = line_at(ln)?;
        let toks = tokens(line);
        if toks.len() < 2 || toks[1].1 != "|" {
            return Err(parse_error(ln + 1, 1, "expected `<weight> | poly ...`"));
        }
        let weight = text::rational_at(ln + 1, toks[0])?;
        let poly = text::parse_poly_inline(ln + 1, &toks[2..], line.len() + 1)?;
        terms.push(SosTerm { weight, poly });
    }
    if let Some((i, l)) = lines
        .iter()
        .enumerate()
        .skip(3 + count)
        .find(|(_, l)| !l.trim().is_empty())
    {
        return Err(parse_error(i + 1, 1, format!("unexpected trailing line `{}`", l.trim())));
    }
    Ok(WeightedSosCert { target, terms })
}
