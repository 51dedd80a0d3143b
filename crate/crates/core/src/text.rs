//! Plain-text polynomial format.
//!
//! ```text
//! poly v1 deg 2
//! 1 0 1
//! ```
//!
//! The header names the degree `n`; the second line lists `n + 1`
//! coefficients from degree 0 upwards, each `<num>` or `<num>/<den>` with
//! `den > 0`. Fractions are normalized on input (`2/4` reads as `1/2`).

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{Rational, RationalPoly};

pub(crate) fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Whitespace-separated tokens with their 1-based column.
pub(crate) fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

fn parse_int(tok: &str) -> Option<BigInt> {
    let digits = tok.strip_prefix('-').unwrap_or(tok);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    BigInt::from_str(tok).ok()
}

/// Parses a single rational token.
pub fn parse_rational(tok: &str) -> Option<Rational> {
    match tok.split_once('/') {
        None => parse_int(tok).map(Rational::from_integer),
        Some((n, d)) => {
            let n = parse_int(n)?;
            let d = parse_int(d)?;
            if !d.is_positive() || d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
    }
}

pub(crate) fn rational_at(line: usize, (col, tok): (usize, &str)) -> Result<Rational> {
    parse_rational(tok).ok_or_else(|| parse_error(line, col, format!("bad rational `{tok}`")))
}

/// Degree written in headers; the zero polynomial is written as degree 0.
fn header_degree(p: &RationalPoly) -> usize {
    p.degree().unwrap_or(0)
}

fn coeff_tokens(p: &RationalPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    p.coeffs()
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Two-line file form, newline terminated.
pub fn format_poly(p: &RationalPoly) -> String {
    format!("poly v1 deg {}\n{}\n", header_degree(p), coeff_tokens(p))
}

/// Single-line form used inside certificate files.
pub fn format_poly_inline(p: &RationalPoly) -> String {
    format!("poly v1 deg {} {}", header_degree(p), coeff_tokens(p))
}

/// Parses `poly v1 deg <n>` from the start of `toks`; returns the degree.
pub(crate) fn parse_header(line: usize, toks: &[(usize, &str)]) -> Result<usize> {
    let expect = ["poly", "v1", "deg"];
    for (i, want) in expect.iter().enumerate() {
        match toks.get(i) {
            Some((_, t)) if t == want => {}
            Some((c, t)) => {
                return Err(parse_error(line, *c, format!("expected `{want}`, found `{t}`")))
            }
            None => return Err(parse_error(line, 1, format!("missing `{want}` in header"))),
        }
    }
    match toks.get(3) {
        Some((c, t)) => t
            .parse::<usize>()
            .map_err(|_| parse_error(line, *c, format!("bad degree `{t}`"))),
        None => Err(parse_error(line, 1, "missing degree")),
    }
}

pub(crate) fn parse_coeffs(
    line: usize,
    toks: &[(usize, &str)],
    degree: usize,
    end_column: usize,
) -> Result<RationalPoly> {
    if toks.len() != degree + 1 {
        let col = toks.get(degree + 1).map(|t| t.0).unwrap_or(end_column);
        return Err(parse_error(
            line,
            col,
            format!("expected {} coefficients, found {}", degree + 1, toks.len()),
        ));
    }
    let coeffs = toks
        .iter()
        .map(|&t| rational_at(line, t))
        .collect::<Result<Vec<_>>>()?;
    Ok(RationalPoly::new(coeffs))
}

/// Parses the two-line polynomial file format.
pub fn parse_poly(text: &str) -> Result<RationalPoly> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (hl, header) = lines
        .next()
        .ok_or_else(|| parse_error(1, 1, "empty input"))?;
    let degree = parse_header(hl + 1, &tokens(header))?;
    let (cl, body) = lines
        .next()
        .ok_or_else(|| parse_error(hl + 2, 1, "missing coefficient line"))?;
    let p = parse_coeffs(cl + 1, &tokens(body), degree, body.len() + 1)?;
    if let Some((extra, l)) = lines.next() {
        return Err(parse_error(extra + 1, 1, format!("unexpected trailing line `{}`", l.trim())));
    }
    Ok(p)
}

/// Parses an inline `poly v1 deg <n> <coeffs...>` token run.
pub(crate) fn parse_poly_inline(line: usize, toks: &[(usize, &str)], end_column: usize) -> Result<RationalPoly> {
    let degree = parse_header(line, toks)?;
    parse_coeffs(line, &toks[4..], degree, end_column)
}
