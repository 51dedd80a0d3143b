//! Perturbation-based decomposition.
//!
//! With `f = p h^2` and `p > 0`, pick `eps` so that
//! `p_eps = p - eps (1 + X^2 + ... + X^2k)` stays positive, write
//! `p_eps ~ l s1^2 + l s2^2` from its approximate complex roots, and absorb the
//! exact remainder `u` into `eps (1 + ... + X^2k)`, which is possible once `u`
//! is small enough. Only the final absorption needs exact checks; the root
//! approximations are allowed to be poor, and the precision is doubled until
//! the weights come out nonnegative.

use num_traits::{One, Signed, Zero};

use crate::certificate::WeightedSosCert;
use crate::complex_roots::{approx_complex_roots, expand_linear_factors, pair_conjugates, round_to_bits};
use crate::error::{Error, Result};
use crate::poly::{int, rat, Rational, RationalPoly};
use crate::real_roots::has_real_roots;
use crate::squarefree::{is_square_free, square_split};

pub const DEFAULT_DELTA: u64 = 64;
pub const DEFAULT_MAX_DOUBLINGS: u32 = 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerturbationState {
    /// Square-free part.
    pub p: RationalPoly,
    /// Square part: the input is `p * h^2`.
    pub h: RationalPoly,
    pub eps: Rational,
    pub k: usize,
    pub p_eps: RationalPoly,
}

/// `p_eps ~ ell * (s1^2 + s2^2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoSquares {
    pub s1: RationalPoly,
    pub s2: RationalPoly,
    pub ell: Rational,
}

/// `u = p_eps - ell s1^2 - ell s2^2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Remainder {
    pub u: RationalPoly,
}

impl Remainder {
    /// `u_j`, zero outside the coefficient range.
    pub fn coeff(&self, j: i64) -> Rational {
        if j < 0 {
            Rational::zero()
        } else {
            self.u.coeff(j as usize)
        }
    }
}

/// `1 + X^2 + ... + X^2k`.
pub fn even_power_sum(k: usize) -> RationalPoly {
    let mut c = vec![Rational::zero(); 2 * k + 1];
    for i in 0..=k {
        c[2 * i] = Rational::one();
    }
    RationalPoly::new(c)
}

fn perturb(p: &RationalPoly, eps: &Rational, k: usize) -> RationalPoly {
    p - &even_power_sum(k).scale(eps)
}

/// Halves `eps0` until `p_eps` has no real root, then halves once more.
/// The returned state carries `h = 1`.
pub fn find_epsilon(p: &RationalPoly, eps0: &Rational) -> Result<PerturbationState> {
    let n = p.try_degree()?;
    let lc = p.leading_or_zero();
    if n < 2 || n % 2 == 1 || !lc.is_positive() {
        return Err(Error::NotPositive);
    }
    if !is_square_free(p) {
        return Err(Error::NotSquareFree);
    }
    if has_real_roots(p)? {
        return Err(Error::NotPositive);
    }
    if !eps0.is_positive() || *eps0 >= lc {
        return Err(Error::BadParameters(format!(
            "eps must lie strictly between 0 and the leading coefficient {lc}"
        )));
    }
    let k = n / 2;
    let mut eps = eps0.clone();
    while has_real_roots(&perturb(p, &eps, k))? {
        eps /= int(2);
    }
    eps /= int(2);
    let p_eps = perturb(p, &eps, k);
    Ok(PerturbationState {
        p: p.clone(),
        h: RationalPoly::one(),
        eps,
        k,
        p_eps,
    })
}

/// Two squares from the upper half-plane roots of `p_eps`, rounded to
/// `delta` fractional bits; `s1` keeps its exact leading 1.
pub fn sum_two_squares(ps: &PerturbationState, delta: u64) -> Result<TwoSquares> {
    let roots = approx_complex_roots(&ps.p_eps, delta)?;
    let upper = pair_conjugates(&roots)?;
    let (re, im) = expand_linear_factors(&upper);
    let k = ps.k;
    let round = |c: &Rational| round_to_bits(c, delta);
    let mut s1: Vec<Rational> = re.coeffs().iter().take(k).map(round).collect();
    s1.resize(k, Rational::zero());
    s1.push(Rational::one());
    let s2: Vec<Rational> = im.coeffs().iter().take(k).map(round).collect();
    Ok(TwoSquares {
        s1: RationalPoly::new(s1),
        s2: RationalPoly::new(s2),
        ell: ps.p_eps.leading_or_zero(),
    })
}

pub fn compute_remainder(ps: &PerturbationState, ts: &TwoSquares) -> Result<Remainder> {
    let approx = &ts.s1.square() + &ts.s2.square();
    let u = &ps.p_eps - &approx.scale(&ts.ell);
    if u.degree().is_some_and(|d| d + 1 > 2 * ps.k) {
        return Err(Error::DegreeOverflow);
    }
    Ok(Remainder { u })
}

/// Weight of `X^i` in the absorbed family.
fn even_weight(eps: &Rational, r: &Remainder, i: i64, k: i64) -> Rational {
    let odd_here = if i < k { r.coeff(2 * i + 1).abs() / int(4) } else { Rational::zero() };
    let even = if i < k { r.coeff(2 * i) } else { Rational::zero() };
    eps - odd_here + even - r.coeff(2 * i - 1).abs()
}

/// True iff every even weight of the absorbed family is nonnegative.
pub fn weights_admissible(ps: &PerturbationState, r: &Remainder) -> bool {
    let k = ps.k as i64;
    (0..=k).all(|i| !even_weight(&ps.eps, r, i, k).is_negative())
}

/// Weighted squares summing to `eps (1 + ... + X^2k) + u`, zero weights dropped.
///
/// The even terms `X^i` come first, then the odd terms
/// `X^(i+1) + sgn(u_{2i+1})/2 X^i`.
pub fn perturbation_terms(eps: &Rational, r: &Remainder, k: usize) -> Vec<(Rational, RationalPoly)> {
    let ki = k as i64;
    let mut out = Vec::new();
    for i in 0..=k {
        let w = even_weight(eps, r, i as i64, ki);
        if !w.is_zero() {
            out.push((w, RationalPoly::monomial(Rational::one(), i)));
        }
    }
    for i in 0..k {
        let ui = r.coeff(2 * i as i64 + 1);
        if ui.is_zero() {
            continue;
        }
        let half = if ui.is_positive() { rat(1, 2) } else { rat(-1, 2) };
        let mut c = vec![Rational::zero(); i + 2];
        c[i] = half;
        c[i + 1] = Rational::one();
        out.push((ui.abs(), RationalPoly::new(c)));
    }
    out
}

pub fn assemble_certificate(
    ps: &PerturbationState,
    ts: &TwoSquares,
    r: &Remainder,
) -> Result<WeightedSosCert> {
    let target = &ps.p * &ps.h.square();
    let mut cert = WeightedSosCert::new(target);
    cert.push(ts.ell.clone(), &ps.h * &ts.s1);
    cert.push(ts.ell.clone(), &ps.h * &ts.s2);
    for (w, s) in perturbation_terms(&ps.eps, r, ps.k) {
        if w.is_negative() {
            return Err(Error::NegativeWeight);
        }
        cert.push(w, &ps.h * &s);
    }
    Ok(cert)
}

fn not_nonnegative(reason: &str) -> Error {
    Error::NotNonnegative(reason.to_string())
}

/// Full pipeline. `eps0` defaults to half the leading coefficient of the
/// square-free part.
pub fn univsos2_run(
    f: &RationalPoly,
    eps0: Option<&Rational>,
    delta0: u64,
    max_doublings: u32,
) -> Result<WeightedSosCert> {
    let n = f.try_degree()?;
    let lc = f.leading_or_zero();
    if lc.is_negative() {
        return Err(not_nonnegative("negative leading coefficient"));
    }
    if n % 2 == 1 {
        return Err(not_nonnegative("odd degree"));
    }
    if delta0 == 0 {
        return Err(Error::BadParameters("delta must be positive".into()));
    }
    let split = square_split(f)?;
    let (p, h) = (split.square_free_part, split.square_root_part);
    if p.is_constant() {
        // f = a h^2 with a > 0
        let mut cert = WeightedSosCert::new(f.clone());
        cert.push(p.leading_or_zero(), h);
        return Ok(cert);
    }
    let ell = p.leading_or_zero();
    let eps0 = eps0.cloned().unwrap_or_else(|| &ell / int(2));
    let mut ps = find_epsilon(&p, &eps0).map_err(|e| match e {
        Error::NotPositive => not_nonnegative("the square-free part has a real root"),
        other => other,
    })?;
    ps.h = h;

    let mut delta = delta0;
    for _ in 0..=max_doublings {
        match sum_two_squares(&ps, delta) {
            Ok(ts) => {
                let r = compute_remainder(&ps, &ts)?;
                if weights_admissible(&ps, &r) {
                    return assemble_certificate(&ps, &ts, &r);
                }
            }
            Err(Error::ConvergenceFailure(_)) | Err(Error::UnpairedRoot) => {}
            Err(e) => return Err(e),
        }
        delta = delta.saturating_mul(2);
    }
    Err(Error::PrecisionExhausted(format!(
        "remainder not absorbed after {max_doublings} precision doublings"
    )))
}

/// Runs with the default perturbation and precision schedule.
pub fn univsos2(f: &RationalPoly) -> Result<WeightedSosCert> {
    univsos2_run(f, None, DEFAULT_DELTA, DEFAULT_MAX_DOUBLINGS)
}
