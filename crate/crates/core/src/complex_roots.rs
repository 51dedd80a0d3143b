//! Approximate complex roots of rational polynomials.
//!
//! Roots are found by Aberth-Ehrlich simultaneous iteration: a double
//! precision pass when the coefficients fit, then polishing in software
//! floating point, doubling the precision until the corrections fall below
//! `2^-(delta+2)` relative at no less than `delta + 32` bits. Results
//! are rounded to dyadic rationals. Nothing downstream trusts the accuracy of
//! these roots; callers check what they build from them exactly.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::bigfloat::{BigComplex, BigFloat};
use crate::error::{Error, Result};
use crate::poly::{pow2, Rational, RationalPoly};
use crate::squarefree::is_square_free;

/// Complex number with dyadic rational parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DyadicComplex {
    pub re: Rational,
    pub im: Rational,
}

impl DyadicComplex {
    pub fn new(re: Rational, im: Rational) -> Self {
        DyadicComplex { re, im }
    }

    pub fn conj(&self) -> Self {
        DyadicComplex::new(self.re.clone(), -self.im.clone())
    }

    /// Squared modulus of `self - other`, exactly.
    pub fn dist_sq(&self, other: &DyadicComplex) -> Rational {
        let dr = &self.re - &other.re;
        let di = &self.im - &other.im;
        &dr * &dr + &di * &di
    }
}

/// All roots of a polynomial, approximated at precision `precision_bits`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootApproxSet {
    pub roots: Vec<DyadicComplex>,
    pub precision_bits: u64,
    /// Upper bound on `|p(z)|` over the returned roots, computed exactly.
    pub residual_bound: Rational,
}

/// Rounds `q` to the nearest multiple of `2^-bits`; ties go toward zero.
pub fn round_to_bits(q: &Rational, bits: u64) -> Rational {
    let scale = BigInt::one() << bits as usize;
    let scaled = q * Rational::from_integer(scale.clone());
    let fl = scaled.floor();
    let frac = &scaled - &fl;
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let n = match frac.cmp(&half) {
        Ordering::Less => fl,
        Ordering::Greater => fl + Rational::one(),
        Ordering::Equal if q.is_negative() => fl + Rational::one(),
        Ordering::Equal => fl,
    };
    Rational::new(n.to_integer(), scale)
}

/// Rounds both parts of `(re, im)` to multiples of `2^-bits`.
pub fn round_dyadic(re: &Rational, im: &Rational, bits: u64) -> DyadicComplex {
    DyadicComplex::new(round_to_bits(re, bits), round_to_bits(im, bits))
}

fn iteration_cap(deg: usize) -> usize {
    64 * deg
}

/// Deterministic starting points on a circle of the given radius.
fn initial_points(deg: usize, radius: f64) -> Vec<Complex64> {
    (0..deg)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / deg as f64 + 0.4;
            Complex64::from_polar(radius, theta)
        })
        .collect()
}

/// Fujiwara bound `2 max |a_{n-i}|^(1/i)` for a monic polynomial, in
/// floating point. Much tighter than the Cauchy bound when the coefficients
/// are large, which keeps the double precision pass in range.
fn fujiwara_bound(monic: &RationalPoly) -> f64 {
    let n = monic.degree().unwrap_or(0);
    let mut best = 0f64;
    for i in 1..=n {
        let c = monic.coeff(n - i).abs();
        if c.is_zero() {
            continue;
        }
        let log2 = c.numer().bits() as f64 - c.denom().bits() as f64 + 1.0;
        let mut term = (log2 / i as f64).exp2();
        if i == n {
            term /= 2f64.powf(1.0 / n as f64);
        }
        best = best.max(term);
    }
    (2.0 * best).max(1.0)
}

fn horner_f64(c: &[f64], z: Complex64) -> Complex64 {
    c.iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a)
}

/// Double-precision Aberth pass; `None` if anything stops being finite.
fn aberth_f64(monic: &[f64], start: Vec<Complex64>) -> Option<Vec<Complex64>> {
    let deg = monic.len() - 1;
    let dc: Vec<f64> = (1..=deg).map(|i| monic[i] * i as f64).collect();
    let mut z = start;
    for _ in 0..iteration_cap(deg) {
        let mut done = true;
        for i in 0..deg {
            let p = horner_f64(monic, z[i]);
            let dp = horner_f64(&dc, z[i]);
            if p == Complex64::new(0.0, 0.0) {
                continue;
            }
            let n = p / dp;
            let s: Complex64 = (0..deg)
                .filter(|&j| j != i)
                .map(|j| (z[i] - z[j]).inv())
                .sum();
            let w = n / (Complex64::new(1.0, 0.0) - n * s);
            if !w.is_finite() {
                return None;
            }
            z[i] -= w;
            if w.norm() > 1e-14 * z[i].norm() {
                done = false;
            }
        }
        if done {
            break;
        }
    }
    z.iter().all(|v| v.is_finite()).then_some(z)
}

fn horner_big(c: &[BigFloat], z: &BigComplex, prec: u64) -> BigComplex {
    let mut acc = BigComplex::zero();
    for a in c.iter().rev() {
        acc = acc.mul(z, prec);
        acc.re = acc.re.add(a, prec);
    }
    acc
}

/// Outcome of one precision stage.
enum Stage {
    Converged,
    Stalled,
    OutOfBudget,
}

/// Runs sweeps at `prec` until every correction is below `2^-tol` relative
/// to its root, or until the corrections stop shrinking.
fn aberth_big(
    c: &[BigFloat],
    dc: &[BigFloat],
    z: &mut [BigComplex],
    prec: u64,
    tol: i64,
    budget: &mut usize,
) -> Stage {
    let deg = z.len();
    let one = BigComplex::real(BigFloat::from_rational(&Rational::one(), prec));
    let mut prev_worst = i64::MIN;
    let mut best = i64::MIN;
    let mut since_best = 0;
    loop {
        if *budget == 0 {
            return Stage::OutOfBudget;
        }
        *budget -= 1;
        // smallest number of bits by which a correction undercuts its root
        let mut worst = i64::MAX;
        for i in 0..deg {
            let p = horner_big(c, &z[i], prec);
            if p.is_zero() {
                continue;
            }
            let dp = horner_big(dc, &z[i], prec);
            let mut s = BigComplex::zero();
            let mut collided = false;
            for j in 0..deg {
                if j == i {
                    continue;
                }
                let d = z[i].sub(&z[j], prec);
                if d.is_zero() {
                    collided = true;
                    break;
                }
                s = s.add(&one.div(&d, prec), prec);
            }
            if dp.is_zero() || collided {
                // nudge off the degenerate point and try again next sweep
                let bump = BigFloat::from_rational(&pow2(-(prec as i64) / 4), prec);
                z[i].im = z[i].im.add(&bump, prec);
                worst = i64::MIN;
                continue;
            }
            let n = p.div(&dp, prec);
            let den = one.sub(&n.mul(&s, prec), prec);
            let w = if den.is_zero() { n } else { n.div(&den, prec) };
            z[i] = z[i].sub(&w, prec);
            let gap = match (w.mag(), z[i].mag()) {
                (None, _) => i64::MAX,
                (Some(mw), Some(mz)) => mz - mw - 2,
                (Some(mw), None) => -mw,
            };
            worst = worst.min(gap);
        }
        if worst >= tol {
            return Stage::Converged;
        }
        // Stalled: locally convergent but no longer improving, or no
        // progress at all for a while.
        if worst > best {
            best = worst;
            since_best = 0;
        } else {
            since_best += 1;
        }
        let local = worst >= prec as i64 / 4;
        if (local && worst <= prev_worst) || worst >= prec as i64 - 8 || (best >= 8 && since_best >= 10) {
            return Stage::Stalled;
        }
        prev_worst = worst;
    }
}

/// Exact `|Re p(z)| + |Im p(z)|` at a dyadic point.
fn residual_at(ints: &[BigInt], m: &BigInt, z: &DyadicComplex) -> Rational {
    let s = (z.re.denom().bits() - 1).max(z.im.denom().bits() - 1) as usize;
    let scale = BigInt::one() << s;
    let a = z.re.numer() * (&scale / z.re.denom());
    let b = z.im.numer() * (&scale / z.im.denom());
    let n = ints.len() - 1;
    let mut re = ints[n].clone();
    let mut im = BigInt::zero();
    let mut sp = BigInt::one();
    for c in ints.iter().rev().skip(1) {
        sp <<= s;
        let nre = &re * &a - &im * &b + c * &sp;
        let nim = &re * &b + &im * &a;
        re = nre;
        im = nim;
    }
    let den = m * (BigInt::one() << (s * n));
    Rational::new(re.abs() + im.abs(), den)
}

/// Approximates every complex root of the square-free polynomial `p`.
pub fn approx_complex_roots(p: &RationalPoly, delta: u64) -> Result<RootApproxSet> {
    let deg = p.try_degree()?;
    if deg == 0 {
        return Err(Error::ConstantPolynomial);
    }
    if !is_square_free(p) {
        return Err(Error::NotSquareFree);
    }
    let monic = p.monic();
    let target_prec = (delta + 32).max(64);
    let target_tol = delta as i64 + 2;

    let radius = fujiwara_bound(&monic);
    let mf: Vec<f64> = monic
        .coeffs()
        .iter()
        .map(|c| c.to_f64().unwrap_or(f64::INFINITY))
        .collect();
    let start = if radius.is_finite() && mf.iter().all(|c| c.is_finite()) {
        aberth_f64(&mf, initial_points(deg, radius))
    } else {
        None
    };
    let start = start.unwrap_or_else(|| initial_points(deg, radius.min(1e300)));

    let mut z: Vec<BigComplex> = start
        .iter()
        .map(|c| BigComplex::new(BigFloat::from_f64(c.re), BigFloat::from_f64(c.im)))
        .collect();
    let mut budget = iteration_cap(deg);
    let mut prec = 64u64;
    loop {
        let c: Vec<BigFloat> = monic
            .coeffs()
            .iter()
            .map(|q| BigFloat::from_rational(q, prec))
            .collect();
        let dc: Vec<BigFloat> = monic
            .derivative()
            .coeffs()
            .iter()
            .map(|q| BigFloat::from_rational(q, prec))
            .collect();
        match aberth_big(&c, &dc, &mut z, prec, target_tol, &mut budget) {
            Stage::Converged if prec >= target_prec => break,
            Stage::OutOfBudget => return Err(Error::ConvergenceFailure(delta)),
            // ill-conditioned roots may need more than the guard bits
            _ => prec *= 2,
        }
    }

    let roots: Vec<DyadicComplex> = z
        .iter()
        .map(|r| {
            let extra = r.mag().map(|m| (-m).max(0) as u64).unwrap_or(0);
            round_dyadic(&r.re.to_rational(), &r.im.to_rational(), delta + 2 + extra)
        })
        .collect();
    let m = p.denominator_lcm();
    let ints = p.integer_multiple();
    let residual_bound = roots
        .iter()
        .map(|r| residual_at(&ints, &m, r))
        .max()
        .unwrap_or_else(Rational::zero);
    Ok(RootApproxSet {
        roots,
        precision_bits: delta,
        residual_bound,
    })
}

/// Picks one root from each conjugate pair, the one with positive imaginary
/// part. Fails if a root sits on the real axis or has no partner within
/// `2^(-delta/2)`.
pub fn pair_conjugates(rs: &RootApproxSet) -> Result<Vec<DyadicComplex>> {
    let mut upper: Vec<&DyadicComplex> = Vec::new();
    let mut lower: Vec<&DyadicComplex> = Vec::new();
    for r in &rs.roots {
        match r.im.cmp(&Rational::zero()) {
            Ordering::Greater => upper.push(r),
            Ordering::Less => lower.push(r),
            Ordering::Equal => return Err(Error::UnpairedRoot),
        }
    }
    if upper.len() != lower.len() {
        return Err(Error::UnpairedRoot);
    }
    upper.sort_by(|a, b| a.re.cmp(&b.re).then_with(|| a.im.cmp(&b.im)));
    lower.sort_by(|a, b| a.re.cmp(&b.re).then_with(|| a.im.abs().cmp(&b.im.abs())));
    let tol_sq = pow2(-(rs.precision_bits as i64));
    let mut used = vec![false; lower.len()];
    let mut out = Vec::with_capacity(upper.len());
    for u in upper {
        let target = u.conj();
        let best = lower
            .iter()
            .enumerate()
            .filter(|(j, _)| !used[*j])
            .map(|(j, l)| (l.dist_sq(&target), j))
            .min_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)))
            .ok_or(Error::UnpairedRoot)?;
        if best.0 > tol_sq {
            return Err(Error::UnpairedRoot);
        }
        used[best.1] = true;
        out.push(u.clone());
    }
    Ok(out)
}

/// Exact expansion of `prod (X - z_j)` as `(re, im)` coefficient vectors.
pub fn expand_linear_factors(roots: &[DyadicComplex]) -> (RationalPoly, RationalPoly) {
    let mut re = vec![Rational::one()];
    let mut im = vec![Rational::zero()];
    for z in roots {
        let n = re.len();
        let mut nre = vec![Rational::zero(); n + 1];
        let mut nim = vec![Rational::zero(); n + 1];
        for j in 0..=n {
            let (pr, pi) = if j > 0 {
                (re[j - 1].clone(), im[j - 1].clone())
            } else {
                (Rational::zero(), Rational::zero())
            };
            if j < n {
                nre[j] = pr - &z.re * &re[j] + &z.im * &im[j];
                nim[j] = pi - &z.re * &im[j] - &z.im * &re[j];
            } else {
                nre[j] = pr;
                nim[j] = pi;
            }
        }
        re = nre;
        im = nim;
    }
    (RationalPoly::new(re), RationalPoly::new(im))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, rat};
    use crate::squarefree::cauchy_bound;

    fn p(c: &[i64]) -> RationalPoly {
        RationalPoly::from_ints(c)
    }

    #[test]
    fn rounding_rules() {
        assert_eq!(round_to_bits(&rat(1, 3), 2), rat(1, 4));
        assert_eq!(round_to_bits(&rat(-5, 16), 2), rat(-1, 4));
        assert_eq!(round_to_bits(&rat(5, 16), 2), rat(1, 4));
        assert_eq!(round_to_bits(&rat(3, 8), 3), rat(3, 8));
        assert_eq!(round_to_bits(&rat(3, 8), 10), rat(3, 8));
        assert_eq!(round_to_bits(&rat(-2, 3), 1), rat(-1, 2));
    }

    #[test]
    fn unit_circle_quadratic_is_exact() {
        let rs = approx_complex_roots(&p(&[1, 0, 1]), 30).unwrap();
        assert_eq!(rs.residual_bound, int(0));
        let mut ims: Vec<Rational> = rs.roots.iter().map(|r| r.im.clone()).collect();
        ims.sort();
        assert_eq!(ims, vec![int(-1), int(1)]);
        assert!(rs.roots.iter().all(|r| r.re.is_zero()));
        let reps = pair_conjugates(&rs).unwrap();
        assert_eq!(reps, vec![DyadicComplex::new(int(0), int(1))]);
    }

    #[test]
    fn sqrt_two_within_tolerance() {
        let rs = approx_complex_roots(&p(&[-2, 0, 1]), 10).unwrap();
        for r in &rs.roots {
            assert!(r.im.abs() <= pow2(-10));
            // |re^2 - 2| = |re - s||re + s| with |re + s| about 2.8
            let err = (&r.re * &r.re - int(2)).abs();
            assert!(err <= pow2(-10) * int(4) * int(2), "{err}");
        }
        assert!(matches!(pair_conjugates(&rs), Err(Error::UnpairedRoot)));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(approx_complex_roots(&p(&[1, 2, 1]), 10), Err(Error::NotSquareFree)));
        assert!(matches!(approx_complex_roots(&p(&[3]), 10), Err(Error::ConstantPolynomial)));
        assert!(matches!(approx_complex_roots(&RationalPoly::zero(), 10), Err(Error::ZeroPolynomial)));
    }

    #[test]
    fn pairing_two_pairs_and_unpaired_construction() {
        let rs = approx_complex_roots(&p(&[4, 0, 5, 0, 1]), 40).unwrap();
        let reps = pair_conjugates(&rs).unwrap();
        assert_eq!(reps.len(), 2);
        assert!(reps.iter().all(|r| r.im > int(0)));

        // roots ±1 ± 2^(-d-2) i where the lower partner of +1 drifted upward
        let d = 12;
        let e = pow2(-(d as i64) - 2);
        let bad = RootApproxSet {
            roots: vec![
                DyadicComplex::new(int(1), e.clone()),
                DyadicComplex::new(int(1), e.clone()),
                DyadicComplex::new(int(-1), e.clone()),
                DyadicComplex::new(int(-1), -e.clone()),
            ],
            precision_bits: d,
            residual_bound: int(0),
        };
        assert!(matches!(pair_conjugates(&bad), Err(Error::UnpairedRoot)));
    }

    #[test]
    fn vieta_sum_and_residual_shrink() {
        let q = p(&[7, -3, 5, 1, 2, -1, 3]);
        let a = approx_complex_roots(&q, 32).unwrap();
        let b = approx_complex_roots(&q, 64).unwrap();
        assert!(b.residual_bound < a.residual_bound);
        let (sr, si) = a
            .roots
            .iter()
            .fold((int(0), int(0)), |(x, y), r| (x + &r.re, y + &r.im));
        let expect = -q.coeff(5) / q.coeff(6);
        let bound = int(6) * pow2(-30) * cauchy_bound(&q).unwrap();
        assert!((sr - expect).abs() <= bound);
        assert!(si.abs() <= bound);
    }

    #[test]
    fn expansion_of_known_roots() {
        let (re, im) = expand_linear_factors(&[
            DyadicComplex::new(int(0), int(1)),
            DyadicComplex::new(int(0), int(2)),
        ]);
        assert_eq!(re, p(&[-2, 0, 1]));
        assert_eq!(im, p(&[0, -3]));
    }

    #[test]
    fn product_reconstruction_improves_with_precision() {
        let q = p(&[5, 1, 3, -2, 4, 0, 1]);
        let mut prev: Option<Rational> = None;
        for delta in [16u64, 32, 64, 128] {
            let rs = approx_complex_roots(&q, delta).unwrap();
            let (re, _) = expand_linear_factors(&rs.roots);
            let diff = &re - &q;
            let dist = diff.coeffs().iter().map(|c| c.abs()).max().unwrap_or_else(|| int(0));
            if let Some(pv) = &prev {
                assert!(dist <= *pv);
            }
            prev = Some(dist);
        }
    }
}
