//! SOS decomposition by successive quadratic under-approximations.
//!
//! While the polynomial has degree above two, either strip its square part
//! (`f = g h^2`, recurse on `g`), or, when `f` is square-free and hence
//! positive, pick a rational `t` near its smallest global minimizer and
//! subtract the tangent parabola
//!
//! ```text
//! f_t = f(t) + f'(t) (X - t) + f'(t)^2 / (4 f(t)) (X - t)^2
//! ```
//!
//! which touches `f` at `t`, so `f - f_t` gains the double root `t` and its
//! square part is nontrivial. The result is a Horner-like nesting
//! `f = q_1 + h_1^2 (q_2 + h_2^2 (q_3 + ...))`.

use std::collections::HashSet;

use num_traits::{Signed, Zero};

use crate::certificate::WeightedSosCert;
use crate::error::{Error, Result};
use crate::intpoly;
use crate::poly::{int, pow2, Rational, RationalPoly};
use crate::real_roots::{is_nonnegative, IsolatingInterval, RootIsolator};
use crate::squarefree::square_split;

/// Precision of the points used to rank local minima.
const RANK_BITS: i64 = 16;

pub const DEFAULT_MAX_REFINE_BITS: u32 = 4096;

/// Accepted pivot of one parabola step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParabResult {
    pub t: Rational,
    /// The quadratic (or constant) under-approximation touching `f` at `t`.
    pub f_t: RationalPoly,
    /// `(f - f_t) / (X - t)^2`, nonnegative on the real line.
    pub quotient: RationalPoly,
    /// Isolating interval of the critical point `t` was taken from.
    pub minimizer_interval: IsolatingInterval,
}

/// Nested certificate: entry `i` means `f_{i-1} = q_i + h_i^2 f_i`, the last
/// entry has `h = 0` and `q` equal to the final residual of degree at most two.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NestedSosCert {
    pub target: RationalPoly,
    pub h_list: Vec<RationalPoly>,
    pub q_list: Vec<RationalPoly>,
    /// Pivots chosen by the parabola steps, in order.
    pub pivots: Vec<Rational>,
}

impl NestedSosCert {
    pub fn len(&self) -> usize {
        self.h_list.len()
    }

    pub fn is_empty(&self) -> bool {
        self.h_list.is_empty()
    }

    /// Evaluates the nesting back into a polynomial.
    pub fn reconstruct(&self) -> RationalPoly {
        self.h_list
            .iter()
            .zip(&self.q_list)
            .rev()
            .fold(RationalPoly::zero(), |inner, (h, q)| q + &(&h.square() * &inner))
    }
}

/// Tangent parabola of `f` at `t`; `None` unless `f(t) > 0`.
pub fn tangent_parabola(f: &RationalPoly, t: &Rational) -> Option<RationalPoly> {
    let ft = f.evaluate(t);
    if !ft.is_positive() {
        return None;
    }
    let dft = f.derivative().evaluate(t);
    let c2 = &dft * &dft / (int(4) * &ft);
    // f(t) + f'(t) (X - t) + c2 (X - t)^2, expanded
    let coeffs = vec![
        &ft - &dft * t + &c2 * t * t,
        &dft - int(2) * &c2 * t,
        c2,
    ];
    Some(RationalPoly::new(coeffs))
}

/// Checks whether `t` is an admissible pivot: `f(t) > 0` and
/// `(f - f_t) / (X - t)^2` is nonnegative on the real line.
///
/// Returns `(f_t, quotient)` on success.
pub fn parab_at(f: &RationalPoly, t: &Rational) -> Option<(RationalPoly, RationalPoly)> {
    let f_t = tangent_parabola(f, t)?;
    let diff = f - &f_t;
    let (quotient, rem) = diff
        .div_rem(&RationalPoly::linear_root(t).square())
        .ok()?;
    if !rem.is_zero() {
        return None;
    }
    is_nonnegative(&quotient).then_some((f_t, quotient))
}

/// Simplest rational (smallest denominator, then smallest magnitude) in `[lo, hi]`.
pub fn simplest_between(lo: &Rational, hi: &Rational) -> Rational {
    debug_assert!(lo <= hi);
    if !lo.is_positive() && !hi.is_negative() {
        return Rational::zero();
    }
    if hi.is_negative() {
        return -simplest_between(&-hi, &-lo);
    }
    let fl = lo.floor();
    if fl == *lo {
        return fl;
    }
    let next = &fl + int(1);
    if next <= *hi {
        return next;
    }
    let inner = simplest_between(&(hi - &fl).recip(), &(lo - &fl).recip());
    fl + inner.recip()
}

struct MinimumCandidate {
    interval: IsolatingInterval,
}

impl MinimumCandidate {
    fn representative(&self) -> Rational {
        if self.interval.is_point() {
            self.interval.lo.clone()
        } else {
            simplest_between(&self.interval.lo, &self.interval.hi)
        }
    }

    fn proposals(&self) -> Vec<Rational> {
        if self.interval.is_point() {
            return vec![self.interval.lo.clone()];
        }
        let mut out = vec![self.representative()];
        for x in [&self.interval.lo, &self.interval.hi] {
            if !out.contains(x) {
                out.push(x.clone());
            }
        }
        out
    }
}

/// Finds an admissible pivot near the smallest global minimizer of a
/// positive square-free `f` of even degree.
///
/// Local minima of `f` are isolated as roots of `f'`. Each round ranks them by
/// the value of `f` near the critical point (within `2^-16`), then tries,
/// in order, that simplest rational and the two endpoints (or the exact
/// critical point for point intervals). Intervals are halved between rounds.
pub fn parab(f: &RationalPoly, max_refine_bits: u32) -> Result<ParabResult> {
    let n = f.try_degree()?;
    if n < 2 || n % 2 == 1 || f.leading_or_zero().is_negative() {
        return Err(Error::NotPositive);
    }
    let df = f.derivative();
    let df_int = intpoly::from_rational(&df);
    let iso = RootIsolator::new(&df)?;
    let mut minima: Vec<MinimumCandidate> = iso
        .isolate()
        .into_iter()
        .filter(|iv| {
            iv.is_point()
                || (intpoly::sign_at_rational(&df_int, &iv.lo).is_lt()
                    && intpoly::sign_at_rational(&df_int, &iv.hi).is_gt())
        })
        .map(|interval| MinimumCandidate { interval })
        .collect();
    if minima.is_empty() {
        return Err(Error::NotPositive);
    }
    let floor_width = pow2(-(max_refine_bits as i64));
    let mut tried: HashSet<Rational> = HashSet::new();

    let rank_width = pow2(-RANK_BITS);

    loop {
        // Points close to each local minimizer: used for ranking and for the
        // cheap refutation of candidate parabolas.
        let probes: Vec<Rational> = minima
            .iter()
            .map(|m| {
                let fine = iso.refine(&m.interval, &rank_width);
                if fine.is_point() {
                    fine.lo
                } else {
                    simplest_between(&fine.lo, &fine.hi)
                }
            })
            .collect();
        let mut order: Vec<(Rational, usize)> = probes
            .iter()
            .enumerate()
            .map(|(i, r)| (f.evaluate(r), i))
            .collect();
        if order.iter().any(|(v, _)| !v.is_positive()) {
            return Err(Error::NotPositive);
        }
        order.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| minima[a.1].interval.lo.cmp(&minima[b.1].interval.lo)));

        for &(_, idx) in &order {
            for t in minima[idx].proposals() {
                if !tried.insert(t.clone()) {
                    continue;
                }
                let Some(f_t) = tangent_parabola(f, &t) else {
                    return Err(Error::NotPositive);
                };
                // cheap refutation at the other candidates before the exact test
                if probes.iter().any(|x| f.evaluate(x) < f_t.evaluate(x)) {
                    continue;
                }
                if let Some((f_t, quotient)) = parab_at(f, &t) {
                    return Ok(ParabResult {
                        t,
                        f_t,
                        quotient,
                        minimizer_interval: minima[idx].interval.clone(),
                    });
                }
            }
        }

        let mut progressed = false;
        for m in &mut minima {
            if m.interval.is_point() {
                continue;
            }
            if m.interval.width() < floor_width {
                return Err(Error::PrecisionExhausted(format!(
                    "no admissible pivot found within 2^-{max_refine_bits}"
                )));
            }
            m.interval = iso.bisect(&m.interval);
            progressed = true;
        }
        if !progressed {
            // every critical point is exact and none is admissible: f is not positive
            return Err(Error::NotPositive);
        }
    }
}

fn not_nonnegative(reason: &str) -> Error {
    Error::NotNonnegative(reason.to_string())
}

/// Runs the nested decomposition on a nonnegative `f`.
pub fn univsos1_run(f: &RationalPoly, max_refine_bits: u32) -> Result<NestedSosCert> {
    let mut cert = NestedSosCert {
        target: f.clone(),
        h_list: Vec::new(),
        q_list: Vec::new(),
        pivots: Vec::new(),
    };
    let degree = f.degree().unwrap_or(0);
    if f.leading_or_zero().is_negative() {
        return Err(not_nonnegative("negative leading coefficient"));
    }
    if degree % 2 == 1 {
        return Err(not_nonnegative("odd degree"));
    }
    if !is_nonnegative(f) {
        return Err(not_nonnegative("it has a real root of odd multiplicity"));
    }

    let mut cur = f.clone();
    while cur.degree().unwrap_or(0) > 2 {
        let split = square_split(&cur)?;
        if !split.square_root_part.is_constant() {
            cert.h_list.push(split.square_root_part);
            cert.q_list.push(RationalPoly::zero());
            cur = split.square_free_part;
            continue;
        }
        let step = parab(&cur, max_refine_bits).map_err(|e| match e {
            Error::NotPositive => not_nonnegative("a square-free part has a real root"),
            other => other,
        })?;
        let split = square_split(&(&cur - &step.f_t))?;
        cert.h_list.push(split.square_root_part);
        cert.q_list.push(step.f_t);
        cert.pivots.push(step.t);
        cur = split.square_free_part;
    }
    if !is_nonnegative(&cur) {
        return Err(not_nonnegative("final residual is negative somewhere"));
    }
    cert.h_list.push(RationalPoly::zero());
    cert.q_list.push(cur);
    Ok(cert)
}

/// Weighted squares of a nonnegative polynomial of degree at most two:
/// `a X^2 + b X + c = a (X + b/(2a))^2 + (c - b^2/(4a)) * 1^2`.
pub fn quadratic_terms(q: &RationalPoly) -> Result<Vec<(Rational, RationalPoly)>> {
    let malformed = |why: &str| Error::MalformedCertificate(format!("{why}: {}", q.pretty()));
    match q.degree() {
        None => Ok(Vec::new()),
        Some(0) => {
            let c = q.coeff(0);
            if c.is_negative() {
                return Err(malformed("negative constant"));
            }
            Ok(vec![(c, RationalPoly::one())])
        }
        Some(2) => {
            let (c, b, a) = (q.coeff(0), q.coeff(1), q.coeff(2));
            if !a.is_positive() {
                return Err(malformed("quadratic with nonpositive leading coefficient"));
            }
            let shift = &b / (int(2) * &a);
            let rest = &c - &b * &b / (int(4) * &a);
            if rest.is_negative() {
                return Err(malformed("quadratic with a real root pair"));
            }
            let mut out = vec![(a, RationalPoly::new(vec![shift, int(1)]))];
            if !rest.is_zero() {
                out.push((rest, RationalPoly::one()));
            }
            Ok(out)
        }
        Some(_) => Err(malformed("entry of degree 1 or above 2")),
    }
}

/// Expands the nesting into a flat weighted SOS certificate.
pub fn flatten_nested(c: &NestedSosCert) -> Result<WeightedSosCert> {
    if c.h_list.len() != c.q_list.len() {
        return Err(Error::MalformedCertificate("list lengths differ".into()));
    }
    let mut out = WeightedSosCert::new(c.target.clone());
    let mut prefix = RationalPoly::one();
    for (h, q) in c.h_list.iter().zip(&c.q_list) {
        for (w, s) in quadratic_terms(q)? {
            out.push(w, &prefix * &s);
        }
        prefix = &prefix * h;
        if prefix.is_zero() {
            break;
        }
    }
    Ok(out)
}

/// Nested run followed by flattening.
pub fn univsos1(f: &RationalPoly) -> Result<WeightedSosCert> {
    flatten_nested(&univsos1_run(f, DEFAULT_MAX_REFINE_BITS)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificate::verify_exact;
    use crate::poly::rat;

    fn f_ex1() -> RationalPoly {
        RationalPoly::new(vec![int(2), rat(2, 15), rat(-11, 10), rat(-1, 9), int(1), int(0), rat(1, 16)])
    }

    fn wilkinson(n: usize) -> RationalPoly {
        let mut p = RationalPoly::one();
        for j in 1..=(n / 2) as i64 {
            p = &p * &RationalPoly::from_ints(&[-j, 1]).square();
        }
        &p + &RationalPoly::one()
    }

    #[test]
    fn simplest_rationals() {
        assert_eq!(simplest_between(&int(-1), &int(0)), int(0));
        assert_eq!(simplest_between(&rat(1, 3), &rat(3, 4)), rat(1, 2));
        assert_eq!(simplest_between(&rat(3, 2), &rat(5, 2)), int(2));
        assert_eq!(simplest_between(&rat(-5, 2), &rat(-3, 2)), int(-2));
        assert_eq!(simplest_between(&rat(7, 10), &rat(3, 4)), rat(3, 4));
        assert_eq!(simplest_between(&rat(31, 100), &rat(33, 100)), rat(5, 16));
    }

    #[test]
    fn tangent_parabola_of_worked_example() {
        let f_t = tangent_parabola(&f_ex1(), &int(-1)).unwrap();
        let s = RationalPoly::new(vec![rat(271, 360), rat(-19, 16)]);
        assert_eq!(f_t, s.square().scale(&rat(720, 1397)));
    }

    #[test]
    fn worked_example_pivots_are_admissible() {
        let f = f_ex1();
        let (f_t, g) = parab_at(&f, &int(-1)).expect("t = -1 admissible");
        assert_eq!(&f_t + &(&RationalPoly::from_ints(&[1, 1]).square() * &g), f);
        let (g_t, _) = parab_at(&g, &int(1)).expect("t = 1 admissible on the second level");
        let s = RationalPoly::new(vec![rat(88411, 167640), rat(-1, 18)]);
        assert_eq!(g_t, s.square().scale(&rat(502920, 237293)));
    }

    #[test]
    fn parab_exact_critical_points() {
        let r = parab(&wilkinson(10), 64).unwrap();
        assert_eq!(r.t, int(1));
        assert_eq!(r.f_t, RationalPoly::one());

        let r = parab(&RationalPoly::from_ints(&[1, 0, 0, 0, 1]), 64).unwrap();
        assert_eq!(r.t, int(0));
        assert_eq!(r.f_t, RationalPoly::one());
    }

    #[test]
    fn parab_rejects_polynomials_with_real_roots() {
        let p = RationalPoly::from_ints(&[-1, 0, 0, 0, 1]);
        assert!(matches!(parab(&p, 32), Err(Error::NotPositive)));
    }

    #[test]
    fn trivial_runs() {
        let sq = RationalPoly::from_ints(&[1, -2, 1]);
        let c = univsos1_run(&sq, 64).unwrap();
        // degree two: the loop body never runs
        assert_eq!(c.h_list, vec![RationalPoly::zero()]);
        assert_eq!(c.q_list, vec![sq.clone()]);
        let flat = flatten_nested(&c).unwrap();
        assert_eq!(flat.terms.len(), 1);
        assert_eq!(flat.terms[0].poly, RationalPoly::from_ints(&[-1, 1]));

        let q = RationalPoly::from_ints(&[1, 0, 1]);
        let flat = flatten_nested(&univsos1_run(&q, 64).unwrap()).unwrap();
        assert_eq!(flat.terms.len(), 2);
        assert_eq!((flat.terms[0].weight.clone(), flat.terms[0].poly.clone()), (int(1), RationalPoly::x()));
        assert_eq!((flat.terms[1].weight.clone(), flat.terms[1].poly.clone()), (int(1), RationalPoly::one()));
    }

    #[test]
    fn pure_square_takes_the_split_branch() {
        let f = RationalPoly::from_ints(&[1, -2, 1]).square();
        let c = univsos1_run(&f, 64).unwrap();
        assert_eq!(c.h_list, vec![RationalPoly::from_ints(&[1, -2, 1]), RationalPoly::zero()]);
        assert_eq!(c.q_list, vec![RationalPoly::zero(), RationalPoly::one()]);
        assert!(c.pivots.is_empty());

        let nested = NestedSosCert {
            target: RationalPoly::from_ints(&[1, -2, 1]),
            h_list: vec![RationalPoly::from_ints(&[-1, 1]), RationalPoly::zero()],
            q_list: vec![RationalPoly::zero(), RationalPoly::one()],
            pivots: vec![],
        };
        let flat = flatten_nested(&nested).unwrap();
        assert_eq!(flat.terms.len(), 1);
        assert_eq!((flat.terms[0].weight.clone(), flat.terms[0].poly.clone()), (int(1), RationalPoly::from_ints(&[-1, 1])));
    }

    #[test]
    fn reference_nesting_flattens_to_target() {
        let f = f_ex1();
        let (f1, g) = parab_at(&f, &int(-1)).unwrap();
        let (g1, h) = parab_at(&g, &int(1)).unwrap();
        let c = NestedSosCert {
            target: f.clone(),
            h_list: vec![
                RationalPoly::one(),
                RationalPoly::from_ints(&[1, 1]),
                RationalPoly::one(),
                RationalPoly::from_ints(&[-1, 1]),
                RationalPoly::zero(),
            ],
            q_list: vec![f1, RationalPoly::zero(), g1, RationalPoly::zero(), h.clone()],
            pivots: vec![int(-1), int(1)],
        };
        assert_eq!(c.reconstruct(), f);
        let flat = flatten_nested(&c).unwrap();
        assert!(verify_exact(&flat).ok);
        assert_eq!(h.degree(), Some(2));
        assert_eq!(h.coeff(2), rat(1, 16));
    }

    #[test]
    fn worked_example_end_to_end() {
        let c = univsos1_run(&f_ex1(), DEFAULT_MAX_REFINE_BITS).unwrap();
        assert_eq!(c.reconstruct(), f_ex1());
        assert!(c.len() <= 6 / 2 + 1);
        assert!(verify_exact(&flatten_nested(&c).unwrap()).ok);
    }

    #[test]
    fn rejects_non_nonnegative_inputs() {
        for p in [
            RationalPoly::from_ints(&[-1, 0, 1]),
            RationalPoly::from_ints(&[0, 1]),
            RationalPoly::from_ints(&[1, 0, -1]),
            RationalPoly::from_ints(&[-3]),
        ] {
            assert!(matches!(univsos1_run(&p, 64), Err(Error::NotNonnegative(_))), "{p}");
        }
    }

    #[test]
    fn constants() {
        let c = univsos1_run(&RationalPoly::constant(rat(3, 4)), 64).unwrap();
        let flat = flatten_nested(&c).unwrap();
        assert_eq!(flat.terms.len(), 1);
        assert!(verify_exact(&flat).ok);
        let z = flatten_nested(&univsos1_run(&RationalPoly::zero(), 64).unwrap()).unwrap();
        assert!(z.terms.is_empty());
    }

    #[test]
    fn malformed_entries() {
        assert!(quadratic_terms(&RationalPoly::from_ints(&[1, 1])).is_err());
        assert!(quadratic_terms(&RationalPoly::from_ints(&[-1, 0, 1])).is_err());
        assert!(quadratic_terms(&RationalPoly::from_ints(&[1, 0, -1])).is_err());
    }
}
