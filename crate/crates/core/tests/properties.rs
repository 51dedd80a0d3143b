use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use univsos::certificate::{self, verify_eval_default, verify_exact};
use univsos::complex_roots::{approx_complex_roots, pair_conjugates, round_to_bits};
use univsos::poly::{int, pow2, rat, Rational, RationalPoly};
use univsos::real_roots::{has_real_roots, isolate_real_roots, real_root_count};
use univsos::squarefree::{square_split, yun_squarefree};
use univsos::text::{format_poly, parse_poly};
use univsos::univsos1::{tangent_parabola, univsos1};
use univsos::univsos2::{even_power_sum, find_epsilon, univsos2};

fn small_rational() -> impl Strategy<Value = Rational> {
    (-64i64..=64, 1i64..=16).prop_map(|(n, d)| rat(n, d))
}

fn poly(max_degree: usize) -> impl Strategy<Value = RationalPoly> {
    prop::collection::vec(small_rational(), 1..=max_degree + 1).prop_map(RationalPoly::new)
}

fn nonzero_poly(max_degree: usize) -> impl Strategy<Value = RationalPoly> {
    poly(max_degree).prop_filter("nonzero", |p| !p.is_zero())
}

/// `q1^2 + q2^2 + c`, nonconstant.
fn sos_input() -> impl Strategy<Value = RationalPoly> {
    (nonzero_poly(4), poly(4), 0i64..=8)
        .prop_map(|(q1, q2, c)| &(&q1.square() + &q2.square()) + &RationalPoly::constant(int(c)))
        .prop_filter("nonconstant", |f| !f.is_constant())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn poly_text_round_trip(p in poly(8)) {
        prop_assert_eq!(parse_poly(&format_poly(&p)).unwrap(), p);
    }

    #[test]
    fn ring_laws(a in poly(5), b in poly(5), x in small_rational()) {
        let prod = &a * &b;
        prop_assert_eq!(prod.evaluate(&x), a.evaluate(&x) * b.evaluate(&x));
        prop_assert_eq!((&a + &b).evaluate(&x), a.evaluate(&x) + b.evaluate(&x));
        if !b.is_zero() {
            let (q, r) = prod.div_rem(&b).unwrap();
            prop_assert_eq!(q, a);
            prop_assert!(r.is_zero());
        }
    }

    #[test]
    fn squarefree_decomposition_reassembles(a in nonzero_poly(3), b in nonzero_poly(2), c in nonzero_poly(2)) {
        let p = &(&a * &b.square()) * &c.pow(3);
        prop_assume!(!p.is_constant());
        let dec = yun_squarefree(&p).unwrap();
        prop_assert_eq!(dec.expand(), p.clone());
        for (i, f) in dec.factors.iter().enumerate() {
            prop_assert!(univsos::squarefree::is_square_free(&f.factor));
            for g in &dec.factors[i + 1..] {
                prop_assert!(univsos::squarefree::gcd(&f.factor, &g.factor).is_constant());
            }
        }
        let split = square_split(&p).unwrap();
        prop_assert_eq!(&split.square_free_part * &split.square_root_part.square(), p);
    }

    #[test]
    fn sturm_counts_known_roots(roots in prop::collection::btree_set(-40i64..=40, 1..=6), shift in 1i64..=9) {
        // distinct roots r / shift, plus an irreducible quadratic factor
        let mut p = RationalPoly::from_ints(&[1, 0, 1]);
        for &r in &roots {
            p = &p * &RationalPoly::linear_root(&rat(r, shift));
        }
        prop_assert_eq!(real_root_count(&p).unwrap(), roots.len());
        let ivs = isolate_real_roots(&p).unwrap();
        prop_assert_eq!(ivs.len(), roots.len());
        for (iv, &r) in ivs.iter().zip(&roots) {
            prop_assert!(iv.contains(&rat(r, shift)));
            prop_assert!(iv.width() <= int(1));
        }
    }

    #[test]
    fn tangent_parabola_touches(f in poly(6), t in small_rational()) {
        if let Some(q) = tangent_parabola(&f, &t) {
            prop_assert!(q.degree().unwrap_or(0) <= 2);
            prop_assert_eq!(q.evaluate(&t), f.evaluate(&t));
            prop_assert_eq!(q.derivative().evaluate(&t), f.derivative().evaluate(&t));
            prop_assert!(!q.leading_or_zero().is_negative());
        } else {
            prop_assert!(!f.evaluate(&t).is_positive());
        }
    }

    #[test]
    fn rounding_is_dyadic_and_close(q in small_rational(), bits in 0u64..40) {
        let r = round_to_bits(&q, bits);
        let scaled = &r * pow2(bits as i64);
        prop_assert!(scaled.is_integer());
        prop_assert!((&r - &q).abs() <= pow2(-(bits as i64) - 1));
        let den = r.denom().clone();
        prop_assert!(den.is_one() || (den.is_even() && (den.clone() & (den.clone() - 1u32)).is_zero()));
    }

    #[test]
    fn conjugate_pairs_recovered(centres in prop::collection::btree_set(-8i64..=8, 1..=3), spread in 1i64..=4) {
        // prod ((X - a)^2 + b^2) with distinct roots
        let mut p = RationalPoly::one();
        for (i, &a) in centres.iter().enumerate() {
            let b = spread + i as i64;
            p = &p * &RationalPoly::from_ints(&[a * a + b * b, -2 * a, 1]);
        }
        let rs = approx_complex_roots(&p, 40).unwrap();
        let upper = pair_conjugates(&rs).unwrap();
        prop_assert_eq!(upper.len(), centres.len());
        prop_assert!(upper.iter().all(|z| z.im.is_positive()));
        let tol = pow2(-30);
        for (i, &a) in centres.iter().enumerate() {
            let b = int(spread + i as i64);
            prop_assert!(upper.iter().any(|z| (&z.re - int(a)).abs() < tol && (&z.im - &b).abs() < tol));
        }
    }

    #[test]
    fn epsilon_keeps_positivity(f in sos_input(), c in 1i64..=8) {
        let p = square_split(&(&f + &RationalPoly::constant(int(c)))).unwrap().square_free_part;
        prop_assume!(p.degree().unwrap_or(0) >= 2);
        let ps = find_epsilon(&p, &(p.leading_or_zero() / int(2))).unwrap();
        prop_assert!(ps.eps.is_positive());
        prop_assert_eq!(&ps.p_eps, &(&p - &even_power_sum(ps.k).scale(&ps.eps)));
        prop_assert!(!has_real_roots(&ps.p_eps).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn both_algorithms_certify(f in sos_input()) {
        for cert in [univsos1(&f).unwrap(), univsos2(&f).unwrap()] {
            prop_assert_eq!(&cert.target, &f);
            prop_assert!(verify_exact(&cert).ok);
            prop_assert!(verify_eval_default(&cert).ok);
            prop_assert!(cert.terms.iter().all(|t| t.weight.is_positive()));
            let reread = certificate::parse(&certificate::serialize(&cert)).unwrap();
            prop_assert_eq!(reread, cert);
        }
    }

    #[test]
    fn negative_somewhere_is_refused(f in sos_input(), x in small_rational(), r in 1i64..=8) {
        let g = &f - &RationalPoly::constant(f.evaluate(&x) + rat(r, 8));
        prop_assert!(univsos1(&g).is_err());
        prop_assert!(univsos2(&g).is_err());
    }
}
