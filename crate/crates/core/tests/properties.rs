//! Randomized invariants of the numeric core, envelopes and integrals.

mod common;

use common::{point_in, q};
use proptest::prelude::*;
use semicont::cli::{parse_spec, print_spec};
use semicont::envelopes::{classify_values, envelope_values};
use semicont::integration::{
    darboux_integrals, dyadic_refinement, lebesgue_integral, level_measure, level_set, Relation,
};
use semicont::numeric::range_enclosure;
use semicont::{FunctionModel, Interval, Rational};

fn small_rational() -> impl Strategy<Value = Rational> {
    (-1000i64..=1000, 1i64..=100).prop_map(|(n, d)| q(n, d))
}

fn interval() -> impl Strategy<Value = Interval> {
    (small_rational(), small_rational()).prop_map(|(a, b)| Interval::spanning(a, b))
}

fn member(i: &Interval, t: u32) -> Rational {
    i.lo() + i.width() * q(t as i64, 1000)
}

fn model(seed: u64, mods: usize) -> FunctionModel {
    let mut r = common::rng(seed);
    if mods == 0 {
        common::unmodified(&mut r)
    } else {
        common::modified(&mut r, mods)
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, ..ProptestConfig::default() })]

    #[test]
    fn interval_ops_contain_pointwise_results(a in interval(), b in interval(), s in 0u32..=1000, t in 0u32..=1000) {
        let (x, y) = (member(&a, s), member(&b, t));
        prop_assert!((&a + &b).contains(&(&x + &y)));
        prop_assert!((&a - &b).contains(&(&x - &y)));
        prop_assert!((&a * &b).contains(&(&x * &y)));
        prop_assert!((-&a).contains(&-x.clone()));
        let (l, r) = a.bisect();
        prop_assert!(l.contains(&x) || r.contains(&x));
        prop_assert_eq!(l.hull(&r), a);
    }

    #[test]
    fn polynomial_enclosure_contains_values(seed in any::<u64>(), w in interval(), t in 0u32..=1000) {
        let p = common::polynomial(&mut common::rng(seed), 6);
        let x = member(&w, t);
        let v = p.eval(&x);
        prop_assert!(p.eval_interval(&w).contains(&v));
        prop_assert!(p.enclose(&w).contains(&v));
        prop_assert!(p.enclose(&w).is_subset_of(&p.eval_interval(&w)));
    }

    #[test]
    fn range_enclosure_brackets_samples(seed in any::<u64>(), w in interval()) {
        let mut r = common::rng(seed);
        let p = common::polynomial(&mut r, 6);
        let tol = q(1, 1000);
        let e = range_enclosure(&p, &w, &tol).unwrap();
        prop_assert!(e.sup.width <= tol && e.inf.width <= tol);
        for _ in 0..50 {
            let v = p.eval(&point_in(&mut r, w.lo(), w.hi()));
            prop_assert!(e.inf.lo() <= &v && &v <= e.sup.hi());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn envelope_structure(seed in any::<u64>()) {
        let f = model(seed, 20);
        let neg = f.neg();
        let mut r = common::rng(seed ^ 0x5eed);
        let mut points: Vec<Rational> = f.base().breakpoints().to_vec();
        points.extend(f.finite_points().iter().take(5).map(|(x, _)| x.clone()));
        points.extend((0..10).map(|_| point_in(&mut r, f.domain_lo(), f.domain_hi())));
        for x in &points {
            let e = envelope_values(&f, x).unwrap();
            prop_assert!(e.check().is_ok(), "{:?}", e.check());
            let n = envelope_values(&neg, x).unwrap();
            prop_assert_eq!(&e.two_sided_sup, &-n.two_sided_inf.clone());
            prop_assert_eq!(&e.two_sided_inf, &-n.two_sided_sup.clone());
            let c = classify_values(&e);
            let cn = classify_values(&n);
            prop_assert_eq!(c.is_usc, cn.is_lsc);
            prop_assert_eq!(c.is_cont, c.is_usc && c.is_lsc);
        }
    }

    #[test]
    fn level_sets_agree_with_evaluation(seed in any::<u64>(), level in small_rational()) {
        let f = model(seed, 30);
        let level = level / q(10, 1);
        let tol = q(1, 1 << 12);
        let mut r = common::rng(seed ^ 1);
        for rel in Relation::ALL {
            let ls = level_set(&f, &level, rel, &tol).unwrap();
            for _ in 0..20 {
                let x = point_in(&mut r, f.domain_lo(), f.domain_hi());
                if let Some(inside) = ls.contains(&f, &x) {
                    prop_assert_eq!(inside, rel.holds(&f.evaluate(&x).unwrap(), &level));
                }
            }
            for (x, _) in f.finite_points().iter().take(10) {
                if let Some(inside) = ls.contains(&f, x) {
                    prop_assert_eq!(inside, rel.holds(&f.evaluate(x).unwrap(), &level));
                }
            }
        }
        // Complementary relations split the domain.
        let len = f.base().domain_length();
        let ge = level_measure(&level_set(&f, &level, Relation::Ge, &tol).unwrap());
        let lt = level_measure(&level_set(&f, &level, Relation::Lt, &tol).unwrap());
        prop_assert!(ge.lo() + lt.lo() <= len && len <= ge.hi() + lt.hi());
    }

    #[test]
    fn finite_modifications_do_not_move_measures(seed in any::<u64>(), level in small_rational()) {
        let f = model(seed, 50);
        let base = f.without_modification();
        let level = level / q(10, 1);
        let tol = q(1, 1 << 10);
        for rel in Relation::ALL {
            let a = level_measure(&level_set(&f, &level, rel, &tol).unwrap());
            let b = level_measure(&level_set(&base, &level, rel, &tol).unwrap());
            prop_assert_eq!(a, b);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn darboux_refinement_is_monotone(seed in any::<u64>()) {
        let f = model(seed, 40);
        let steps: Vec<_> = dyadic_refinement(&f, &q(1, 1000)).unwrap().take(8).collect();
        for w in steps.windows(2) {
            let (a, b) = (&w[0].sums, &w[1].sums);
            prop_assert!(a.lower.lo() <= b.lower.lo() && a.lower.hi() <= b.lower.hi());
            prop_assert!(a.upper.lo() >= b.upper.lo() && a.upper.hi() >= b.upper.hi());
            prop_assert!(b.lower.lo() <= b.upper.hi());
        }
    }

    #[test]
    fn integrals_contain_antiderivative(seed in any::<u64>()) {
        let f = model(seed, 0);
        let exact = common::antiderivative_integral(f.base());
        let tol = q(1, 100);
        let d = darboux_integrals(&f, &tol, 16).unwrap();
        prop_assert!(d.lower_integral.contains(&exact), "{} vs {}", d.lower_integral, exact);
        prop_assert!(d.upper_integral.contains(&exact));
        let l = lebesgue_integral(&f, &tol).unwrap();
        prop_assert!(l.contains(&exact), "{} vs {}", l, exact);
        prop_assert!(l.width <= tol);
    }

    #[test]
    fn spec_round_trip(seed in any::<u64>(), mods in 0usize..30) {
        let f = model(seed, mods);
        let text = print_spec(&f);
        let g = parse_spec(&text).unwrap();
        prop_assert_eq!(&g, &f);
        prop_assert_eq!(print_spec(&g), text);
    }
}

#[test]
fn zero_width_domain_pieces_are_rejected() {
    let text = "domain 0 1\nbreakpoints 0 0 1\npiece 0 coeffs 1\npiece 1 coeffs 1\nvalues 0 0 0\n";
    assert!(parse_spec(text).is_err());
}
