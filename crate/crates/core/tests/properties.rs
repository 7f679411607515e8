use num::Zero;
use proptest::prelude::*;

use cu_lattice::cone::{compare_hat_mn, Functional, FunctionalCone};
use cu_lattice::ext::{rat, ExtNat, ExtRational, Rational};
use cu_lattice::grid::interpolation_meet;
use cu_lattice::real::{add, complement_r, leq_r, scale, RealContext};
use cu_lattice::term::{self, eval_str};
use cu_lattice::{lattice, CuModel, Element};

fn ext_nat() -> impl Strategy<Value = ExtNat> {
    prop_oneof![4 => (0u64..=5).prop_map(ExtNat::Fin), 1 => Just(ExtNat::Inf)]
}

fn ext_rat() -> impl Strategy<Value = ExtRational> {
    prop_oneof![
        6 => (0i128..=36, 1i128..=6).prop_map(|(a, b)| ExtRational::fin(rat(a, b))),
        1 => Just(ExtRational::Inf),
    ]
}

fn vector(k: usize) -> impl Strategy<Value = Element> {
    prop::collection::vec(ext_nat(), k).prop_map(Element::Vector)
}

fn coords(e: &Element) -> &[ExtNat] {
    e.as_vector().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, ..ProptestConfig::default() })]

    // On N̄^k the functionals are the coefficient vectors in [0, inf]^k, and testing
    // against the unit vectors shows ŝ <= t̂ iff s <= t coordinatewise.
    #[test]
    fn nbar_comparison_is_coordinatewise((s, t) in (1usize..=3).prop_flat_map(|k| (vector(k), vector(k)))) {
        let m = CuModel::nbar_power(coords(&s).len());
        let cone = FunctionalCone::compute(&m, false).unwrap();
        let oracle = coords(&s).iter().zip(coords(&t)).all(|(a, b)| a <= b);
        prop_assert_eq!(cone.compare_hat_lp(&s, &t), oracle);
        prop_assert_eq!(compare_hat_mn(&m, &s, &t, 8).unwrap().holds, oracle);
    }

    #[test]
    fn nbar_join_meet_are_coordinatewise(c1 in prop::collection::vec(ext_rat(), 2), c2 in prop::collection::vec(ext_rat(), 2)) {
        let m = CuModel::nbar_power(2);
        let (a, b) = (Functional::coefficients(&m, c1.clone()), Functional::coefficients(&m, c2.clone()));
        let max: Vec<ExtRational> = c1.iter().zip(&c2).map(|(x, y)| x.max(y).clone()).collect();
        let min: Vec<ExtRational> = c1.iter().zip(&c2).map(|(x, y)| x.min(y).clone()).collect();
        prop_assert_eq!(lattice::join(&m, &a, &b).unwrap().generator_values(&m), max);
        prop_assert_eq!(lattice::meet(&m, &a, &b).unwrap().generator_values(&m), min);
    }

    #[test]
    fn ext_rational_semiring_laws(a in ext_rat(), b in ext_rat(), c in ext_rat(), q in (0i128..=12, 1i128..=4)) {
        let q = rat(q.0, q.1);
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!((&a + &b).scale(&q), &a.scale(&q) + &b.scale(&q));
        prop_assert_eq!(&a + &ExtRational::zero(), a.clone());
        prop_assert!(a <= &a + &b);
        if let Some(d) = (&a + &b).checked_sub(&a) {
            if a.is_finite() && b.is_finite() {
                prop_assert_eq!(d, b);
            }
        }
    }

    #[test]
    fn element_syntax_round_trips(v in prop::collection::vec(ext_nat(), 1..4)) {
        let e = Element::Vector(v);
        prop_assert_eq!(Element::parse(&e.to_string()).unwrap(), e);
    }

    #[test]
    fn terms_round_trip_and_evaluate_linearly(a in 0u64..4, b in 0u64..4, p in 1i128..8, q in 1i128..4) {
        let ctx = RealContext::new(CuModel::nbar_power(2), false).unwrap();
        let src = format!("{p}/{q}*hat([{a},{b}]) + hat([{b},{a}])");
        let t = term::parse(&src).unwrap();
        prop_assert_eq!(term::parse(&t.to_string()).unwrap(), t);
        let x = eval_str(&ctx, &src).unwrap();
        let direct = add(
            &scale(&rat(p, q), &ctx.embed(&Element::vector(&[a, b])).unwrap()),
            &ctx.embed(&Element::vector(&[b, a])).unwrap(),
        );
        prop_assert_eq!(x, direct);
    }

    // Coordinatewise data with denominators dividing 4: the greatest grid element below
    // both is the coordinatewise minimum.
    #[test]
    fn nbar_meet_is_coordinatewise_min(x in prop::collection::vec(0i128..=12, 2), y in prop::collection::vec(0i128..=12, 2)) {
        let ctx = RealContext::new(CuModel::nbar_power(2), false).unwrap();
        let mk = |v: &[i128]| ctx.combination(&v.iter().map(|&n| Some(rat(n, 4))).collect::<Vec<_>>()).unwrap();
        let min: Vec<i128> = x.iter().zip(&y).map(|(a, b)| *a.min(b)).collect();
        prop_assert_eq!(interpolation_meet(&ctx, &mk(&x), &mk(&y), 4).unwrap(), mk(&min));
    }

    #[test]
    fn complement_r_is_exact(x in prop::collection::vec(0i128..=12, 2), y in prop::collection::vec(0i128..=12, 2), a in 1u32..6) {
        let ctx = RealContext::new(CuModel::nbar_power(2), false).unwrap();
        let mk = |v: &[i128]| ctx.combination(&v.iter().map(|&n| Some(rat(n, 4))).collect::<Vec<_>>()).unwrap();
        let g = add(&mk(&x), &mk(&y));
        let f = scale(&(Rational::from_integer(1) - rat(1, 1 << a)), &mk(&x));
        let c = complement_r(&f, &g, Some(256)).unwrap();
        prop_assert_eq!(add(&f, &c.h), g.clone());
        prop_assert!(leq_r(&c.h, &g));
        prop_assert!(c.h.values.iter().all(|v| *v >= ExtRational::Fin(Rational::zero())));
    }
}

#[test]
fn model_files_round_trip() {
    for (_, m) in cu_lattice::fixtures::all_fixtures() {
        assert_eq!(CuModel::load(&m.save()).unwrap(), m);
    }
    for m in cu_lattice::fixtures::enumerate_tables(3) {
        assert_eq!(CuModel::from_json(&m.to_json()).unwrap(), m);
    }
}
