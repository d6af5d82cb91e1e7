mod common;

use common::*;
use legendrian::analysis::{h_intersections, hg_immersed_at, hg_immersion_check, immersion_failures, is_immersed_at, simple_pole_certificate};
use legendrian::arith::{DomainPoint, GaussianRational, Poly, RationalFunction};
use legendrian::contact::pullback_alpha0;
use legendrian::curves::{bryant_curve, bryant_lift, f_curve, invert_bryant, rational_primitive, ProjectiveCurve, Provenance};
use legendrian::laurent::{order_at, pole_set, residue_at, numeric_residue, PoleLocation};
use legendrian::parse::{parse_ast, parse_expression, Expr};
use legendrian::twistor::Quat;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::Rng;

fn cases(n: u32) -> ProptestConfig {
    ProptestConfig { cases: n, ..ProptestConfig::default() }
}

fn exact_pole_sum(r: &RationalFunction) -> GaussianRational {
    let mut sum = residue_at(r, &DomainPoint::Infinity);
    for p in pole_set(r) {
        if let PoleLocation::Exact(a @ DomainPoint::Finite(_)) = &p.location {
            sum += &residue_at(r, a);
        }
    }
    sum
}

/// `g = z + 1/z` and `h = 2 nu / (z^2 - 1) + lambda g + mu`, reparametrized by a
/// Möbius map: `h dg` is exact and every pole is simple.
fn simple_pole_pair(rng: &mut TestRng) -> (RationalFunction, RationalFunction, bool) {
    let z = RationalFunction::z();
    let g0 = &z + &z.inv().unwrap();
    let nu = if rng.gen_bool(0.5) { GaussianRational::zero() } else { nonzero_gauss(rng) };
    let (lambda, mu) = (gauss(rng), gauss(rng));
    let bump = RationalFunction::normalize(Poly::constant(&nu + &nu), Poly::from_ints(&[-1, 0, 1])).unwrap();
    let h0 = &(&bump + &g0.scale(&lambda)) + &RationalFunction::constant(mu);
    let m = mobius(rng);
    let immersed = !nu.is_zero();
    (h0.compose(&m).unwrap(), g0.compose(&m).unwrap(), immersed)
}

proptest! {
    #![proptest_config(cases(64))]

    #[test]
    fn field_axioms(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (a, b, c) = (ratfunc(&mut r, 3), ratfunc(&mut r, 3), ratfunc(&mut r, 3));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, RationalFunction::zero());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inv().unwrap(), RationalFunction::one());
        }
    }

    #[test]
    fn leibniz_rule(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (a, b) = (ratfunc(&mut r, 3), ratfunc(&mut r, 3));
        prop_assert_eq!((&a * &b).derivative(), &(&a.derivative() * &b) + &(&a * &b.derivative()));
    }

    #[test]
    fn global_residue_theorem(seed in any::<u64>()) {
        let mut r = rng(seed);
        let f = ratfunc_exact_poles(&mut r, 3);
        prop_assert!(exact_pole_sum(&f).is_zero());
        let g = ratfunc(&mut r, 4);
        let mut sum = residue_at(&g, &DomainPoint::Infinity).to_complex();
        for p in pole_set(&g) {
            match &p.location {
                PoleLocation::Exact(a @ DomainPoint::Finite(_)) => sum += residue_at(&g, a).to_complex(),
                PoleLocation::Numeric(x) => sum += numeric_residue(&g, *x, p.multiplicity),
                _ => {}
            }
        }
        prop_assert!(sum.norm() < 1e-7, "{}", sum);
    }

    #[test]
    fn order_additivity(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (a, b) = (ratfunc_exact_poles(&mut r, 2), ratfunc_exact_poles(&mut r, 2));
        prop_assume!(!a.is_zero() && !b.is_zero());
        let mut points = vec![DomainPoint::Infinity, DomainPoint::Finite(gauss(&mut r))];
        for p in pole_set(&a) {
            if let PoleLocation::Exact(x) = p.location {
                points.push(x);
            }
        }
        let ab = &a * &b;
        for p in &points {
            prop_assert_eq!(order_at(&ab, p).unwrap(), order_at(&a, p).unwrap() + order_at(&b, p).unwrap());
        }
    }

    #[test]
    fn bryant_lift_is_legendrian(seed in any::<u64>()) {
        let mut r = rng(seed);
        let f = ratfunc(&mut r, 3);
        let g = nonconstant_ratfunc(&mut r, 3);
        prop_assert!(pullback_alpha0(&bryant_lift(&f, &g)).is_zero());
    }

    #[test]
    fn invert_after_bryant(seed in any::<u64>()) {
        let mut r = rng(seed);
        let f = ratfunc(&mut r, 3);
        let g = nonconstant_ratfunc(&mut r, 3);
        let (f2, g2) = invert_bryant(&bryant_curve(&f, &g).unwrap()).unwrap();
        prop_assert_eq!(f2, f);
        prop_assert_eq!(g2, g);
    }

    #[test]
    fn f_curve_matches_bryant(seed in any::<u64>()) {
        let mut r = rng(seed);
        let f = ratfunc(&mut r, 2);
        let g = nonconstant_ratfunc(&mut r, 2);
        let h = -f.derivative().checked_div(&g.derivative()).unwrap();
        let c = gauss(&mut r);
        let primitive = rational_primitive(&(&h * &g.derivative())).unwrap();
        let expected = bryant_curve(&(&-primitive - &RationalFunction::constant(c.clone())), &g).unwrap();
        prop_assert_eq!(f_curve(&h, &g, &c).unwrap(), expected);
    }

    #[test]
    fn primitive_inverts_derivative(seed in any::<u64>()) {
        let mut r = rng(seed);
        let s = ratfunc(&mut r, 4);
        let ds = s.derivative();
        let p = rational_primitive(&ds).unwrap();
        prop_assert_eq!(p.derivative(), ds);
        prop_assert!((&p - &s).is_constant());
    }

    #[test]
    fn mobius_g_gives_immersion(seed in any::<u64>()) {
        let mut r = rng(seed);
        let f = ratfunc(&mut r, 3);
        let c = bryant_curve(&f, &mobius(&mut r)).unwrap();
        prop_assert!(immersion_failures(&c).unwrap().is_empty(), "{}", c);
    }

    #[test]
    fn simple_pole_immersion_criterion(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (h, g, immersed) = simple_pole_pair(&mut r);
        prop_assert!(simple_pole_certificate(&h, &g));
        let c = f_curve(&h, &g, &gauss(&mut r)).unwrap();
        let verdict = hg_immersion_check(&h, &g).unwrap();
        prop_assert_eq!(verdict, immersed);
        prop_assert_eq!(immersion_failures(&c).unwrap().is_empty(), verdict);
        // pointwise at the poles and critical points, which all lie in Q(i)
        let mut points = vec![DomainPoint::Infinity];
        for q in pole_set(&h).into_iter().chain(pole_set(&g)) {
            if let PoleLocation::Exact(x) = q.location {
                points.push(x);
            }
        }
        for p in &points {
            prop_assert_eq!(is_immersed_at(&c, p).unwrap(), hg_immersed_at(&h, &g, p));
        }
    }

    #[test]
    fn transverse_f_curves_have_simple_poles(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (h, g) = if r.gen_bool(0.5) {
            let (h, g, _) = simple_pole_pair(&mut r);
            (h, g)
        } else {
            let f = ratfunc(&mut r, 2);
            let g = nonconstant_ratfunc(&mut r, 2);
            (-f.derivative().checked_div(&g.derivative()).unwrap(), g)
        };
        let c = f_curve(&h, &g, &gauss(&mut r)).unwrap();
        let transverse = h_intersections(&c).iter().all(|x| x.transverse);
        prop_assert_eq!(transverse, simple_pole_certificate(&h, &g), "{} / h = {} / g = {}", c, h, g);
    }

    #[test]
    fn base_points_do_not_change_the_curve(seed in any::<u64>()) {
        let mut r = rng(seed);
        let f = ratfunc(&mut r, 3);
        let g = nonconstant_ratfunc(&mut r, 3);
        let lift = bryant_lift(&f, &g);
        let phi = RationalFunction::normalize(split_poly(&mut r, 3, 2), poly(&mut r, 2)).unwrap();
        prop_assume!(!phi.is_zero());
        let scaled: [RationalFunction; 4] = std::array::from_fn(|k| &lift[k] * &phi);
        prop_assert_eq!(
            ProjectiveCurve::from_rational(&scaled, Provenance::Raw).unwrap(),
            ProjectiveCurve::from_rational(&lift, Provenance::Raw).unwrap()
        );
        prop_assert!(pullback_alpha0(&scaled).is_zero());
    }

    #[test]
    fn quaternion_norm_is_multiplicative(a in prop::array::uniform4(-3.0f64..3.0), b in prop::array::uniform4(-3.0f64..3.0), c in prop::array::uniform4(-3.0f64..3.0)) {
        let q = |v: [f64; 4]| Quat::new(v[0], v[1], v[2], v[3]);
        let (p, q2, s) = (q(a), q(b), q(c));
        let n = (p * q2).norm_sqr();
        prop_assert!((n - p.norm_sqr() * q2.norm_sqr()).abs() <= 1e-12 * (1.0 + n));
        let l = (p * q2) * s;
        let rr = p * (q2 * s);
        for (x, y) in [(l.x, rr.x), (l.y, rr.y), (l.u, rr.u), (l.v, rr.v)] {
            prop_assert!((x - y).abs() <= 1e-11 * (1.0 + x.abs()));
        }
        let conj = (p * q2).conj() - q2.conj() * p.conj();
        prop_assert!(conj.norm_sqr() < 1e-20 * (1.0 + n));
    }
}

fn expr_strategy() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (-9i64..10, 1i64..5).prop_map(|(p, q)| Expr::Num(BigRational::new(BigInt::from(p.abs()), BigInt::from(q)))),
        Just(Expr::I),
        Just(Expr::Z),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|a| Expr::Neg(a.into())),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(a.into(), b.into())),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(a.into(), b.into())),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Mul(a.into(), b.into())),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Div(a.into(), b.into())),
            (inner, -2i64..4).prop_map(|(a, e)| Expr::Pow(a.into(), e)),
        ]
    })
}

proptest! {
    #![proptest_config(cases(256))]

    #[test]
    fn printer_round_trip(e in expr_strategy()) {
        let text = e.to_string();
        let reparsed = parse_ast(&text).unwrap();
        prop_assert_eq!(reparsed.to_string(), text.clone());
        if let Ok(r) = e.lower() {
            prop_assert_eq!(reparsed.lower().unwrap(), r.clone());
            prop_assert_eq!(parse_expression(&r.to_string_var("z")).unwrap(), r);
        }
    }

    #[test]
    fn lift_scaling_leaves_projection(x in prop::array::uniform8(-2.0f64..2.0), s in prop::array::uniform2(-3.0f64..3.0)) {
        let p: [Complex64; 4] = std::array::from_fn(|k| Complex64::new(x[2 * k], x[2 * k + 1]));
        prop_assume!(p.iter().map(|c| c.norm()).sum::<f64>() > 1e-3);
        let lam = Complex64::new(s[0], s[1]);
        prop_assume!(lam.norm() > 1e-3);
        let a = legendrian::twistor::twistor_project(&p);
        let b = legendrian::twistor::twistor_project(&p.map(|c| c * lam));
        for k in 0..5 {
            prop_assert!((a[k] - b[k]).abs() < 1e-12);
        }
    }
}
