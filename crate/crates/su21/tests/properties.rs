use std::f64::consts::{FRAC_PI_2, PI};

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use su21::classify::{classify, resultant_f};
use su21::invariants::{cartan, cross_ratio, quadruple_ratio, triple_ratio};
use su21::linalg::{verify_su21, Heisenberg};
use su21::modular::{modular_rep, Family};
use su21::sample;
use su21::traces::{tau_conjugate, trace_coordinates, trace_equation_coeffs, TraceVector8};
use su21::triangle::{triangle_interval, triangle_rep, Angles};
use su21::{Cx, Form};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn form_of(b: bool) -> Form {
    if b {
        Form::Siegel
    } else {
        Form::Ball
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn invariants_are_pu21_invariant(seed in any::<u64>()) {
        let mut g = rng(seed);
        let p: Vec<_> = (0..4).map(|_| sample::boundary_point(&mut g, 1.5)).collect();
        let h = sample::conjugator(&mut g, Form::Siegel);
        let q: Vec<_> = p.iter().map(|v| h.apply(v)).collect();
        let f = Form::Siegel;
        let x0 = cross_ratio(&p[0], &p[1], &p[2], &p[3], f).unwrap();
        let x1 = cross_ratio(&q[0], &q[1], &q[2], &q[3], f).unwrap();
        prop_assert!((x0 - x1).norm() < 1e-8 * (1.0 + x0.norm()));
        let a0 = cartan(&p[0], &p[1], &p[2], f).unwrap();
        let a1 = cartan(&q[0], &q[1], &q[2], f).unwrap();
        prop_assert!((a0 - a1).abs() < 1e-8);
        prop_assert!(a0.abs() <= FRAC_PI_2 + 1e-12);
    }

    #[test]
    fn quadruple_ratio_is_unimodular(seed in any::<u64>()) {
        let mut g = rng(seed);
        let p: Vec<_> = (0..4).map(|_| sample::boundary_point(&mut g, 2.0)).collect();
        let f = Form::Siegel;
        let q = quadruple_ratio(&p[0], &p[1], &p[2], &p[3], f).unwrap();
        prop_assert!((q.norm() - 1.0).abs() < 1e-10);
        let t = triple_ratio(&p[0], &p[1], &p[2], f).unwrap().t * triple_ratio(&p[0], &p[2], &p[3], f).unwrap().t;
        prop_assert!((q - t).norm() < 1e-9);
    }

    #[test]
    fn commutator_trace_solves_trace_equation(seed in any::<u64>(), siegel in any::<bool>()) {
        let mut g = rng(seed);
        let f = form_of(siegel);
        let a = sample::element(&mut g, f);
        let b = sample::element(&mut g, f);
        let eq = trace_equation_coeffs(&TraceVector8::of(&a, &b));
        let x = a.commutator(&b).trace();
        prop_assert!((x * x - eq.s * x + eq.p).norm() <= 1e-8 * (1.0 + x.norm_sqr()));
        prop_assert!((eq.s - x - x.conj()).norm() <= 1e-8 * (1.0 + x.norm_sqr()));
        let d = eq.discriminant();
        prop_assert!(d.re <= 1e-8 * (1.0 + eq.s.norm_sqr() + eq.p.norm()));
    }

    #[test]
    fn classification_ignores_conjugation_and_form(seed in any::<u64>()) {
        let mut g = rng(seed);
        let a = sample::element(&mut g, Form::Siegel);
        let h = sample::conjugator(&mut g, Form::Siegel);
        if let Ok(c0) = classify(&a, 1e-9) {
            let c1 = classify(&a.conjugate_by(&h), 1e-9).unwrap();
            prop_assert!(c0.approx_eq(&c1, 1e-6), "{:?} vs {:?}", c0, c1);
            let c2 = classify(&a.to_form(Form::Ball), 1e-9).unwrap();
            prop_assert!(c0.approx_eq(&c2, 1e-6));
        }
    }

    #[test]
    fn deltoid_sign_matches_class(seed in any::<u64>()) {
        let mut g = rng(seed);
        let a = sample::element(&mut g, Form::Siegel);
        let f = resultant_f(a.trace());
        if let Ok(c) = classify(&a, 1e-9) {
            if f > 1e-6 {
                prop_assert_eq!(c.tag(), "Loxodromic");
            } else if f < -1e-6 {
                prop_assert_eq!(c.tag(), "RegularElliptic");
            }
        }
    }

    #[test]
    fn samples_are_in_su21(seed in any::<u64>(), siegel in any::<bool>()) {
        let mut g = rng(seed);
        let f = form_of(siegel);
        let a = sample::element(&mut g, f);
        prop_assert!(verify_su21(&a.m, f, 1e-9 * (1.0 + a.m.norm_inf().powi(2))).0);
        let back = a.to_form(f.other()).to_form(f);
        prop_assert!(back.m.dist(&a.m) < 1e-12 * (1.0 + a.m.norm_inf()));
    }

    #[test]
    fn heisenberg_translations_compose(
        x in -2.0f64..2.0, y in -2.0f64..2.0, t in -2.0f64..2.0,
        u in -2.0f64..2.0, v in -2.0f64..2.0, s in -2.0f64..2.0,
    ) {
        let a = Heisenberg::new(Cx::new(x, y), t);
        let b = Heisenberg::new(Cx::new(u, v), s);
        let ab = a.compose(&b);
        let m = a.translation() * b.translation();
        prop_assert!(m.m.dist(&ab.translation().m) < 1e-12);
        let img = a.translation().apply(&b.lift());
        let back = Heisenberg::from_vector(&img).unwrap();
        prop_assert!((back.z - ab.z).norm() < 1e-12 && (back.t - ab.t).abs() < 1e-12);
    }

    #[test]
    fn tau_preserves_phi(seed in any::<u64>()) {
        let mut g = rng(seed);
        let a = sample::element(&mut g, Form::Siegel);
        let b = sample::element(&mut g, Form::Siegel);
        let t0 = trace_coordinates(&a, &b);
        let t1 = trace_coordinates(&tau_conjugate(&a), &tau_conjugate(&b));
        for (x, y) in t0.phi().iter().zip(t1.phi().iter()) {
            prop_assert!((x - y).norm() < 1e-9 * (1.0 + x.norm()));
        }
    }

    #[test]
    fn modular_relations_hold(alpha in -PI / 6.0 + 1e-6..PI / 6.0 - 1e-6, line in any::<bool>()) {
        let (fam, a) = if line {
            (Family::Line, PI / 6.0 + (alpha + PI / 6.0) / 2.0)
        } else {
            (Family::Point, alpha)
        };
        let rep = modular_rep(fam, a).unwrap();
        prop_assert!(rep.relation_residual() < 1e-10);
        let tr = rep.e.commutator(&rep.p).trace();
        prop_assert!((tr.re - rep.commutator_trace_closed_form()).abs() < 1e-10 && tr.im.abs() < 1e-10);
    }

    #[test]
    fn triangle_reflections_are_involutions(k in 0.02f64..0.98, which in 0usize..3) {
        let triple = [("inf", "inf", "inf"), ("4", "4", "4"), ("3", "4", "5")][which];
        let angles = Angles::parse(triple.0, triple.1, triple.2).unwrap();
        let iv = triangle_interval(&angles);
        let t = iv.t_min + (iv.t_max - iv.t_min) * k;
        let rep = triangle_rep(&angles, t, Form::Siegel, 1e-9).unwrap();
        for i in &rep.reflections {
            prop_assert!((*i * *i).m.dist(&su21::Mat3::identity()) < 1e-10);
            prop_assert!((i.trace() + 1.0).norm() < 1e-12);
        }
    }
}
