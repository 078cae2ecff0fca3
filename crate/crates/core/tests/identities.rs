// Curvature identities and cross-checks over a small grid of gauges and curves.

use gauge_curves::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SAMPLES: usize = 200;

fn gauges() -> Vec<Gauge> {
    vec![Gauge::euclidean(), Gauge::randers(0.3).unwrap(), Gauge::randers(0.7).unwrap()]
}

fn curves() -> Vec<ParamCurve> {
    vec![
        ParamCurve::circle(1.0).unwrap(),
        ParamCurve::ellipse(2.0, 1.0).unwrap(),
        ParamCurve::lissajous(1.0, 0.5, 2.0).unwrap(),
    ]
}

fn for_each_case(mut body: impl FnMut(&CurvatureEngine, &ParamCurve, &ArcLengthTable, f64, f64)) {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for g in gauges() {
        let engine = CurvatureEngine::new(&g).unwrap();
        for c in curves() {
            let table = arc_length(&g, &c, 1e-12).unwrap();
            let total = table.total_length();
            for _ in 0..SAMPLES {
                // keep a margin from the ends so that centred differences in s stay inside
                let s = rng.random_range(0.01 * total..0.99 * total);
                body(&engine, &c, &table, s, table.tau_at(s));
            }
        }
    }
}

#[test]
fn arc_length_curvature_is_normal_length_times_minkowski() {
    for_each_case(|e, c, _, _, t| {
        let explicit = e.arc_length_curvature_explicit(c, t).unwrap();
        let product = e.gauge().value(e.right_normal(c, t).unwrap()) * e.minkowski(c, t).unwrap();
        assert!((explicit - product).abs() <= 1e-9, "{} {}: {explicit} vs {product}", e.gauge().name(), c.label());
    });
}

#[test]
fn circular_curvature_is_normal_curvature_under_associated_gauge() {
    // independent route: F_a from the numeric supremum, partials by central differences
    for g in gauges() {
        let engine = CurvatureEngine::new(&g).unwrap();
        let fa = AssociatedGauge::new(&g, AssociatedMethod::numeric()).unwrap();
        let dual = CurvatureEngine::new(fa.as_gauge()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for c in curves() {
            let (a, b) = c.domain();
            for _ in 0..SAMPLES {
                let t = rng.random_range(a..b);
                let kc = engine.circular(&c, t).unwrap();
                let kn = dual.normal(&c, t).unwrap();
                assert!((kc - kn).abs() <= 1e-5, "{} {} tau {t}: {kc} vs {kn}", g.name(), c.label());
            }
        }
    }
}

fn point_at(c: &ParamCurve, table: &ArcLengthTable, s: f64) -> Vec2 {
    c.value(table.tau_at(s))
}

#[test]
fn frenet_relation_holds_in_arc_length() {
    let h = 4e-4;
    for_each_case(|e, c, table, s, t| {
        let p = |k: f64| point_at(c, table, s + k * h);
        // five-point second derivative
        let dd = (p(-2.0) * -1.0 + p(-1.0) * 16.0 - p(0.0) * 30.0 + p(1.0) * 16.0 - p(2.0)) / (12.0 * h * h);
        let want = e.right_normal(c, t).unwrap() * e.minkowski(c, t).unwrap();
        assert!((dd - want).euclid() <= 1e-5, "{} {} s {s}: {}", e.gauge().name(), c.label(), (dd - want).euclid());
    });
}

#[test]
fn right_normal_derivative_is_minus_normal_curvature_times_tangent() {
    let h = 1e-3;
    for_each_case(|e, c, table, s, t| {
        let n = |k: f64| e.right_normal(c, table.tau_at(s + k * h)).unwrap();
        let dn = (n(-2.0) - n(-1.0) * 8.0 + n(1.0) * 8.0 - n(2.0)) / (12.0 * h);
        let v = c.d1(t);
        let tangent = v / e.gauge().value(v);
        let residual = (dn + tangent * e.normal(c, t).unwrap()).euclid();
        assert!(residual <= 1e-5, "{} {} s {s}: {residual}", e.gauge().name(), c.label());
    });
}

#[test]
fn tangent_and_right_normal_have_unit_determinant() {
    for_each_case(|e, c, _, _, t| {
        let v = c.d1(t);
        let tangent = v / e.gauge().value(v);
        let d = det_form(tangent, e.right_normal(c, t).unwrap());
        assert!((d - 1.0).abs() <= 1e-8);
    });
}

#[test]
fn euler_relation_along_curves() {
    for_each_case(|e, c, _, _, t| {
        let v = c.d1(t);
        let f = e.gauge().value(v);
        let g = e.gauge().grad_with(v, GradSpec::Analytic).unwrap();
        assert!((v.dot(g) - f).abs() <= 1e-9 * f);
    });
}

#[test]
fn curvatures_are_parametrization_invariant() {
    let h = |u: f64| u + 0.3 * u.sin();
    for g in gauges() {
        let engine = CurvatureEngine::new(&g).unwrap();
        for c in curves() {
            let (a, b) = c.domain();
            let re = c.reparametrized((a, b), h, |u| 1.0 + 0.3 * u.cos(), |u| -0.3 * u.sin()).unwrap();
            for i in 0..40 {
                let u = a + (b - a) * (i as f64 + 0.5) / 40.0;
                let t = h(u);
                let pairs = [
                    (engine.minkowski(&c, t).unwrap(), engine.minkowski(&re, u).unwrap()),
                    (engine.normal(&c, t).unwrap(), engine.normal(&re, u).unwrap()),
                    (engine.circular(&c, t).unwrap(), engine.circular(&re, u).unwrap()),
                    (engine.arc_length_curvature(&c, t).unwrap(), engine.arc_length_curvature(&re, u).unwrap()),
                ];
                for (k0, k1) in pairs {
                    assert!((k0 - k1).abs() <= 1e-6, "{} {} u {u}: {k0} vs {k1}", g.name(), c.label());
                }
            }
        }
    }
}

#[test]
fn euclidean_curvatures_coincide() {
    let e = CurvatureEngine::new(&Gauge::euclidean()).unwrap();
    for c in curves() {
        let p = e.profile(&c, 64, 1e-10).unwrap();
        for s in &p.samples {
            for k in [s.k_n, s.k_c, s.k_l] {
                assert!((k - s.k_m).abs() <= 1e-9, "{} s {}: {k} vs {}", c.label(), s.s, s.k_m);
            }
        }
    }
}

#[test]
fn involute_circular_curvature_is_reciprocal_distance() {
    let g = Gauge::randers(0.5).unwrap();
    let engine = CurvatureEngine::new(&g).unwrap();
    let circle = ParamCurve::circle(1.0).unwrap();
    let table = arc_length(&g, &circle, 1e-12).unwrap();
    let c = 10.0;
    let inv = involute_curve(&g, &circle, c, &table);
    for (s, t) in table.uniform_samples(64) {
        let k = engine.circular(&inv, t).unwrap();
        assert!((k - 1.0 / (c - s)).abs() <= 1e-5, "s {s}: {k}");
    }
}

#[test]
fn involute_tangent_follows_left_normal_derivative() {
    let g = Gauge::randers(0.5).unwrap();
    let engine = CurvatureEngine::new(&g).unwrap();
    let circle = ParamCurve::circle(1.0).unwrap();
    let table = arc_length(&g, &circle, 1e-12).unwrap();
    let c = 4.0;
    let inv = involute_curve(&g, &circle, c, &table);
    let h = 1e-4;
    for (s, t) in table.uniform_samples(40).into_iter().skip(1).take(38) {
        let at = |k: f64| inv.value(table.tau_at(s + k * h));
        let di = (at(-2.0) - at(-1.0) * 8.0 + at(1.0) * 8.0 - at(2.0)) / (12.0 * h);
        let kl = engine.arc_length_curvature(&circle, t).unwrap();
        if (c - s).abs() < 1e-3 {
            continue;
        }
        // F is not symmetric, so the speed identity only holds where (c - s) k_l > 0
        if (c - s) * kl > 0.0 {
            assert!((g.value(di) - (c - s) * kl).abs() <= 1e-5, "s {s}");
        }
        // gamma''(s) direction
        let v = circle.d1(t);
        let f = g.value(v);
        let grad = g.grad(v).unwrap();
        let a = circle.d2(t);
        let dt = (a / f - v * (grad.dot(a) / (f * f))) / f;
        assert!(di.det(dt).abs() <= 1e-6 * di.euclid() * dt.euclid(), "s {s}: {di} {dt}");
    }
}
