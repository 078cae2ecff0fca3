// Property tests for the gauge axioms, duality and the curve operations.

use gauge_curves::*;
use proptest::prelude::*;
use std::f64::consts::TAU;

fn vec_strategy() -> impl Strategy<Value = Vec2> {
    (0.0..TAU, -1.0f64..1.0).prop_map(|(theta, e)| Vec2::from_angle(theta) * 10f64.powf(e))
}

fn randers_b() -> impl Strategy<Value = f64> {
    -0.9f64..0.9
}

/// Convex polygon with vertices on an ellipse at sorted angles, shifted so the
/// origin stays inside.
fn polygon_strategy() -> impl Strategy<Value = Vec<Vec2>> {
    (
        proptest::collection::vec(0.0..1.0f64, 3..12),
        0.5f64..2.0,
        0.5f64..2.0,
        -0.2f64..0.2,
        -0.2f64..0.2,
    )
        .prop_filter_map("angular gaps below pi", |(raw, a, b, dx, dy)| {
            let total: f64 = raw.iter().map(|w| w + 0.2).sum();
            let mut theta: f64 = 0.0;
            let mut vertices = Vec::with_capacity(raw.len());
            for w in &raw {
                vertices.push(Vec2::new(a * theta.cos() + dx, b * theta.sin() + dy));
                theta += TAU * (w + 0.2) / total;
            }
            ConvexPolygon::new(vertices.clone()).ok().map(|_| vertices)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn randers_is_homogeneous(b in randers_b(), x in vec_strategy(), lambda in 1e-3f64..10.0) {
        let g = Gauge::randers(b).unwrap();
        let f = g.value(x);
        prop_assert!((g.value(x * lambda) - lambda * f).abs() <= 1e-12 * lambda * f);
    }

    #[test]
    fn randers_is_subadditive(b in randers_b(), x in vec_strategy(), y in vec_strategy()) {
        let g = Gauge::randers(b).unwrap();
        prop_assert!(g.value(x + y) <= (g.value(x) + g.value(y)) * (1.0 + 1e-12));
    }

    #[test]
    fn polygon_gauge_axioms(vertices in polygon_strategy(), x in vec_strategy(), y in vec_strategy()) {
        let g = Gauge::polygon(vertices).unwrap();
        prop_assert!(g.value(x) > 0.0);
        prop_assert!(g.value(x + y) <= (g.value(x) + g.value(y)) * (1.0 + 1e-12));
        prop_assert!((g.value(x * 3.0) - 3.0 * g.value(x)).abs() <= 1e-12 * g.value(x) * 3.0);
    }

    #[test]
    fn unit_circle_point_is_on_unit_circle(b in randers_b(), theta in 0.0..TAU) {
        let g = Gauge::randers(b).unwrap();
        prop_assert!((g.value(g.unit_circle_point(theta)) - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn euler_relation_with_central_differences(b in randers_b(), x in vec_strategy()) {
        let g = Gauge::randers(b).unwrap();
        let grad = g.grad_with(x, GradSpec::CentralDifference).unwrap();
        let f = g.value(x);
        prop_assert!((x.dot(grad) - f).abs() <= 1e-6 * f);
    }

    #[test]
    fn gradient_is_zero_homogeneous(b in randers_b(), x in vec_strategy()) {
        let g = Gauge::randers(b).unwrap();
        for spec in [GradSpec::Analytic, GradSpec::CentralDifference] {
            let g0 = g.grad_with(x, spec).unwrap();
            for lambda in [0.5, 2.0, 10.0] {
                prop_assert!((g.grad_with(x * lambda, spec).unwrap() - g0).euclid() <= 1e-6);
            }
        }
    }

    #[test]
    fn determinant_inequality(b in randers_b(), x in vec_strategy(), y in vec_strategy()) {
        let g = Gauge::randers(b).unwrap();
        let fa = AssociatedGauge::new(&g, AssociatedMethod::numeric()).unwrap();
        prop_assert!(y.det(x) <= g.value(y) * fa.value(x) + 1e-9);
    }

    #[test]
    fn orthogonality_transfers_to_associated_gauge(b in randers_b(), theta in 0.0..TAU, r in 0.1f64..10.0) {
        // x is Birkhoff orthogonal to its tangent direction on S, which is the right normal
        let g = Gauge::randers(b).unwrap();
        let fa = AssociatedGauge::of(&g);
        let faa = fa.associated(AssociatedMethod::numeric()).unwrap();
        let x = Vec2::from_angle(theta) * r;
        let grad = g.grad(x).unwrap();
        let y = Vec2::new(-grad.x2, grad.x1) * 0.7;
        prop_assert!(fa.birkhoff_orthogonal(x, y, 1e-8).unwrap());
        prop_assert!(faa.birkhoff_orthogonal(y, -x, 1e-8).unwrap());
        // a rotated y breaks both sides together
        let z = y + x * 0.3;
        prop_assert!(!fa.birkhoff_orthogonal(x, z, 1e-8).unwrap());
        prop_assert!(!faa.birkhoff_orthogonal(z, -x, 1e-8).unwrap());
    }

    #[test]
    fn numeric_and_closed_form_dual_agree(b in randers_b(), x in vec_strategy()) {
        let g = Gauge::randers(b).unwrap();
        let closed = AssociatedGauge::new(&g, AssociatedMethod::ClosedFormRanders).unwrap();
        let numeric = AssociatedGauge::new(&g, AssociatedMethod::numeric()).unwrap();
        let want = closed.value(x);
        prop_assert!((numeric.value(x) - want).abs() <= 1e-8 * want);
    }

    #[test]
    fn polygon_double_polar_is_negation(vertices in polygon_strategy()) {
        let once = polygon_polar(&vertices).unwrap();
        let twice = polygon_polar(&once).unwrap();
        let n = vertices.len();
        // the polar of edge (v_i, v_{i+1}) is listed at i, so two passes rotate by one
        let matches = (0..n).any(|shift| {
            (0..n).all(|i| (twice[(i + shift) % n] + vertices[i]).euclid() <= 1e-12 * vertices[i].euclid().max(1.0) * 10.0)
        });
        prop_assert!(matches, "{:?} vs {:?}", twice, vertices);
    }

    #[test]
    fn polygon_double_associated_is_reflection(vertices in polygon_strategy(), x in vec_strategy()) {
        let g = Gauge::polygon(vertices).unwrap();
        let d = DoubleAssociated::new(&g, AssociatedMethod::PolygonExact).unwrap();
        prop_assert!(d.residual(x).unwrap() <= 1e-12 * g.value(-x).max(1.0));
    }

    #[test]
    fn reverse_is_an_involution(t in 0.0..TAU, a in 0.5f64..3.0, b in 0.5f64..3.0) {
        let c = ParamCurve::ellipse(a, b).unwrap();
        let back = c.reverse().reverse();
        prop_assert_eq!(back.value(t), c.value(t));
        prop_assert_eq!(back.d1(t), c.d1(t));
        prop_assert_eq!(c.reverse().value(-t), c.value(t));
    }

    #[test]
    fn reversed_length_scales_with_asymmetry(b in randers_b(), len in 0.1f64..5.0) {
        let g = Gauge::randers(b).unwrap();
        let seg = ParamCurve::segment(Vec2::ZERO, Vec2::new(len, 0.0)).unwrap();
        let fwd = arc_length(&g, &seg, 1e-12).unwrap().total_length();
        let back = arc_length(&g, &seg.reverse(), 1e-12).unwrap().total_length();
        prop_assert!((fwd / back - (1.0 + b) / (1.0 - b)).abs() <= 1e-10 * (1.0 + b) / (1.0 - b));
    }

    #[test]
    fn arc_length_inverse_round_trips(b in randers_b(), frac in 0.0f64..1.0) {
        let g = Gauge::randers(b).unwrap();
        let c = ParamCurve::ellipse(2.0, 1.0).unwrap();
        let table = arc_length(&g, &c, 1e-10).unwrap();
        let s = frac * table.total_length();
        prop_assert!((table.s_at(table.tau_at(s)) - s).abs() <= 1e-10);
    }
}
