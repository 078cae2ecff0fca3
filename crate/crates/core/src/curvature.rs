//! The four curvature types of a curve in a gauge plane and the right and left
//! normal fields.
//!
//! Every quantity is evaluated from an arbitrary regular parametrization
//! `gamma(tau)`; the formulas are ratios that do not depend on the choice of
//! parameter. With `v = gamma'(tau)`:
//!
//! * Minkowski curvature `k_m = [v, gamma''] / F(v)^3`,
//! * right normal `n = (-F_x2(v), F_x1(v))`, a point of the unit circle of `F_a`,
//! * normal curvature `k_n = (F_x2(v))' / v1`, or `-(F_x1(v))' / v2`,
//! * circular curvature `k_c`, the same expression with `F_a` in place of `F`,
//! * left normal `((F_a)_x2(v), -(F_a)_x1(v))`, a point of the unit circle of `F`,
//! * arc-length curvature `k_l = F(n) k_m`.

use std::sync::OnceLock;

use crate::arclength::{arc_length, DEFAULT_QUADRATURE_TOL};
use crate::associated::{AssociatedGauge, AssociatedMethod};
use crate::curve::ParamCurve;
use crate::error::{GaugeError, Result};
use crate::gauge::Gauge;
use crate::vec2::Vec2;

/// Outer difference step, in Euclidean arc units along the curve, for
/// `d/dtau grad F(gamma'(tau))` when the gradient is analytic.
const RATE_STEP_ANALYTIC: f64 = 1e-3;
/// Same, when the gradient itself comes from central differences.
const RATE_STEP_NUMERIC: f64 = 2e-3;
/// `|k_c|` below this marks a sample as degenerate for the evolute.
pub const DEGENERATE_KC: f64 = 1e-12;

/// Which of the two equivalent quotients is used for `k_n` and `k_c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Branch {
    /// The quotient whose denominator `|gamma_i'|` is larger.
    #[default]
    Auto,
    /// `(F_x2(gamma'))' / gamma_1'`.
    First,
    /// `-(F_x1(gamma'))' / gamma_2'`.
    Second,
}

/// Evaluates curvatures and normals for one gauge. The associated gauge is built
/// on first use (or supplied explicitly) and shared across calls.
#[derive(Debug)]
pub struct CurvatureEngine {
    gauge: Gauge,
    associated: OnceLock<AssociatedGauge>,
}

impl Clone for CurvatureEngine {
    fn clone(&self) -> Self {
        let associated = OnceLock::new();
        if let Some(a) = self.associated.get() {
            let _ = associated.set(a.clone());
        }
        CurvatureEngine {
            gauge: self.gauge.clone(),
            associated,
        }
    }
}

impl CurvatureEngine {
    /// Fails with a capability error unless the gauge is declared smooth.
    pub fn new(gauge: &Gauge) -> Result<Self> {
        if !gauge.is_smooth() {
            return Err(GaugeError::capability(format!(
                "curvatures need a smooth gauge; {} is not",
                gauge.name()
            )));
        }
        Ok(CurvatureEngine {
            gauge: gauge.clone(),
            associated: OnceLock::new(),
        })
    }

    /// Uses the given method for `F_a` instead of the default one.
    pub fn with_associated(gauge: &Gauge, method: AssociatedMethod) -> Result<Self> {
        let engine = Self::new(gauge)?;
        let _ = engine.associated.set(AssociatedGauge::new(gauge, method)?);
        Ok(engine)
    }

    pub fn gauge(&self) -> &Gauge {
        &self.gauge
    }

    pub fn associated(&self) -> &AssociatedGauge {
        self.associated.get_or_init(|| AssociatedGauge::of(&self.gauge))
    }

    fn velocity(&self, curve: &ParamCurve, t: f64) -> Result<Vec2> {
        curve.check_regular_at(t)
    }

    /// `k_m = [gamma', gamma''] / F(gamma')^3`.
    pub fn minkowski(&self, curve: &ParamCurve, t: f64) -> Result<f64> {
        let v = self.velocity(curve, t)?;
        let a = curve.d2(t);
        let f = self.gauge.value(v);
        Ok(v.det(a) / (f * f * f))
    }

    /// Right normal `(-F_x2(gamma'), F_x1(gamma'))`.
    pub fn right_normal(&self, curve: &ParamCurve, t: f64) -> Result<Vec2> {
        let v = self.velocity(curve, t)?;
        let g = self.gauge.grad(v)?;
        Ok(Vec2::new(-g.x2, g.x1))
    }

    /// Left normal `((F_a)_x2(gamma'), -(F_a)_x1(gamma'))`, the negated right normal
    /// with respect to `F_a`.
    pub fn left_normal(&self, curve: &ParamCurve, t: f64) -> Result<Vec2> {
        let v = self.velocity(curve, t)?;
        let g = self.associated().grad(v)?;
        Ok(Vec2::new(g.x2, -g.x1))
    }

    /// Normal curvature, branch chosen by the larger velocity component.
    pub fn normal(&self, curve: &ParamCurve, t: f64) -> Result<f64> {
        self.normal_with_branch(curve, t, Branch::Auto)
    }

    pub fn normal_with_branch(&self, curve: &ParamCurve, t: f64, branch: Branch) -> Result<f64> {
        curvature_quotient(&self.gauge, curve, t, branch)
    }

    /// Circular curvature: the normal-curvature quotient taken with `F_a`.
    pub fn circular(&self, curve: &ParamCurve, t: f64) -> Result<f64> {
        self.circular_with_branch(curve, t, Branch::Auto)
    }

    pub fn circular_with_branch(&self, curve: &ParamCurve, t: f64, branch: Branch) -> Result<f64> {
        curvature_quotient(self.associated().as_gauge(), curve, t, branch)
    }

    /// `k_l = F(n_gamma) k_m`.
    pub fn arc_length_curvature(&self, curve: &ParamCurve, t: f64) -> Result<f64> {
        let n = self.right_normal(curve, t)?;
        Ok(self.gauge.value(n) * self.minkowski(curve, t)?)
    }

    /// `k_l` from the single closed expression in the raw derivatives,
    /// `[gamma', gamma''] / F(gamma')^3 * F(-F_x2(gamma'), F_x1(gamma'))`.
    pub fn arc_length_curvature_explicit(&self, curve: &ParamCurve, t: f64) -> Result<f64> {
        let (g1, g2) = (curve.d1(t), curve.d2(t));
        if g1.is_zero() {
            return Err(GaugeError::domain(format!("curve is not regular at tau = {t}")));
        }
        let grad = self.gauge.grad(g1)?;
        let f = self.gauge.value(g1);
        let numer = g1.x1 * g2.x2 - g2.x1 * g1.x2;
        Ok(numer / f.powi(3) * self.gauge.value(Vec2::new(-grad.x2, grad.x1)))
    }

    /// All quantities at one parameter value; `s` is passed through.
    pub fn sample(&self, curve: &ParamCurve, t: f64, s: f64) -> Result<CurvatureSample> {
        let v = self.velocity(curve, t)?;
        let right_normal = self.right_normal(curve, t)?;
        let k_m = self.minkowski(curve, t)?;
        let k_c = self.circular(curve, t)?;
        Ok(CurvatureSample {
            s,
            tau: t,
            point: curve.value(t),
            tangent: v / self.gauge.value(v),
            right_normal,
            left_normal: self.left_normal(curve, t)?,
            k_m,
            k_n: self.normal(curve, t)?,
            k_c,
            k_l: self.gauge.value(right_normal) * k_m,
            kc_degenerate: k_c.abs() < DEGENERATE_KC,
        })
    }

    /// Samples equally spaced in gauge arc length, endpoints included.
    pub fn profile(&self, curve: &ParamCurve, n_samples: usize, quadrature_tol: f64) -> Result<CurvatureProfile> {
        if n_samples < 2 {
            return Err(GaugeError::domain("a profile needs at least 2 samples"));
        }
        let table = arc_length(&self.gauge, curve, quadrature_tol)?;
        let samples = table
            .uniform_samples(n_samples)
            .into_iter()
            .map(|(s, t)| self.sample(curve, t, s))
            .collect::<Result<Vec<_>>>()?;
        Ok(CurvatureProfile {
            gauge: self.gauge.name(),
            curve: curve.label().to_string(),
            total_length: table.total_length(),
            samples,
        })
    }
}

/// `d/dtau grad F(gamma'(tau))`: exact through the Hessian when the gauge has one,
/// otherwise a five-point difference in `tau` with a step of fixed Euclidean
/// length along the curve.
fn gradient_rate(gauge: &Gauge, curve: &ParamCurve, t: f64) -> Result<Vec2> {
    let v = curve.d1(t);
    if gauge.has_analytic_gradient() {
        if let Some(r) = gauge.hessian_apply(v, curve.d2(t)) {
            return Ok(r);
        }
    }
    let step = if gauge.has_analytic_gradient() {
        RATE_STEP_ANALYTIC
    } else {
        RATE_STEP_NUMERIC
    };
    let h = step / v.euclid();
    let g = |u: f64| gauge.grad(curve.d1(u));
    let (m2, m1, p1, p2) = (g(t - 2.0 * h)?, g(t - h)?, g(t + h)?, g(t + 2.0 * h)?);
    Ok((m2 - m1 * 8.0 + p1 * 8.0 - p2) / (12.0 * h))
}

fn curvature_quotient(gauge: &Gauge, curve: &ParamCurve, t: f64, branch: Branch) -> Result<f64> {
    let v = curve.check_regular_at(t)?;
    let rate = gradient_rate(gauge, curve, t)?;
    let first = match branch {
        Branch::Auto => v.x1.abs() >= v.x2.abs(),
        Branch::First => true,
        Branch::Second => false,
    };
    if first {
        if v.x1 == 0.0 {
            return Err(GaugeError::domain(format!("gamma_1' vanishes at tau = {t}")));
        }
        Ok(rate.x2 / v.x1)
    } else {
        if v.x2 == 0.0 {
            return Err(GaugeError::domain(format!("gamma_2' vanishes at tau = {t}")));
        }
        Ok(-rate.x1 / v.x2)
    }
}

/// All curvature data at one point of a curve.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureSample {
    pub s: f64,
    pub tau: f64,
    pub point: Vec2,
    /// Unit tangent, `F(tangent) = 1`.
    pub tangent: Vec2,
    /// On the unit circle of `F_a`, with `[tangent, right_normal] = 1`.
    pub right_normal: Vec2,
    /// On the unit circle of `F`, with `[tangent, left_normal] < 0`.
    pub left_normal: Vec2,
    pub k_m: f64,
    pub k_n: f64,
    pub k_c: f64,
    pub k_l: f64,
    /// `|k_c|` is below [`DEGENERATE_KC`]; the evolute is undefined here.
    pub kc_degenerate: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureProfile {
    pub gauge: String,
    pub curve: String,
    pub total_length: f64,
    pub samples: Vec<CurvatureSample>,
}

impl CurvatureProfile {
    /// Arc-length positions where the evolute is undefined.
    pub fn degenerate_s(&self) -> Vec<f64> {
        self.samples.iter().filter(|r| r.kc_degenerate).map(|r| r.s).collect()
    }
}

pub fn minkowski_curvature(gauge: &Gauge, curve: &ParamCurve, t: f64) -> Result<f64> {
    CurvatureEngine::new(gauge)?.minkowski(curve, t)
}

pub fn right_normal(gauge: &Gauge, curve: &ParamCurve, t: f64) -> Result<Vec2> {
    CurvatureEngine::new(gauge)?.right_normal(curve, t)
}

pub fn normal_curvature(gauge: &Gauge, curve: &ParamCurve, t: f64) -> Result<f64> {
    CurvatureEngine::new(gauge)?.normal(curve, t)
}

pub fn circular_curvature(gauge: &Gauge, curve: &ParamCurve, t: f64) -> Result<f64> {
    CurvatureEngine::new(gauge)?.circular(curve, t)
}

pub fn arc_length_curvature(gauge: &Gauge, curve: &ParamCurve, t: f64) -> Result<f64> {
    CurvatureEngine::new(gauge)?.arc_length_curvature(curve, t)
}

pub fn left_normal(gauge: &Gauge, curve: &ParamCurve, t: f64) -> Result<Vec2> {
    CurvatureEngine::new(gauge)?.left_normal(curve, t)
}

/// Curvature profile with the default quadrature tolerance.
pub fn profile(gauge: &Gauge, curve: &ParamCurve, n_samples: usize) -> Result<CurvatureProfile> {
    CurvatureEngine::new(gauge)?.profile(curve, n_samples, DEFAULT_QUADRATURE_TOL)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_PI_2, TAU};

    fn randers() -> Gauge {
        Gauge::randers(0.5).unwrap()
    }

    fn unit_circle() -> ParamCurve {
        ParamCurve::circle(1.0).unwrap()
    }

    #[test]
    fn euclidean_circle_reduces_to_classical_curvature() {
        let e = CurvatureEngine::new(&Gauge::euclidean()).unwrap();
        for r in [0.5, 1.0, 3.0] {
            let c = ParamCurve::circle(r).unwrap();
            for i in 0..12 {
                let t = 0.5 * i as f64 + 0.1;
                assert_abs_diff_eq!(e.minkowski(&c, t).unwrap(), 1.0 / r, epsilon = 1e-12);
                assert_abs_diff_eq!(e.normal(&c, t).unwrap(), 1.0 / r, epsilon = 1e-12);
                assert_abs_diff_eq!(e.circular(&c, t).unwrap(), 1.0 / r, epsilon = 1e-8);
                assert_abs_diff_eq!(e.arc_length_curvature(&c, t).unwrap(), 1.0 / r, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn straight_line_has_zero_curvature() {
        let l = ParamCurve::segment(Vec2::new(-1.0, 0.3), Vec2::new(2.0, 1.0)).unwrap();
        for g in [Gauge::euclidean(), randers()] {
            let e = CurvatureEngine::new(&g).unwrap();
            assert_eq!(e.minkowski(&l, 0.4).unwrap(), 0.0);
            assert_abs_diff_eq!(e.normal(&l, 0.4).unwrap(), 0.0, epsilon = 1e-12);
            assert_abs_diff_eq!(e.circular(&l, 0.4).unwrap(), 0.0, epsilon = 1e-8);
        }
    }

    #[test]
    fn randers_circle_minkowski_curvature() {
        let e = CurvatureEngine::new(&randers()).unwrap();
        let c = unit_circle();
        assert_abs_diff_eq!(e.minkowski(&c, FRAC_PI_2).unwrap(), 8.0, epsilon = 1e-12);
        for i in 0..20 {
            let t = 0.31 * i as f64;
            let want = (1.0 - 0.5 * t.sin()).powi(-3);
            assert_abs_diff_eq!(e.minkowski(&c, t).unwrap(), want, epsilon = 1e-12);
        }
    }

    #[test]
    fn randers_circle_right_normal() {
        let e = CurvatureEngine::new(&randers()).unwrap();
        let c = unit_circle();
        let n = e.right_normal(&c, 0.0).unwrap();
        assert_abs_diff_eq!(n.x1, -1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(n.x2, 0.5, epsilon = 1e-15);
        for i in 0..20 {
            let t = 0.31 * i as f64;
            let n = e.right_normal(&c, t).unwrap();
            assert!((n - Vec2::new(-t.cos(), 0.5 - t.sin())).euclid() < 1e-14);
            // on the unit circle of F_a
            assert_abs_diff_eq!(e.associated().value(n), 1.0, epsilon = 1e-12);
        }
        let euclid = CurvatureEngine::new(&Gauge::euclidean()).unwrap();
        let n = euclid.right_normal(&c, 0.0).unwrap();
        assert!((n - Vec2::new(-1.0, 0.0)).euclid() < 1e-15);
    }

    #[test]
    fn randers_circle_normal_curvature_is_one() {
        let e = CurvatureEngine::new(&randers()).unwrap();
        let c = unit_circle();
        for i in 0..40 {
            let t = TAU * i as f64 / 40.0;
            assert_abs_diff_eq!(e.normal(&c, t).unwrap(), 1.0, epsilon = 1e-12);
        }
        // Finite-difference route for the same quantity through a curve without
        // analytic Hessian information.
        let numeric = ParamCurve::from_fn((0.0, TAU), Vec2::from_angle).unwrap();
        let custom = Gauge::custom("randers-bb", |x: Vec2| x.euclid() + 0.5 * x.x1, true, true);
        let e = CurvatureEngine::new(&custom).unwrap();
        for i in 0..10 {
            let t = 0.6 * i as f64 + 0.05;
            assert_abs_diff_eq!(e.normal(&numeric, t).unwrap(), 1.0, epsilon = 1e-4);
        }
    }

    #[test]
    fn branches_agree_on_ellipse() {
        let c = ParamCurve::ellipse(2.0, 1.0).unwrap();
        for g in [Gauge::euclidean(), randers(), Gauge::randers(-0.3).unwrap()] {
            let e = CurvatureEngine::new(&g).unwrap();
            for i in 1..12 {
                let t = 0.5 * i as f64 + 0.05;
                let a = e.normal_with_branch(&c, t, Branch::First).unwrap();
                let b = e.normal_with_branch(&c, t, Branch::Second).unwrap();
                assert!((a - b).abs() < 1e-6, "{} at {t}: {a} vs {b}", g.name());
                let a = e.circular_with_branch(&c, t, Branch::First).unwrap();
                let b = e.circular_with_branch(&c, t, Branch::Second).unwrap();
                assert!((a - b).abs() < 1e-6, "{} at {t}: {a} vs {b}", g.name());
            }
        }
    }

    #[test]
    fn randers_circle_circular_curvature() {
        let e = CurvatureEngine::new(&randers()).unwrap();
        let c = unit_circle();
        assert_abs_diff_eq!(e.circular(&c, FRAC_PI_2).unwrap(), 1.539_600_717_839_002, epsilon = 1e-6);
        for i in 0..30 {
            let t = 0.21 * i as f64;
            let want = (1.0 - 0.25 * t.sin().powi(2)).powf(-1.5);
            assert_abs_diff_eq!(e.circular(&c, t).unwrap(), want, epsilon = 1e-6);
        }
    }

    #[test]
    fn randers_circle_arc_length_curvature() {
        let e = CurvatureEngine::new(&randers()).unwrap();
        let c = unit_circle();
        assert_abs_diff_eq!(
            e.arc_length_curvature(&c, 0.0).unwrap(),
            1.25f64.sqrt() - 0.5,
            epsilon = 1e-12
        );
        for i in 0..20 {
            let t = 0.3 * i as f64;
            let direct = e.arc_length_curvature(&c, t).unwrap();
            let explicit = e.arc_length_curvature_explicit(&c, t).unwrap();
            assert_abs_diff_eq!(direct, explicit, epsilon = 1e-12);
            let f_n = (1.0 - t.sin() + 0.25).sqrt() - 0.5 * t.cos();
            assert_abs_diff_eq!(direct, f_n * (1.0 - 0.5 * t.sin()).powi(-3), epsilon = 1e-11);
        }
    }

    #[test]
    fn left_normal_examples() {
        let c = unit_circle();
        let e = CurvatureEngine::new(&Gauge::euclidean()).unwrap();
        let l = e.left_normal(&c, 0.0).unwrap();
        assert!((l - Vec2::new(1.0, 0.0)).euclid() < 1e-9);
        let r = CurvatureEngine::new(&randers()).unwrap();
        let l = r.left_normal(&c, 0.0).unwrap();
        assert!((l - Vec2::new(2.0 / 3.0, 0.0)).euclid() < 1e-9);
        let ell = ParamCurve::ellipse(2.0, 1.0).unwrap();
        for i in 0..100 {
            let t = 0.0628 * i as f64;
            let l = r.left_normal(&ell, t).unwrap();
            assert_abs_diff_eq!(r.gauge().value(l), 1.0, epsilon = 1e-8);
            assert!(ell.d1(t).det(l) < 0.0);
        }
    }

    #[test]
    fn polygon_gauge_is_rejected() {
        let p = Gauge::polygon(vec![Vec2::new(1.0, 0.0), Vec2::new(0.0, 1.0), Vec2::new(-1.0, -1.0)]).unwrap();
        assert!(matches!(
            minkowski_curvature(&p, &unit_circle(), 0.0),
            Err(GaugeError::Capability(_))
        ));
        assert!(matches!(profile(&p, &unit_circle(), 8), Err(GaugeError::Capability(_))));
    }

    #[test]
    fn profile_of_euclidean_circle() {
        let c = ParamCurve::circle(2.0).unwrap();
        let p = profile(&Gauge::euclidean(), &c, 8).unwrap();
        assert_eq!(p.samples.len(), 8);
        for r in &p.samples {
            for k in [r.k_m, r.k_n, r.k_c, r.k_l] {
                assert_abs_diff_eq!(k, 0.5, epsilon = 1e-8);
            }
        }
        let ds = p.total_length / 7.0;
        for w in p.samples.windows(2) {
            assert_abs_diff_eq!(w[1].s - w[0].s, ds, epsilon = 1e-10);
        }
        assert!(p.degenerate_s().is_empty());
        assert!(profile(&Gauge::euclidean(), &c, 1).is_err());
    }

    #[test]
    fn profile_invariants_hold() {
        let g = randers();
        let c = ParamCurve::ellipse(2.0, 1.0).unwrap();
        let p = profile(&g, &c, 64).unwrap();
        let a = AssociatedGauge::of(&g);
        for r in &p.samples {
            assert_abs_diff_eq!(g.value(r.tangent), 1.0, epsilon = 1e-9);
            assert_abs_diff_eq!(a.value(r.right_normal), 1.0, epsilon = 1e-8);
            assert_abs_diff_eq!(g.value(r.left_normal), 1.0, epsilon = 1e-8);
            assert_abs_diff_eq!(r.tangent.det(r.right_normal), 1.0, epsilon = 1e-8);
            assert!(r.tangent.det(r.left_normal) < 0.0);
        }
        let circle = profile(&g, &unit_circle(), 64).unwrap();
        for r in &circle.samples {
            assert_abs_diff_eq!(r.k_n, 1.0, epsilon = 1e-6);
        }
    }

    #[test]
    fn vanishing_circular_curvature_is_flagged() {
        let line = ParamCurve::segment(Vec2::ZERO, Vec2::new(1.0, 2.0)).unwrap();
        let p = profile(&randers(), &line, 5).unwrap();
        assert_eq!(p.degenerate_s().len(), 5);
        let p = profile(&randers(), &unit_circle(), 5).unwrap();
        assert!(p.degenerate_s().is_empty());
    }
}
