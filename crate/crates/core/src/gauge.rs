//! Gauges (convex distance functions) on the plane: evaluation, gradients, unit
//! circle geometry and sample-based validation of the axioms.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{GaugeError, Result};
use crate::vec2::Vec2;

pub type ScalarFn = Arc<dyn Fn(Vec2) -> f64 + Send + Sync>;
pub type VectorFn = Arc<dyn Fn(Vec2) -> Vec2 + Send + Sync>;
pub type HessianFn = Arc<dyn Fn(Vec2, Vec2) -> Vec2 + Send + Sync>;

/// Seed used by [`Gauge::validate`] when the caller does not supply one.
pub const DEFAULT_VALIDATION_SEED: u64 = 0x5eed_6a06;

/// How partial derivatives are obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GradSpec {
    /// Use the analytic gradient when the gauge has one, central differences otherwise.
    #[default]
    Auto,
    /// Require an analytic gradient.
    Analytic,
    /// Central differences with relative step `cbrt(eps) * max(1, |x_i|)`.
    CentralDifference,
}

/// A convex polygon with the origin strictly inside, used as a unit disk.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexPolygon {
    vertices: Vec<Vec2>,
    // polar[i] comes from the edge (v[i], v[i+1]); F(x) = max_i [x, polar[i]].
    polar: Vec<Vec2>,
}

impl ConvexPolygon {
    pub fn new(vertices: Vec<Vec2>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(GaugeError::domain(format!(
                "polygon needs at least 3 vertices, got {}",
                vertices.len()
            )));
        }
        for v in &vertices {
            v.check_finite()?;
        }
        let n = vertices.len();
        let scale = vertices.iter().map(|v| v.max_abs()).fold(0.0, f64::max);
        for i in 0..n {
            let p = vertices[i];
            let q = vertices[(i + 1) % n];
            let r = vertices[(i + 2) % n];
            if p.det(q) <= 1e-14 * scale * scale {
                return Err(GaugeError::domain(format!(
                    "origin is not strictly inside the polygon (edge {p} -> {q})"
                )));
            }
            if (q - p).det(r - q) <= 0.0 {
                return Err(GaugeError::domain(format!(
                    "polygon vertices are not in strictly convex counter-clockwise order at {q}"
                )));
            }
        }
        // Winding number one: the angles of consecutive vertices advance by less than
        // a full turn in total.
        let turn: f64 = (0..n)
            .map(|i| {
                let p = vertices[i];
                let q = vertices[(i + 1) % n];
                p.det(q).atan2(p.dot(q))
            })
            .sum();
        if (turn - std::f64::consts::TAU).abs() > 1e-6 {
            return Err(GaugeError::domain("polygon winds around the origin more than once"));
        }
        let polar = polar_vertices(&vertices);
        Ok(ConvexPolygon { vertices, polar })
    }

    pub fn vertices(&self) -> &[Vec2] {
        &self.vertices
    }

    /// Vertices of the polar disk `{x : [v_i, x] <= 1}`.
    pub fn polar(&self) -> &[Vec2] {
        &self.polar
    }

    fn eval(&self, x: Vec2) -> f64 {
        self.polar
            .iter()
            .map(|&w| x.det(w))
            .fold(f64::NEG_INFINITY, f64::max)
            .max(0.0)
    }
}

// Edge (p, q) of the unit polygon maps to the polar vertex (q - p) / [p, q].
fn polar_vertices(vertices: &[Vec2]) -> Vec<Vec2> {
    let n = vertices.len();
    (0..n)
        .map(|i| {
            let p = vertices[i];
            let q = vertices[(i + 1) % n];
            (q - p) / p.det(q)
        })
        .collect()
}

/// Vertices of the unit disk of the associated gauge of the polygonal gauge with
/// the given unit disk. Output vertex `i` comes from the edge `(v[i], v[i+1])`, so
/// the result is again counter-clockwise.
pub fn polygon_polar(vertices: &[Vec2]) -> Result<Vec<Vec2>> {
    Ok(ConvexPolygon::new(vertices.to_vec())?.polar)
}

/// A user-supplied gauge.
#[derive(Clone)]
pub struct CustomGauge {
    pub name: String,
    pub eval: ScalarFn,
    pub grad: Option<VectorFn>,
    /// `(x, v) -> D^2F(x) v`.
    pub hessian: Option<HessianFn>,
}

impl fmt::Debug for CustomGauge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CustomGauge")
            .field("name", &self.name)
            .field("analytic_grad", &self.grad.is_some())
            .field("analytic_hessian", &self.hessian.is_some())
            .finish()
    }
}

#[derive(Debug, Clone)]
pub enum GaugeKind {
    Euclidean,
    /// `F(x) = |x| + b x1` with `|b| < 1`.
    Randers { b: f64 },
    Polygon(ConvexPolygon),
    Custom(CustomGauge),
}

/// A convex distance function on the plane together with its regularity flags.
///
/// Cloning is cheap; custom evaluators are shared behind `Arc`.
#[derive(Debug, Clone)]
pub struct Gauge {
    kind: GaugeKind,
    smooth: bool,
    strictly_convex: bool,
}

impl Gauge {
    pub fn euclidean() -> Self {
        Gauge {
            kind: GaugeKind::Euclidean,
            smooth: true,
            strictly_convex: true,
        }
    }

    pub fn randers(b: f64) -> Result<Self> {
        if !b.is_finite() || b.abs() >= 1.0 {
            return Err(GaugeError::domain(format!("randers parameter must satisfy |b| < 1, got {b}")));
        }
        Ok(Gauge {
            kind: GaugeKind::Randers { b },
            smooth: true,
            strictly_convex: true,
        })
    }

    /// Polygonal gauge whose unit disk is the given polygon (counter-clockwise,
    /// origin strictly inside).
    pub fn polygon(vertices: Vec<Vec2>) -> Result<Self> {
        Ok(Gauge {
            kind: GaugeKind::Polygon(ConvexPolygon::new(vertices)?),
            smooth: false,
            strictly_convex: false,
        })
    }

    /// A black-box gauge. The flags are trusted; [`Gauge::validate`] can falsify them.
    pub fn custom<F>(name: impl Into<String>, eval: F, smooth: bool, strictly_convex: bool) -> Self
    where
        F: Fn(Vec2) -> f64 + Send + Sync + 'static,
    {
        Gauge {
            kind: GaugeKind::Custom(CustomGauge {
                name: name.into(),
                eval: Arc::new(eval),
                grad: None,
                hessian: None,
            }),
            smooth,
            strictly_convex,
        }
    }

    /// Attaches an analytic gradient to a custom gauge. No-op for built-in kinds.
    pub fn with_gradient<G>(mut self, grad: G) -> Self
    where
        G: Fn(Vec2) -> Vec2 + Send + Sync + 'static,
    {
        if let GaugeKind::Custom(c) = &mut self.kind {
            c.grad = Some(Arc::new(grad));
        }
        self
    }

    /// Attaches a closed-form Hessian action `(x, v) -> D^2F(x) v` to a custom
    /// gauge. Only used when an analytic gradient is attached as well.
    pub fn with_hessian<H>(mut self, hessian: H) -> Self
    where
        H: Fn(Vec2, Vec2) -> Vec2 + Send + Sync + 'static,
    {
        if let GaugeKind::Custom(c) = &mut self.kind {
            c.hessian = Some(Arc::new(hessian));
        }
        self
    }

    pub fn kind(&self) -> &GaugeKind {
        &self.kind
    }

    pub fn is_smooth(&self) -> bool {
        self.smooth
    }

    pub fn is_strictly_convex(&self) -> bool {
        self.strictly_convex
    }

    pub fn name(&self) -> String {
        match &self.kind {
            GaugeKind::Euclidean => "euclidean".into(),
            GaugeKind::Randers { b } => format!("randers(b={b})"),
            GaugeKind::Polygon(p) => format!("polygon({} vertices)", p.vertices.len()),
            GaugeKind::Custom(c) => c.name.clone(),
        }
    }

    pub fn has_analytic_gradient(&self) -> bool {
        match &self.kind {
            GaugeKind::Euclidean | GaugeKind::Randers { .. } => true,
            GaugeKind::Polygon(_) => false,
            GaugeKind::Custom(c) => c.grad.is_some(),
        }
    }

    /// `F(x)`, rejecting non-finite input.
    pub fn eval(&self, x: Vec2) -> Result<f64> {
        x.check_finite()?;
        Ok(self.value(x))
    }

    /// `F(x)` without input checks; non-finite input yields a non-finite result.
    #[inline]
    pub fn value(&self, x: Vec2) -> f64 {
        match &self.kind {
            GaugeKind::Euclidean => x.euclid(),
            GaugeKind::Randers { b } => x.euclid() + b * x.x1,
            GaugeKind::Polygon(p) => p.eval(x),
            GaugeKind::Custom(c) => {
                if x.is_zero() {
                    0.0
                } else {
                    (c.eval)(x)
                }
            }
        }
    }

    /// `(F_{x1}(x), F_{x2}(x))` with the default [`GradSpec`].
    pub fn grad(&self, x: Vec2) -> Result<Vec2> {
        self.grad_with(x, GradSpec::Auto)
    }

    pub fn grad_with(&self, x: Vec2, spec: GradSpec) -> Result<Vec2> {
        x.check_finite()?;
        if x.is_zero() {
            return Err(GaugeError::domain("gradient of a gauge is undefined at the origin"));
        }
        if let GaugeKind::Polygon(_) = self.kind {
            return Err(GaugeError::capability(
                "polygonal gauges are not differentiable; derivative-based operations are unavailable",
            ));
        }
        let analytic = match spec {
            GradSpec::Auto => self.has_analytic_gradient(),
            GradSpec::Analytic => {
                if !self.has_analytic_gradient() {
                    return Err(GaugeError::capability(format!(
                        "gauge {} has no analytic gradient",
                        self.name()
                    )));
                }
                true
            }
            GradSpec::CentralDifference => false,
        };
        if analytic {
            Ok(self.analytic_grad(x))
        } else {
            Ok(self.central_grad(x))
        }
    }

    fn analytic_grad(&self, x: Vec2) -> Vec2 {
        match &self.kind {
            GaugeKind::Euclidean => x / x.euclid(),
            GaugeKind::Randers { b } => x / x.euclid() + Vec2::new(*b, 0.0),
            GaugeKind::Custom(CustomGauge { grad: Some(g), .. }) => g(x),
            _ => unreachable!("analytic_grad called without an analytic gradient"),
        }
    }

    fn central_grad(&self, x: Vec2) -> Vec2 {
        // The gradient of a positively homogeneous function is 0-homogeneous, so
        // differencing at the Euclidean direction of x keeps the step well scaled.
        let u = x / x.euclid();
        let eps_cbrt = f64::EPSILON.cbrt();
        let h1 = eps_cbrt * u.x1.abs().max(1.0);
        let h2 = eps_cbrt * u.x2.abs().max(1.0);
        let e1 = Vec2::new(h1, 0.0);
        let e2 = Vec2::new(0.0, h2);
        Vec2::new(
            (self.value(u + e1) - self.value(u - e1)) / (2.0 * h1),
            (self.value(u + e2) - self.value(u - e2)) / (2.0 * h2),
        )
    }

    /// Second partials applied to `v`, i.e. `D^2F(x) v`, when known in closed form.
    pub fn hessian_apply(&self, x: Vec2, v: Vec2) -> Option<Vec2> {
        match &self.kind {
            // The linear Randers term has no curvature, so both share the Euclidean Hessian
            // (I - u u^T) / |x|.
            GaugeKind::Euclidean | GaugeKind::Randers { .. } => {
                let r = x.euclid();
                let u = x / r;
                Some((v - u * u.dot(v)) / r)
            }
            GaugeKind::Custom(CustomGauge {
                grad: Some(_),
                hessian: Some(h),
                ..
            }) => Some(h(x, v)),
            _ => None,
        }
    }

    /// The point of the unit circle `S` in direction `theta`.
    pub fn unit_circle_point(&self, theta: f64) -> Vec2 {
        let d = Vec2::from_angle(theta);
        d / self.value(d)
    }

    /// Sample-based falsification of the gauge axioms and the declared flags.
    pub fn validate(&self, n_samples: usize) -> ValidationReport {
        self.validate_seeded(n_samples, DEFAULT_VALIDATION_SEED)
    }

    pub fn validate_seeded(&self, n_samples: usize, seed: u64) -> ValidationReport {
        let n_samples = n_samples.max(1);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut report = ValidationReport {
            samples: n_samples,
            ..ValidationReport::default()
        };
        let random_vec = |rng: &mut ChaCha8Rng| {
            let r: f64 = 10f64.powf(rng.random_range(-2.0..2.0));
            Vec2::from_angle(rng.random_range(0.0..std::f64::consts::TAU)) * r
        };
        if self.value(Vec2::ZERO) != 0.0 {
            report.positivity_failures += 1;
        }
        for _ in 0..n_samples {
            let x = random_vec(&mut rng);
            let y = random_vec(&mut rng);
            let lambda: f64 = rng.random_range(f64::MIN_POSITIVE..=10.0);
            let fx = self.value(x);
            let fy = self.value(y);
            if !(fx.is_finite() && fx > 0.0) {
                report.positivity_failures += 1;
                continue;
            }
            let hom = (self.value(x * lambda) - lambda * fx).abs() / (lambda * fx);
            report.worst_homogeneity = report.worst_homogeneity.max(hom);
            if hom > HOMOGENEITY_TOL {
                report.homogeneity_violations += 1;
            }
            let excess = (self.value(x + y) - fx - fy) / (fx + fy);
            report.worst_subadditivity = report.worst_subadditivity.max(excess);
            if excess > SUBADDITIVITY_TOL {
                report.subadditivity_violations += 1;
            }
        }
        if self.smooth {
            report.smoothness_inconsistent = self.detect_corner();
        }
        if self.strictly_convex {
            report.strict_convexity_inconsistent = self.detect_segment();
        }
        report
    }

    // A corner of S shows up as a gradient jump that does not shrink when the angular
    // grid is refined; for a C^1 gauge the jump scales with the grid spacing.
    fn detect_corner(&self) -> bool {
        let coarse = self.max_gradient_jump(720);
        let fine = self.max_gradient_jump(2880);
        match (coarse, fine) {
            (Some(c), Some(f)) => f > 1e-3 && f > 0.5 * c,
            _ => true,
        }
    }

    fn max_gradient_jump(&self, n: usize) -> Option<f64> {
        let grads: Option<Vec<Vec2>> = (0..n)
            .map(|i| {
                let theta = std::f64::consts::TAU * i as f64 / n as f64;
                self.grad(Vec2::from_angle(theta)).ok()
            })
            .collect();
        let grads = grads?;
        Some(
            (0..n)
                .map(|i| (grads[(i + 1) % n] - grads[i]).euclid())
                .fold(0.0, f64::max),
        )
    }

    // Three consecutive, numerically collinear points of S indicate a segment.
    fn detect_segment(&self) -> bool {
        let n = 2880;
        let pts: Vec<Vec2> = (0..n)
            .map(|i| self.unit_circle_point(std::f64::consts::TAU * i as f64 / n as f64))
            .collect();
        (0..n).any(|i| {
            let a = pts[i];
            let b = pts[(i + 1) % n];
            let c = pts[(i + 2) % n];
            let e1 = b - a;
            let e2 = c - b;
            e1.det(e2) <= 1e-9 * e1.euclid() * e2.euclid()
        })
    }
}

/// Relative tolerance for `|F(λx) - λF(x)|`.
pub const HOMOGENEITY_TOL: f64 = 1e-12;
/// Relative slack for `F(x+y) <= F(x) + F(y)`.
pub const SUBADDITIVITY_TOL: f64 = 1e-12;

/// Outcome of [`Gauge::validate`].
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValidationReport {
    pub samples: usize,
    pub positivity_failures: usize,
    pub homogeneity_violations: usize,
    pub subadditivity_violations: usize,
    /// Largest relative homogeneity defect seen.
    pub worst_homogeneity: f64,
    /// Largest relative excess `(F(x+y) - F(x) - F(y)) / (F(x) + F(y))` seen.
    pub worst_subadditivity: f64,
    /// Declared smooth, but the unit circle appears to have a corner.
    pub smoothness_inconsistent: bool,
    /// Declared strictly convex, but the unit circle appears to contain a segment.
    pub strict_convexity_inconsistent: bool,
}

impl ValidationReport {
    pub fn violations(&self) -> usize {
        self.positivity_failures + self.homogeneity_violations + self.subadditivity_violations
    }

    pub fn is_clean(&self) -> bool {
        self.violations() == 0 && !self.smoothness_inconsistent && !self.strict_convexity_inconsistent
    }
}
