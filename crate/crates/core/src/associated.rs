//! The associated gauge `F_a(x) = sup { [y, x] : F(y) = 1 }`, its double
//! application, and Birkhoff orthogonality.

use std::f64::consts::TAU;
use std::sync::Arc;

use crate::error::{GaugeError, Result};
use crate::gauge::{Gauge, GaugeKind};
use crate::numeric::golden_section_max;
use crate::vec2::Vec2;

/// Default relative tolerance of [`birkhoff_orthogonal`].
pub const DEFAULT_BIRKHOFF_TOL: f64 = 1e-8;
pub const DEFAULT_GRID_SIZE: usize = 720;
pub const DEFAULT_REFINE_TOL: f64 = 1e-12;

/// How `F_a` is evaluated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AssociatedMethod {
    /// Closed form for Randers bases (and the Euclidean base, `b = 0`).
    ClosedFormRanders,
    /// Max over the vertices of the unit polygon; exact up to rounding.
    PolygonExact,
    /// Scan of `S` over `grid_size` angles, then golden-section refinement of the best
    /// bracket down to `refine_tol` in angle.
    NumericSup { grid_size: usize, refine_tol: f64 },
}

impl AssociatedMethod {
    pub const fn numeric() -> Self {
        AssociatedMethod::NumericSup {
            grid_size: DEFAULT_GRID_SIZE,
            refine_tol: DEFAULT_REFINE_TOL,
        }
    }

    /// The method used when none is requested: closed forms where they exist.
    pub fn default_for(base: &Gauge) -> Self {
        match base.kind() {
            GaugeKind::Euclidean | GaugeKind::Randers { .. } => AssociatedMethod::ClosedFormRanders,
            GaugeKind::Polygon(_) => AssociatedMethod::PolygonExact,
            GaugeKind::Custom(_) => AssociatedMethod::numeric(),
        }
    }
}

enum Evaluator {
    Randers { b: f64 },
    Numeric { base: Gauge, grid: Vec<(f64, Vec2)>, step: f64, refine_tol: f64 },
}

impl Evaluator {
    fn value(&self, x: Vec2) -> f64 {
        if x.is_zero() {
            return 0.0;
        }
        match self {
            Evaluator::Randers { b } => {
                let k = 1.0 - b * b;
                ((k * x.x1 * x.x1 + x.x2 * x.x2).sqrt() - b * x.x2) / k
            }
            Evaluator::Numeric { base, grid, step, refine_tol } => {
                let (best, best_val) = grid
                    .iter()
                    .enumerate()
                    .map(|(i, (_, y))| (i, y.det(x)))
                    .fold((0, f64::NEG_INFINITY), |acc, cur| if cur.1 > acc.1 { cur } else { acc });
                let centre = grid[best].0;
                let objective = |theta: f64| base.unit_circle_point(theta).det(x);
                let (_, refined) = golden_section_max(objective, centre - step, centre + step, *refine_tol);
                refined.max(best_val)
            }
        }
    }
}

/// The gauge associated to a base gauge, evaluable and usable as a [`Gauge`] itself.
#[derive(Clone)]
pub struct AssociatedGauge {
    base: Gauge,
    method: AssociatedMethod,
    as_gauge: Gauge,
}

impl std::fmt::Debug for AssociatedGauge {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("AssociatedGauge")
            .field("base", &self.base.name())
            .field("method", &self.method)
            .finish()
    }
}

impl AssociatedGauge {
    pub fn new(base: &Gauge, method: AssociatedMethod) -> Result<Self> {
        let name = format!("assoc[{}]", base.name());
        // Duality swaps the regularity flags.
        let (smooth, strictly_convex) = (base.is_strictly_convex(), base.is_smooth());
        let as_gauge = match (method, base.kind()) {
            (AssociatedMethod::ClosedFormRanders, GaugeKind::Euclidean) => {
                randers_dual(name, 0.0, smooth, strictly_convex)
            }
            (AssociatedMethod::ClosedFormRanders, GaugeKind::Randers { b }) => {
                randers_dual(name, *b, smooth, strictly_convex)
            }
            (AssociatedMethod::ClosedFormRanders, _) => {
                return Err(GaugeError::capability(format!(
                    "no closed-form associated gauge for {}",
                    base.name()
                )))
            }
            (AssociatedMethod::PolygonExact, GaugeKind::Polygon(p)) => Gauge::polygon(p.polar().to_vec())?,
            (AssociatedMethod::PolygonExact, _) => {
                return Err(GaugeError::capability(format!(
                    "exact polar construction needs a polygonal gauge, got {}",
                    base.name()
                )))
            }
            (AssociatedMethod::NumericSup { grid_size, refine_tol }, _) => {
                if grid_size < 3 || refine_tol.is_nan() || refine_tol <= 0.0 {
                    return Err(GaugeError::domain("numeric sup needs grid_size >= 3 and refine_tol > 0"));
                }
                let step = TAU / grid_size as f64;
                let grid = (0..grid_size)
                    .map(|i| {
                        let theta = step * i as f64;
                        (theta, base.unit_circle_point(theta))
                    })
                    .collect();
                let eval = Evaluator::Numeric {
                    base: base.clone(),
                    grid,
                    step,
                    refine_tol,
                };
                custom_from(name, eval, smooth, strictly_convex)
            }
        };
        Ok(AssociatedGauge {
            base: base.clone(),
            method,
            as_gauge,
        })
    }

    /// Associated gauge with [`AssociatedMethod::default_for`].
    pub fn of(base: &Gauge) -> Self {
        Self::new(base, AssociatedMethod::default_for(base)).expect("default method always applies")
    }

    pub fn base(&self) -> &Gauge {
        &self.base
    }

    pub fn method(&self) -> AssociatedMethod {
        self.method
    }

    /// `F_a` as a gauge in its own right. Its gradient is by central differences.
    pub fn as_gauge(&self) -> &Gauge {
        &self.as_gauge
    }

    /// `F_a(x)`; zero at the origin.
    pub fn eval(&self, x: Vec2) -> Result<f64> {
        self.as_gauge.eval(x)
    }

    #[inline]
    pub fn value(&self, x: Vec2) -> f64 {
        self.as_gauge.value(x)
    }

    /// Partials of `F_a`: closed form for the Randers dual, central differences otherwise.
    pub fn grad(&self, x: Vec2) -> Result<Vec2> {
        self.as_gauge.grad(x)
    }

    /// The associated gauge of `F_a`, i.e. `F_{a,a}`.
    pub fn associated(&self, method: AssociatedMethod) -> Result<AssociatedGauge> {
        AssociatedGauge::new(&self.as_gauge, method)
    }

    /// Whether `x` is Birkhoff orthogonal to `y` with respect to the base gauge:
    /// `[x, y] = F(x) F_a(y)` up to `tol` relative.
    pub fn birkhoff_orthogonal(&self, x: Vec2, y: Vec2, tol: f64) -> Result<bool> {
        x.check_finite()?;
        y.check_finite()?;
        if x.is_zero() || y.is_zero() {
            return Err(GaugeError::domain("Birkhoff orthogonality is defined for non-zero vectors"));
        }
        let scale = self.base.value(x) * self.value(y);
        Ok((x.det(y) - scale).abs() <= tol * scale)
    }
}

// F_a(x) = (Q - b x2) / a with a = 1 - b^2 and Q = sqrt(a x1^2 + x2^2); gradient
// and Hessian follow from those of Q, with D = diag(a, 1):
// grad Q = D x / Q,  D^2Q v = (D v - D x (D x . v) / Q^2) / Q.
fn randers_dual(name: String, b: f64, smooth: bool, strictly_convex: bool) -> Gauge {
    let a = 1.0 - b * b;
    let q = move |x: Vec2| (a * x.x1 * x.x1 + x.x2 * x.x2).sqrt();
    custom_from(name, Evaluator::Randers { b }, smooth, strictly_convex)
        .with_gradient(move |x| Vec2::new(a * x.x1 / q(x), x.x2 / q(x) - b) / a)
        .with_hessian(move |x, v| {
            let qx = q(x);
            let dx = Vec2::new(a * x.x1, x.x2);
            let dv = Vec2::new(a * v.x1, v.x2);
            (dv - dx * (dx.dot(v) / (qx * qx))) / (qx * a)
        })
}

fn custom_from(name: String, eval: Evaluator, smooth: bool, strictly_convex: bool) -> Gauge {
    let eval = Arc::new(eval);
    Gauge::custom(name, move |x| eval.value(x), smooth, strictly_convex)
}

/// `F_a(x)` with the default method for `base`.
pub fn associated_eval(base: &Gauge, x: Vec2) -> Result<f64> {
    AssociatedGauge::of(base).eval(x)
}

/// `x ⊣_B y` with respect to `base`; see [`AssociatedGauge::birkhoff_orthogonal`].
pub fn birkhoff_orthogonal(base: &Gauge, x: Vec2, y: Vec2, tol: f64) -> Result<bool> {
    AssociatedGauge::of(base).birkhoff_orthogonal(x, y, tol)
}

/// `F_a` and `F_{a,a}` built once for repeated residual evaluation.
#[derive(Debug, Clone)]
pub struct DoubleAssociated {
    first: AssociatedGauge,
    second: AssociatedGauge,
}

impl DoubleAssociated {
    /// Builds `F_a` with `method` and `F_{a,a}` with the same method where it applies
    /// (numeric sup after a closed form, since `F_a` of a Randers norm is not of the
    /// form `|x| + b x1`).
    pub fn new(base: &Gauge, method: AssociatedMethod) -> Result<Self> {
        let first = AssociatedGauge::new(base, method)?;
        let second_method = match method {
            AssociatedMethod::ClosedFormRanders => AssociatedMethod::numeric(),
            m => m,
        };
        let second = first.associated(second_method)?;
        Ok(DoubleAssociated { first, second })
    }

    pub fn first(&self) -> &AssociatedGauge {
        &self.first
    }

    pub fn second(&self) -> &AssociatedGauge {
        &self.second
    }

    /// `|F_{a,a}(x) - F(-x)|`.
    pub fn residual(&self, x: Vec2) -> Result<f64> {
        x.check_finite()?;
        if x.is_zero() {
            return Err(GaugeError::domain("residual is evaluated at non-zero vectors"));
        }
        Ok((self.second.value(x) - self.first.base().value(-x)).abs())
    }
}

/// `|F_{a,a}(x) - F(-x)|` using the default method for `base`.
pub fn double_associated_residual(base: &Gauge, x: Vec2) -> Result<f64> {
    DoubleAssociated::new(base, AssociatedMethod::default_for(base))?.residual(x)
}
