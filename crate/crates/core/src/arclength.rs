//! Gauge arc length `s(tau) = ∫ F(gamma'(tau)) dtau` and its inverse.

use crate::curve::ParamCurve;
use crate::error::{GaugeError, Result};
use crate::gauge::Gauge;
use crate::numeric::{adaptive_simpson, gauss_legendre8};

pub const DEFAULT_QUADRATURE_TOL: f64 = 1e-10;
const PANELS: usize = 256;

/// Monotone map between the curve parameter and gauge arc length.
///
/// Cumulative lengths at the breakpoints come from adaptive Simpson quadrature.
/// Queries between breakpoints integrate from the panel start with a fixed
/// Gauss-Legendre rule, so `s(tau)` is smooth inside a panel and may be
/// finite-differenced.
#[derive(Debug, Clone)]
pub struct ArcLengthTable {
    gauge: Gauge,
    curve: ParamCurve,
    breakpoints: Vec<f64>,
    s_values: Vec<f64>,
    quadrature_tol: f64,
    error_estimate: f64,
}

impl ArcLengthTable {
    pub fn build(gauge: &Gauge, curve: &ParamCurve, tol: f64) -> Result<Self> {
        if tol.is_nan() || tol <= 0.0 {
            return Err(GaugeError::domain(format!("quadrature tolerance must be positive, got {tol}")));
        }
        let (a, b) = curve.domain();
        let step = (b - a) / PANELS as f64;
        let breakpoints: Vec<f64> = (0..=PANELS)
            .map(|i| if i == PANELS { b } else { a + step * i as f64 })
            .collect();

        // Regularity screen on a grid four times finer than the panels.
        for i in 0..=4 * PANELS {
            let t = a + (b - a) * i as f64 / (4 * PANELS) as f64;
            let v = curve.check_regular_at(t)?;
            let speed = gauge.value(v);
            if !(speed.is_finite() && speed > 0.0) {
                return Err(GaugeError::domain(format!(
                    "curve {} is not regular at tau = {t}: F(gamma') = {speed}",
                    curve.label()
                )));
            }
        }

        let speed = |t: f64| gauge.value(curve.d1(t));
        let panel_tol = tol / PANELS as f64;
        let mut s_values = Vec::with_capacity(PANELS + 1);
        s_values.push(0.0);
        let mut acc = 0.0;
        let mut error_estimate = 0.0;
        for w in breakpoints.windows(2) {
            let (v, e) = adaptive_simpson(&speed, w[0], w[1], panel_tol);
            acc += v;
            error_estimate += e;
            s_values.push(acc);
        }
        if error_estimate > tol {
            return Err(GaugeError::numeric(format!(
                "arc-length quadrature error estimate {error_estimate:e} exceeds {tol:e}"
            )));
        }
        Ok(ArcLengthTable {
            gauge: gauge.clone(),
            curve: curve.clone(),
            breakpoints,
            s_values,
            quadrature_tol: tol,
            error_estimate,
        })
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn s_values(&self) -> &[f64] {
        &self.s_values
    }

    pub fn quadrature_tol(&self) -> f64 {
        self.quadrature_tol
    }

    pub fn error_estimate(&self) -> f64 {
        self.error_estimate
    }

    pub fn total_length(&self) -> f64 {
        *self.s_values.last().expect("table is never empty")
    }

    /// `ds/dtau = F(gamma'(tau))`.
    #[inline]
    pub fn speed(&self, t: f64) -> f64 {
        self.gauge.value(self.curve.d1(t))
    }

    fn panel_of_tau(&self, t: f64) -> usize {
        let (a, b) = self.curve.domain();
        let idx = ((t - a) / (b - a) * PANELS as f64).floor();
        (idx.max(0.0) as usize).min(PANELS - 1)
    }

    /// Arc length from the start of the domain to `t`. Extrapolates smoothly for
    /// parameters slightly outside the domain.
    pub fn s_at(&self, t: f64) -> f64 {
        let i = self.panel_of_tau(t);
        let t0 = self.breakpoints[i];
        let speed = |u: f64| self.speed(u);
        self.s_values[i] + gauss_legendre8(&speed, t0, t)
    }

    /// Inverse lookup `tau(s)`: Hermite initial guess inside the bracketing panel,
    /// then Newton steps with `ds/dtau = F(gamma')`.
    pub fn tau_at(&self, s: f64) -> f64 {
        let i = match self.s_values.partition_point(|&v| v <= s) {
            0 => 0,
            k => (k - 1).min(PANELS - 1),
        };
        let (t0, t1) = (self.breakpoints[i], self.breakpoints[i + 1]);
        let (s0, s1) = (self.s_values[i], self.s_values[i + 1]);
        let h = s1 - s0;
        let u = (s - s0) / h;
        // cubic Hermite in s with slopes dtau/ds = 1/speed
        let (m0, m1) = (h / self.speed(t0), h / self.speed(t1));
        let (u2, u3) = (u * u, u * u * u);
        let mut t = (2.0 * u3 - 3.0 * u2 + 1.0) * t0
            + (u3 - 2.0 * u2 + u) * m0
            + (-2.0 * u3 + 3.0 * u2) * t1
            + (u3 - u2) * m1;
        for _ in 0..20 {
            let dt = (self.s_at(t) - s) / self.speed(t);
            t -= dt;
            if dt.abs() <= 4.0 * f64::EPSILON * t.abs().max(1.0) {
                break;
            }
        }
        t
    }

    /// `n` parameters equally spaced in arc length, endpoints included.
    pub fn uniform_samples(&self, n: usize) -> Vec<(f64, f64)> {
        let (a, b) = self.curve.domain();
        let total = self.total_length();
        match n {
            0 => Vec::new(),
            1 => vec![(0.0, a)],
            _ => (0..n)
                .map(|j| {
                    if j == 0 {
                        (0.0, a)
                    } else if j == n - 1 {
                        (total, b)
                    } else {
                        let s = total * j as f64 / (n - 1) as f64;
                        (s, self.tau_at(s))
                    }
                })
                .collect(),
        }
    }
}

/// Builds the arc-length table of `curve` under `gauge`.
pub fn arc_length(gauge: &Gauge, curve: &ParamCurve, tol: f64) -> Result<ArcLengthTable> {
    ArcLengthTable::build(gauge, curve, tol)
}
