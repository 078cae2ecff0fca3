//! Oriented parametric curves with first and second derivatives.

use std::f64::consts::TAU;
use std::fmt;
use std::sync::Arc;

use crate::error::{GaugeError, Result};
use crate::vec2::Vec2;

pub type CurveFn = Arc<dyn Fn(f64) -> Vec2 + Send + Sync>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivativeMode {
    Analytic,
    CentralDifference,
}

/// A trigonometric polynomial `sum_k cos[k] cos(k t) + sin[k] sin(k t)`.
/// `cos[0]` is the constant term; `sin[0]` has no effect.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct TrigPoly {
    pub cos: Vec<f64>,
    pub sin: Vec<f64>,
}

impl TrigPoly {
    pub fn new(cos: Vec<f64>, sin: Vec<f64>) -> Self {
        TrigPoly { cos, sin }
    }

    /// The `order`-th derivative at `t`.
    pub fn eval(&self, t: f64, order: u32) -> f64 {
        // d^n/dt^n cos(kt) = k^n cos(kt + n pi/2), likewise for sin.
        let shift = order as f64 * std::f64::consts::FRAC_PI_2;
        let c = self.cos.iter().enumerate().map(|(k, a)| {
            let k = k as f64;
            if order > 0 && k == 0.0 {
                0.0
            } else {
                a * k.powi(order as i32) * (k * t + shift).cos()
            }
        });
        let s = self
            .sin
            .iter()
            .enumerate()
            .map(|(k, a)| a * (k as f64).powi(order as i32) * ((k as f64) * t + shift).sin());
        c.sum::<f64>() + s.sum::<f64>()
    }
}

/// An oriented planar curve `gamma(tau)` over a closed parameter interval.
///
/// Evaluators may be called slightly outside the domain by finite-difference
/// stencils near the endpoints, so they should extend smoothly past it.
#[derive(Clone)]
pub struct ParamCurve {
    domain: (f64, f64),
    value: CurveFn,
    d1: CurveFn,
    d2: CurveFn,
    mode: DerivativeMode,
    closed: bool,
    label: String,
}

impl fmt::Debug for ParamCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ParamCurve")
            .field("label", &self.label)
            .field("domain", &self.domain)
            .field("mode", &self.mode)
            .field("closed", &self.closed)
            .finish()
    }
}

fn check_domain(a: f64, b: f64) -> Result<()> {
    if a.is_finite() && b.is_finite() && a < b {
        Ok(())
    } else {
        Err(GaugeError::domain(format!("invalid parameter interval [{a}, {b}]")))
    }
}

impl ParamCurve {
    /// A curve with analytic first and second derivatives.
    pub fn with_derivatives<F, D1, D2>(domain: (f64, f64), value: F, d1: D1, d2: D2) -> Result<Self>
    where
        F: Fn(f64) -> Vec2 + Send + Sync + 'static,
        D1: Fn(f64) -> Vec2 + Send + Sync + 'static,
        D2: Fn(f64) -> Vec2 + Send + Sync + 'static,
    {
        check_domain(domain.0, domain.1)?;
        Ok(ParamCurve {
            domain,
            value: Arc::new(value),
            d1: Arc::new(d1),
            d2: Arc::new(d2),
            mode: DerivativeMode::Analytic,
            closed: false,
            label: "curve".into(),
        })
    }

    /// A curve given only by its values; derivatives by central differences.
    pub fn from_fn<F>(domain: (f64, f64), value: F) -> Result<Self>
    where
        F: Fn(f64) -> Vec2 + Send + Sync + 'static,
    {
        check_domain(domain.0, domain.1)?;
        let value: CurveFn = Arc::new(value);
        let (v1, v2) = (value.clone(), value.clone());
        let d1 = move |t: f64| {
            let h = f64::EPSILON.cbrt() * t.abs().max(1.0);
            (v1(t + h) - v1(t - h)) / (2.0 * h)
        };
        let d2 = move |t: f64| {
            let h = f64::EPSILON.powf(0.25) * t.abs().max(1.0);
            (v2(t + h) - v2(t) * 2.0 + v2(t - h)) / (h * h)
        };
        Ok(ParamCurve {
            domain,
            value,
            d1: Arc::new(d1),
            d2: Arc::new(d2),
            mode: DerivativeMode::CentralDifference,
            closed: false,
            label: "sampled".into(),
        })
    }

    /// Builds a curve from value and first derivative, with the second derivative
    /// by five-point differences of the first.
    pub(crate) fn from_value_and_d1(domain: (f64, f64), value: CurveFn, d1: CurveFn, step: f64) -> Self {
        let d1c = d1.clone();
        let d2 = move |t: f64| crate::numeric::diff5_vec(|u| d1c(u), t, step);
        ParamCurve {
            domain,
            value,
            d1,
            d2: Arc::new(d2),
            mode: DerivativeMode::CentralDifference,
            closed: false,
            label: "derived".into(),
        }
    }

    /// Counter-clockwise circle of radius `r` about the origin, `tau in [0, 2 pi]`.
    pub fn circle(r: f64) -> Result<Self> {
        Self::circle_at(Vec2::ZERO, r)
    }

    pub fn circle_at(center: Vec2, r: f64) -> Result<Self> {
        Self::ellipse_at(center, r, r).map(|c| c.labelled(format!("circle(r={r})")))
    }

    /// `(a cos tau, b sin tau)` over `[0, 2 pi]`.
    pub fn ellipse(a: f64, b: f64) -> Result<Self> {
        Self::ellipse_at(Vec2::ZERO, a, b)
    }

    fn ellipse_at(center: Vec2, a: f64, b: f64) -> Result<Self> {
        if !(a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite()) {
            return Err(GaugeError::domain(format!("ellipse semi-axes must be positive, got {a}, {b}")));
        }
        center.check_finite()?;
        let mut c = Self::with_derivatives(
            (0.0, TAU),
            move |t| center + Vec2::new(a * t.cos(), b * t.sin()),
            move |t| Vec2::new(-a * t.sin(), b * t.cos()),
            move |t| Vec2::new(-a * t.cos(), -b * t.sin()),
        )?;
        c.closed = true;
        Ok(c.labelled(format!("ellipse(a={a}, b={b})")))
    }

    /// `(a cos tau, b sin(omega tau))` over `[0, 2 pi]`.
    pub fn lissajous(a: f64, b: f64, omega: f64) -> Result<Self> {
        if !(a > 0.0 && b > 0.0 && omega > 0.0 && omega.is_finite()) {
            return Err(GaugeError::domain("lissajous parameters must be positive"));
        }
        let c = Self::with_derivatives(
            (0.0, TAU),
            move |t| Vec2::new(a * t.cos(), b * (omega * t).sin()),
            move |t| Vec2::new(-a * t.sin(), b * omega * (omega * t).cos()),
            move |t| Vec2::new(-a * t.cos(), -b * omega * omega * (omega * t).sin()),
        )?;
        Ok(c.labelled(format!("lissajous(a={a}, b={b}, omega={omega})")))
    }

    /// Straight segment `p + tau (q - p)`, `tau in [0, 1]`.
    pub fn segment(p: Vec2, q: Vec2) -> Result<Self> {
        p.check_finite()?;
        q.check_finite()?;
        if p == q {
            return Err(GaugeError::domain("segment endpoints coincide"));
        }
        let d = q - p;
        let c = Self::with_derivatives((0.0, 1.0), move |t| p + d * t, move |_| d, |_| Vec2::ZERO)?;
        Ok(c.labelled(format!("segment({p} -> {q})")))
    }

    /// Components given by trigonometric polynomials, with analytic derivatives.
    pub fn trig(x: TrigPoly, y: TrigPoly, domain: (f64, f64)) -> Result<Self> {
        let (x0, y0) = (x.clone(), y.clone());
        let (x1, y1) = (x.clone(), y.clone());
        let c = Self::with_derivatives(
            domain,
            move |t| Vec2::new(x0.eval(t, 0), y0.eval(t, 0)),
            move |t| Vec2::new(x1.eval(t, 1), y1.eval(t, 1)),
            move |t| Vec2::new(x.eval(t, 2), y.eval(t, 2)),
        )?;
        Ok(c.labelled("trig"))
    }

    pub fn labelled(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Same curve over a different parameter interval.
    pub fn with_domain(mut self, a: f64, b: f64) -> Result<Self> {
        check_domain(a, b)?;
        self.closed = self.closed && (b - a - (self.domain.1 - self.domain.0)).abs() < 1e-15;
        self.domain = (a, b);
        Ok(self)
    }

    /// Orientation reversal `gamma^-(t) = gamma(-t)` over `[-tau_max, -tau_min]`.
    pub fn reversed(&self) -> Self {
        let (v, d1, d2) = (self.value.clone(), self.d1.clone(), self.d2.clone());
        ParamCurve {
            domain: (-self.domain.1, -self.domain.0),
            value: Arc::new(move |t| v(-t)),
            d1: Arc::new(move |t| -d1(-t)),
            d2: Arc::new(move |t| d2(-t)),
            mode: self.mode,
            closed: self.closed,
            label: format!("reverse[{}]", self.label),
        }
    }

    /// `gamma(h(t))` for an increasing `h` mapping `domain` into the current domain.
    /// `dh` and `d2h` are the first two derivatives of `h`.
    pub fn reparametrized<H, H1, H2>(&self, domain: (f64, f64), h: H, dh: H1, d2h: H2) -> Result<Self>
    where
        H: Fn(f64) -> f64 + Send + Sync + 'static,
        H1: Fn(f64) -> f64 + Send + Sync + 'static,
        H2: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        check_domain(domain.0, domain.1)?;
        let h = Arc::new(h);
        let dh = Arc::new(dh);
        let (v, d1, d2) = (self.value.clone(), self.d1.clone(), self.d2.clone());
        let (h0, h1, h2) = (h.clone(), h.clone(), h);
        let (dh1, dh2) = (dh.clone(), dh);
        let d1c = d1.clone();
        Ok(ParamCurve {
            domain,
            value: Arc::new(move |t| v(h0(t))),
            d1: Arc::new(move |t| d1(h1(t)) * dh1(t)),
            d2: Arc::new(move |t| {
                let s = h2(t);
                let w = dh2(t);
                d2(s) * (w * w) + d1c(s) * d2h(t)
            }),
            mode: self.mode,
            closed: self.closed,
            label: format!("reparam[{}]", self.label),
        })
    }

    #[inline]
    pub fn domain(&self) -> (f64, f64) {
        self.domain
    }

    pub fn mode(&self) -> DerivativeMode {
        self.mode
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    #[inline]
    pub fn value(&self, t: f64) -> Vec2 {
        (self.value)(t)
    }

    #[inline]
    pub fn d1(&self, t: f64) -> Vec2 {
        (self.d1)(t)
    }

    #[inline]
    pub fn d2(&self, t: f64) -> Vec2 {
        (self.d2)(t)
    }

    pub(crate) fn value_fn(&self) -> CurveFn {
        self.value.clone()
    }

    pub(crate) fn d1_fn(&self) -> CurveFn {
        self.d1.clone()
    }

    /// Rejects points where the velocity vanishes or is not finite.
    pub fn check_regular_at(&self, t: f64) -> Result<Vec2> {
        let v = self.d1(t);
        if !v.is_finite() || v.euclid() <= 1e-12 * self.value(t).euclid().max(1.0) {
            return Err(GaugeError::domain(format!(
                "curve {} is not regular at tau = {t} (velocity {v})",
                self.label
            )));
        }
        Ok(v)
    }
}
