//! Evolutes, involutes, reverse curves and the evolute/involute round trips.
//!
//! The evolute `E = gamma - (1/k_c) l` uses the left normal `l`; the involute
//! `I = gamma + (c - s) T` uses the unit tangent `T` and arc length `s`. Both are
//! produced either as sampled point lists or as [`ParamCurve`]s in the parameter
//! of the original curve, so that they can be fed back into the curvature
//! machinery.

use std::sync::Arc;

use crate::associated::AssociatedMethod;
use crate::arclength::{arc_length, ArcLengthTable, DEFAULT_QUADRATURE_TOL};
use crate::curvature::CurvatureEngine;
use crate::curve::{CurveFn, ParamCurve};
use crate::error::{GaugeError, Result};
use crate::gauge::Gauge;
use crate::numeric::diff5_vec;
use crate::vec2::Vec2;

/// Default `|k_c|` threshold below which the evolute is refused.
pub const DEFAULT_K_MIN: f64 = 1e-8;
/// Difference step (Euclidean arc units) for derivatives of a constructed evolute.
const EVOLUTE_STEP: f64 = 1e-2;
/// Difference step (parameter units) for second derivatives of a constructed involute.
const INVOLUTE_STEP: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampledPoint {
    pub s: f64,
    pub point: Vec2,
}

/// An ordered list of curve points tagged with an increasing arc-length value.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledCurve {
    points: Vec<SampledPoint>,
    closed: bool,
    source: String,
}

impl SampledCurve {
    /// `s` must be finite and strictly increasing. Consecutive points may coincide
    /// (the evolute of a circle is a single point).
    pub fn new(points: Vec<SampledPoint>, closed: bool, source: impl Into<String>) -> Result<Self> {
        for p in &points {
            if !p.s.is_finite() {
                return Err(GaugeError::domain("sampled curve has a non-finite arc length"));
            }
            p.point.check_finite()?;
        }
        if points.windows(2).any(|w| w[1].s <= w[0].s) {
            return Err(GaugeError::domain("sampled curve arc lengths must be strictly increasing"));
        }
        Ok(SampledCurve {
            points,
            closed,
            source: source.into(),
        })
    }

    pub fn points(&self) -> &[SampledPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    /// Piecewise cubic Hermite interpolant in `s`, with node slopes from
    /// three-point differences (one-sided at the ends). The end pieces are
    /// extended as polynomials outside the sampled range.
    pub fn to_param_curve(&self) -> Result<ParamCurve> {
        let n = self.points.len();
        if n < 3 {
            return Err(GaugeError::domain("lifting a sampled curve needs at least 3 points"));
        }
        let s: Vec<f64> = self.points.iter().map(|p| p.s).collect();
        let x: Vec<Vec2> = self.points.iter().map(|p| p.point).collect();
        let slope = |i: usize| -> Vec2 {
            if i == 0 {
                (x[1] - x[0]) / (s[1] - s[0])
            } else if i == n - 1 {
                (x[n - 1] - x[n - 2]) / (s[n - 1] - s[n - 2])
            } else {
                let (h0, h1) = (s[i] - s[i - 1], s[i + 1] - s[i]);
                let d0 = (x[i] - x[i - 1]) / h0;
                let d1 = (x[i + 1] - x[i]) / h1;
                (d0 * h1 + d1 * h0) / (h0 + h1)
            }
        };
        let m: Vec<Vec2> = (0..n).map(slope).collect();
        let knots = Arc::new((s, x, m));
        let eval = move |k: &(Vec<f64>, Vec<Vec2>, Vec<Vec2>), t: f64, order: u8| -> Vec2 {
            let (s, x, m) = k;
            let i = match s.partition_point(|&v| v <= t) {
                0 => 0,
                j => (j - 1).min(s.len() - 2),
            };
            let h = s[i + 1] - s[i];
            let u = (t - s[i]) / h;
            let (p0, p1, m0, m1) = (x[i], x[i + 1], m[i] * h, m[i + 1] * h);
            match order {
                0 => {
                    let (u2, u3) = (u * u, u * u * u);
                    p0 * (2.0 * u3 - 3.0 * u2 + 1.0)
                        + m0 * (u3 - 2.0 * u2 + u)
                        + p1 * (-2.0 * u3 + 3.0 * u2)
                        + m1 * (u3 - u2)
                }
                1 => {
                    let u2 = u * u;
                    (p0 * (6.0 * u2 - 6.0 * u) + m0 * (3.0 * u2 - 4.0 * u + 1.0) + p1 * (-6.0 * u2 + 6.0 * u)
                        + m1 * (3.0 * u2 - 2.0 * u))
                        / h
                }
                _ => {
                    (p0 * (12.0 * u - 6.0) + m0 * (6.0 * u - 4.0) + p1 * (-12.0 * u + 6.0) + m1 * (6.0 * u - 2.0))
                        / (h * h)
                }
            }
        };
        let (k0, k1, k2) = (knots.clone(), knots.clone(), knots.clone());
        let domain = (self.points[0].s, self.points[n - 1].s);
        let mut c = ParamCurve::with_derivatives(
            domain,
            move |t| eval(&k0, t, 0),
            move |t| eval(&k1, t, 1),
            move |t| eval(&k2, t, 2),
        )?;
        c = c.labelled(format!("lift[{}]", self.source));
        Ok(c)
    }
}

/// Orientation reversal `alpha^-(t) = alpha(-t)`.
pub trait Reverse {
    fn reverse(&self) -> Self;
}

impl Reverse for ParamCurve {
    fn reverse(&self) -> Self {
        self.reversed()
    }
}

impl Reverse for SampledCurve {
    fn reverse(&self) -> Self {
        SampledCurve {
            points: self
                .points
                .iter()
                .rev()
                .map(|p| SampledPoint { s: -p.s, point: p.point })
                .collect(),
            closed: self.closed,
            source: format!("reverse[{}]", self.source),
        }
    }
}

/// The evolute as a curve in the parameter of `curve`. Points where the circular
/// curvature cannot be evaluated come out as NaN.
pub fn evolute_curve(engine: &CurvatureEngine, curve: &ParamCurve) -> ParamCurve {
    let engine = engine.clone();
    let base = curve.clone();
    let value: CurveFn = Arc::new(move |t| {
        match (engine.circular(&base, t), engine.left_normal(&base, t)) {
            (Ok(k), Ok(l)) => base.value(t) - l / k,
            _ => Vec2::new(f64::NAN, f64::NAN),
        }
    });
    let v = value.clone();
    let speed = curve.d1_fn();
    let d1: CurveFn = Arc::new(move |t| {
        let h = EVOLUTE_STEP / speed(t).euclid();
        diff5_vec(|u| v(u), t, h)
    });
    let (a, b) = curve.domain();
    ParamCurve::from_value_and_d1((a, b), value, d1, INVOLUTE_STEP).labelled(format!("evolute[{}]", curve.label()))
}

/// The involute `gamma + (c - s) T` as a curve in the parameter of `curve`; `s`
/// is the gauge arc length from the start of the domain.
pub fn involute_curve(gauge: &Gauge, curve: &ParamCurve, c: f64, table: &ArcLengthTable) -> ParamCurve {
    let table = Arc::new(table.clone());
    let (g0, g1) = (gauge.clone(), gauge.clone());
    let (v0, d0) = (curve.value_fn(), curve.d1_fn());
    let t0 = table.clone();
    let value: CurveFn = Arc::new(move |t| {
        let v = d0(t);
        v0(t) + v * ((c - t0.s_at(t)) / g0.value(v))
    });
    let base = curve.clone();
    // I' = (c - s) dT/dtau with dT/dtau = gamma''/F - gamma' (grad F . gamma'') / F^2
    let d1: CurveFn = Arc::new(move |t| {
        let v = base.d1(t);
        let a = base.d2(t);
        let f = g1.value(v);
        let grad = g1.grad(v).unwrap_or(Vec2::new(f64::NAN, f64::NAN));
        let dtangent = a / f - v * (grad.dot(a) / (f * f));
        dtangent * (c - table.s_at(t))
    });
    ParamCurve::from_value_and_d1(curve.domain(), value, d1, INVOLUTE_STEP)
        .labelled(format!("involute[{}, c={c}]", curve.label()))
}

/// Evolute at `samples` points equally spaced in arc length.
pub fn evolute(gauge: &Gauge, curve: &ParamCurve, samples: usize) -> Result<SampledCurve> {
    evolute_with(&CurvatureEngine::new(gauge)?, curve, samples, DEFAULT_K_MIN, DEFAULT_QUADRATURE_TOL)
}

pub fn evolute_with(
    engine: &CurvatureEngine,
    curve: &ParamCurve,
    samples: usize,
    k_min: f64,
    quadrature_tol: f64,
) -> Result<SampledCurve> {
    if samples < 2 {
        return Err(GaugeError::domain("an evolute needs at least 2 samples"));
    }
    let table = arc_length(engine.gauge(), curve, quadrature_tol)?;
    let mut points = Vec::with_capacity(samples);
    let mut offending = Vec::new();
    for (s, t) in table.uniform_samples(samples) {
        let k = engine.circular(curve, t)?;
        if k.abs() < k_min {
            offending.push(s);
            continue;
        }
        let l = engine.left_normal(curve, t)?;
        points.push(SampledPoint {
            s,
            point: curve.value(t) - l / k,
        });
    }
    if !offending.is_empty() {
        return Err(GaugeError::DegenerateCurvature { s_values: offending });
    }
    SampledCurve::new(points, curve.is_closed(), format!("evolute[{}]", curve.label()))
}

/// Involute with constant `c` at `samples` points equally spaced in arc length.
pub fn involute(gauge: &Gauge, curve: &ParamCurve, c: f64, samples: usize) -> Result<SampledCurve> {
    involute_with(gauge, curve, c, samples, DEFAULT_QUADRATURE_TOL)
}

pub fn involute_with(
    gauge: &Gauge,
    curve: &ParamCurve,
    c: f64,
    samples: usize,
    quadrature_tol: f64,
) -> Result<SampledCurve> {
    if samples < 2 {
        return Err(GaugeError::domain("an involute needs at least 2 samples"));
    }
    if !c.is_finite() {
        return Err(GaugeError::domain("involute constant must be finite"));
    }
    let table = arc_length(gauge, curve, quadrature_tol)?;
    let points = table
        .uniform_samples(samples)
        .into_iter()
        .map(|(s, t)| {
            let v = curve.d1(t);
            SampledPoint {
                s,
                point: curve.value(t) + v * ((c - s) / gauge.value(v)),
            }
        })
        .collect();
    SampledCurve::new(points, false, format!("involute[{}, c={c}]", curve.label()))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RoundTripOptions {
    pub samples: usize,
    /// Samples with `|s - c|` below this are left out of the involute statistics.
    pub exclusion: f64,
    pub quadrature_tol: f64,
    /// Quadrature tolerance for the arc length of a constructed evolute, whose
    /// speed carries nested finite-difference noise.
    pub derived_quadrature_tol: f64,
    /// `|(c - s) k_l|` at or below this counts as a sign change.
    pub sign_floor: f64,
    /// Consecutive `k_c` differences must exceed this (relative to `max(1, |k_c|)`)
    /// to count as strictly monotone.
    pub monotone_floor: f64,
    pub k_min: f64,
    /// How `F_a` is obtained for circular curvature and left normals; `None` picks
    /// the default for the gauge.
    pub associated: Option<AssociatedMethod>,
}

impl Default for RoundTripOptions {
    fn default() -> Self {
        RoundTripOptions {
            samples: 256,
            exclusion: 1e-3,
            quadrature_tol: DEFAULT_QUADRATURE_TOL,
            derived_quadrature_tol: 1e-6,
            sign_floor: 1e-12,
            monotone_floor: 1e-6,
            k_min: DEFAULT_K_MIN,
            associated: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum RoundTripCase {
    /// Hypothesis holds with positive sign; the construction is applied as is.
    Direct,
    /// Hypothesis holds with negative sign; the construction goes through reverse curves.
    Reversed,
    /// The sign hypothesis fails on the sampled range.
    NotApplicable(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RoundTripReport {
    pub construction: &'static str,
    pub case: RoundTripCase,
    /// The involute constant that was used (given or recovered).
    pub c: f64,
    /// Largest Euclidean distance between the recovered curve and the original.
    pub max_deviation: f64,
    pub samples_used: usize,
    /// The intermediate curve (involute or evolute), sampled.
    pub intermediate: Option<SampledCurve>,
    /// The recovered curve, sampled at the arc length of the original.
    pub recovered: Option<SampledCurve>,
}

impl RoundTripReport {
    pub fn is_applicable(&self) -> bool {
        !matches!(self.case, RoundTripCase::NotApplicable(_))
    }

    fn not_applicable(construction: &'static str, c: f64, why: String) -> Self {
        RoundTripReport {
            construction,
            case: RoundTripCase::NotApplicable(why),
            c,
            max_deviation: f64::NAN,
            samples_used: 0,
            intermediate: None,
            recovered: None,
        }
    }
}

impl RoundTripOptions {
    fn engine(&self, gauge: &Gauge) -> Result<CurvatureEngine> {
        match self.associated {
            Some(method) => CurvatureEngine::with_associated(gauge, method),
            None => CurvatureEngine::new(gauge),
        }
    }
}

fn evolute_point(engine: &CurvatureEngine, curve: &ParamCurve, t: f64) -> Result<Vec2> {
    let k = engine.circular(curve, t)?;
    if !k.is_finite() || k == 0.0 {
        return Err(GaugeError::numeric(format!("circular curvature {k} at tau = {t}")));
    }
    Ok(curve.value(t) - engine.left_normal(curve, t)? / k)
}

/// Takes the involute with constant `c`, then its evolute, and measures the
/// distance to the original curve. When `(c - s) k_l < 0` throughout, the reverse
/// involute is used and its evolute is compared after reversing orientation.
pub fn evolute_of_involute_roundtrip(
    gauge: &Gauge,
    curve: &ParamCurve,
    c: f64,
    opts: &RoundTripOptions,
) -> Result<RoundTripReport> {
    const NAME: &str = "evolute-of-involute";
    let engine = opts.engine(gauge)?;
    let table = arc_length(gauge, curve, opts.quadrature_tol)?;
    let samples: Vec<(f64, f64)> = table
        .uniform_samples(opts.samples)
        .into_iter()
        .filter(|(s, _)| (s - c).abs() >= opts.exclusion)
        .collect();
    if samples.is_empty() {
        return Ok(RoundTripReport::not_applicable(NAME, c, "no samples outside the exclusion zone".into()));
    }
    let mut positive = 0;
    let mut negative = 0;
    for &(s, t) in &samples {
        let p = (c - s) * engine.arc_length_curvature(curve, t)?;
        if p > opts.sign_floor {
            positive += 1;
        } else if p < -opts.sign_floor {
            negative += 1;
        }
    }
    let case = if positive == samples.len() {
        RoundTripCase::Direct
    } else if negative == samples.len() {
        RoundTripCase::Reversed
    } else {
        return Ok(RoundTripReport::not_applicable(
            NAME,
            c,
            format!("(c - s) k_l changes sign or vanishes ({positive} positive, {negative} negative of {})", samples.len()),
        ));
    };

    let inv = involute_curve(gauge, curve, c, &table);
    let (probe, sign) = match case {
        RoundTripCase::Direct => (inv.clone(), 1.0),
        _ => (inv.reversed(), -1.0),
    };
    let mut max_dev: f64 = 0.0;
    let mut recovered = Vec::with_capacity(samples.len());
    let mut intermediate = Vec::with_capacity(samples.len());
    for &(s, t) in &samples {
        let e = evolute_point(&engine, &probe, sign * t)?;
        max_dev = max_dev.max((e - curve.value(t)).euclid());
        recovered.push(SampledPoint { s, point: e });
        intermediate.push(SampledPoint { s, point: inv.value(t) });
    }
    Ok(RoundTripReport {
        construction: NAME,
        case,
        c,
        max_deviation: max_dev,
        samples_used: samples.len(),
        intermediate: Some(SampledCurve::new(intermediate, false, inv.label())?),
        recovered: Some(SampledCurve::new(recovered, curve.is_closed(), format!("recovered[{}]", curve.label()))?),
    })
}

/// Takes the evolute, then the involute whose constant is pinned by
/// `c = s* + 1/k_c` at the start of the evolute (`s*` its arc length), and
/// measures the distance to the original curve. When `k_c` decreases, the
/// reverse evolute is used and the result compared after reversing orientation.
pub fn involute_of_evolute_roundtrip(
    gauge: &Gauge,
    curve: &ParamCurve,
    opts: &RoundTripOptions,
) -> Result<RoundTripReport> {
    const NAME: &str = "involute-of-evolute";
    let engine = opts.engine(gauge)?;
    let table = arc_length(gauge, curve, opts.quadrature_tol)?;
    let samples = table.uniform_samples(opts.samples);
    let kc = samples
        .iter()
        .map(|&(_, t)| engine.circular(curve, t))
        .collect::<Result<Vec<f64>>>()?;
    if let Some(i) = kc.iter().position(|k| k.abs() < opts.k_min) {
        return Ok(RoundTripReport::not_applicable(
            NAME,
            f64::NAN,
            format!("circular curvature vanishes at s = {}", samples[i].0),
        ));
    }
    let floor = |k: f64| opts.monotone_floor * k.abs().max(1.0);
    let increasing = kc.windows(2).all(|w| w[1] - w[0] > floor(w[0]));
    let decreasing = kc.windows(2).all(|w| w[0] - w[1] > floor(w[0]));
    let case = if increasing {
        RoundTripCase::Direct
    } else if decreasing {
        RoundTripCase::Reversed
    } else {
        return Ok(RoundTripReport::not_applicable(
            NAME,
            f64::NAN,
            "circular curvature is not strictly monotone on the sampled range".into(),
        ));
    };

    let evo = evolute_curve(&engine, curve);
    let (a, b) = curve.domain();
    let (probe, sign, k_start) = match case {
        RoundTripCase::Direct => (evo.clone(), 1.0, kc[0]),
        _ => (evo.reversed(), -1.0, *kc.last().expect("at least one sample")),
    };
    let probe_table = arc_length(gauge, &probe, opts.derived_quadrature_tol)?;
    // s* = 0 at the start of the (possibly reversed) evolute.
    let c = 1.0 / k_start;
    let mut max_dev: f64 = 0.0;
    let mut recovered = Vec::with_capacity(samples.len());
    let mut intermediate = Vec::with_capacity(samples.len());
    for &(s, t) in &samples {
        let sigma = sign * t;
        let velocity = probe.d1(sigma);
        let unit = velocity / gauge.value(velocity);
        let point = probe.value(sigma) + unit * (c - probe_table.s_at(sigma));
        max_dev = max_dev.max((point - curve.value(t)).euclid());
        recovered.push(SampledPoint { s, point });
        intermediate.push(SampledPoint { s, point: evo.value(t) });
    }
    debug_assert!(a < b);
    Ok(RoundTripReport {
        construction: NAME,
        case,
        c,
        max_deviation: max_dev,
        samples_used: samples.len(),
        intermediate: Some(SampledCurve::new(intermediate, curve.is_closed(), evo.label())?),
        recovered: Some(SampledCurve::new(recovered, curve.is_closed(), format!("recovered[{}]", curve.label()))?),
    })
}
