//! The TOML job specification.

use std::f64::consts::TAU;

use gauge_curves::{AssociatedMethod, Gauge, ParamCurve, TrigPoly, Vec2};
use serde::Deserialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum JobError {
    #[error("job spec: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("override `{0}`: expected key=value with a dotted key")]
    Override(String),
    #[error("job spec: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
pub enum Command {
    #[serde(rename = "gauge-eval")]
    GaugeEval,
    #[serde(rename = "associated")]
    Associated,
    #[serde(rename = "polar")]
    Polar,
    #[serde(rename = "curvature-profile")]
    CurvatureProfile,
    #[serde(rename = "evolute")]
    Evolute,
    #[serde(rename = "involute")]
    Involute,
    #[serde(rename = "roundtrip-evolute-of-involute")]
    RoundTripEvoluteOfInvolute,
    #[serde(rename = "roundtrip-involute-of-evolute")]
    RoundTripInvoluteOfEvolute,
    #[serde(rename = "validate")]
    Validate,
}

impl Command {
    /// The name used in job files.
    pub fn name(self) -> &'static str {
        match self {
            Command::GaugeEval => "gauge-eval",
            Command::Associated => "associated",
            Command::Polar => "polar",
            Command::CurvatureProfile => "curvature-profile",
            Command::Evolute => "evolute",
            Command::Involute => "involute",
            Command::RoundTripEvoluteOfInvolute => "roundtrip-evolute-of-involute",
            Command::RoundTripInvoluteOfEvolute => "roundtrip-involute-of-evolute",
            Command::Validate => "validate",
        }
    }

    pub fn needs_curve(self) -> bool {
        !matches!(self, Command::GaugeEval | Command::Associated | Command::Polar | Command::Validate)
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum GaugeSpec {
    Euclidean,
    Randers { b: f64 },
    Polygon { vertices: Vec<[f64; 2]> },
}

impl GaugeSpec {
    pub fn build(&self) -> gauge_curves::Result<Gauge> {
        match self {
            GaugeSpec::Euclidean => Ok(Gauge::euclidean()),
            GaugeSpec::Randers { b } => Gauge::randers(*b),
            GaugeSpec::Polygon { vertices } => Gauge::polygon(to_points(vertices)),
        }
    }
}

fn default_radius() -> f64 {
    1.0
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum CurveSpec {
    Circle {
        #[serde(default = "default_radius")]
        r: f64,
        #[serde(default)]
        center: [f64; 2],
        domain: Option<[f64; 2]>,
    },
    Ellipse {
        a: f64,
        b: f64,
        domain: Option<[f64; 2]>,
    },
    /// `(a cos t, b sin(omega t))`.
    Lissajous {
        a: f64,
        b: f64,
        omega: f64,
        domain: Option<[f64; 2]>,
    },
    /// Coefficient lists; index k multiplies cos(k t) or sin(k t).
    Trig {
        #[serde(default)]
        x_cos: Vec<f64>,
        #[serde(default)]
        x_sin: Vec<f64>,
        #[serde(default)]
        y_cos: Vec<f64>,
        #[serde(default)]
        y_sin: Vec<f64>,
        domain: Option<[f64; 2]>,
    },
    Segment {
        from: [f64; 2],
        to: [f64; 2],
    },
}

impl CurveSpec {
    pub fn build(&self) -> gauge_curves::Result<ParamCurve> {
        let (curve, domain) = match self {
            CurveSpec::Circle { r, center, domain } => (ParamCurve::circle_at(center.into(), *r)?, domain),
            CurveSpec::Ellipse { a, b, domain } => (ParamCurve::ellipse(*a, *b)?, domain),
            CurveSpec::Lissajous { a, b, omega, domain } => (ParamCurve::lissajous(*a, *b, *omega)?, domain),
            CurveSpec::Trig {
                x_cos,
                x_sin,
                y_cos,
                y_sin,
                domain,
            } => {
                let x = TrigPoly::new(x_cos.clone(), x_sin.clone());
                let y = TrigPoly::new(y_cos.clone(), y_sin.clone());
                let (a, b) = domain.map_or((0.0, TAU), |[a, b]| (a, b));
                return ParamCurve::trig(x, y, (a, b));
            }
            CurveSpec::Segment { from, to } => return ParamCurve::segment(from.into(), to.into()),
        };
        match domain {
            Some([a, b]) => curve.with_domain(*a, *b),
            None => Ok(curve),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// Adaptive quadrature tolerance for arc length.
    pub quadrature: f64,
    /// Quadrature tolerance for arc lengths of constructed evolutes.
    pub derived_quadrature: f64,
    pub k_min: f64,
    pub exclusion: f64,
    pub sign_floor: f64,
    pub monotone_floor: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        let rt = gauge_curves::RoundTripOptions::default();
        Tolerances {
            quadrature: rt.quadrature_tol,
            derived_quadrature: rt.derived_quadrature_tol,
            k_min: rt.k_min,
            exclusion: rt.exclusion,
            sign_floor: rt.sign_floor,
            monotone_floor: rt.monotone_floor,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AssociatedChoice {
    ClosedForm,
    Numeric,
    PolygonExact,
}

impl From<AssociatedChoice> for AssociatedMethod {
    fn from(c: AssociatedChoice) -> Self {
        match c {
            AssociatedChoice::ClosedForm => AssociatedMethod::ClosedFormRanders,
            AssociatedChoice::Numeric => AssociatedMethod::numeric(),
            AssociatedChoice::PolygonExact => AssociatedMethod::PolygonExact,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Params {
    /// Involute constant.
    pub c: Option<f64>,
    /// Evaluation points for gauge-eval and associated.
    pub points: Vec<[f64; 2]>,
    /// How F_a is computed; defaults per gauge kind.
    pub associated: Option<AssociatedChoice>,
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Output {
    pub csv: Option<String>,
    pub svg: Option<String>,
    /// JSON summary for round trips and validation.
    pub report: Option<String>,
}

fn default_samples() -> usize {
    256
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub command: Command,
    #[serde(default = "default_samples")]
    pub samples: usize,
    pub seed: Option<u64>,
    pub gauge: GaugeSpec,
    pub curve: Option<CurveSpec>,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub params: Params,
    #[serde(default)]
    pub output: Output,
}

impl JobSpec {
    /// Checks that the parameters referenced by the command are present.
    pub fn check(&self) -> Result<(), JobError> {
        let missing = |what: &str| Err(JobError::Invalid(format!("{what} is required for this command")));
        if self.command.needs_curve() && self.curve.is_none() {
            return missing("[curve]");
        }
        match self.command {
            Command::GaugeEval | Command::Associated if self.params.points.is_empty() => missing("params.points"),
            Command::Involute | Command::RoundTripEvoluteOfInvolute if self.params.c.is_none() => missing("params.c"),
            Command::Polar if !matches!(self.gauge, GaugeSpec::Polygon { .. }) => {
                Err(JobError::Invalid("polar needs a polygon gauge".into()))
            }
            _ if self.samples < 2 => Err(JobError::Invalid("samples must be at least 2".into())),
            _ => Ok(()),
        }
    }
}

pub fn to_points(raw: &[[f64; 2]]) -> Vec<Vec2> {
    raw.iter().map(Vec2::from).collect()
}

/// Parses and checks a job document.
pub fn parse_job(text: &str) -> Result<JobSpec, JobError> {
    let table: toml::Table = toml::from_str(text)?;
    job_from_table(table)
}

pub fn job_from_table(table: toml::Table) -> Result<JobSpec, JobError> {
    let job: JobSpec = toml::Value::Table(table).try_into()?;
    job.check()?;
    Ok(job)
}

/// Splits `a.b.c=value`; the value is read as a TOML value, falling back to a
/// bare string.
pub fn parse_override(text: &str) -> Result<(Vec<String>, toml::Value), JobError> {
    let (key, raw) = text.split_once('=').ok_or_else(|| JobError::Override(text.into()))?;
    let path: Vec<String> = key.trim().split('.').map(|p| p.trim().to_string()).collect();
    if path.iter().any(|p| p.is_empty()) {
        return Err(JobError::Override(text.into()));
    }
    let raw = raw.trim();
    let value = toml::from_str::<toml::Table>(&format!("v = {raw}"))
        .ok()
        .and_then(|mut t| t.remove("v"))
        .unwrap_or_else(|| toml::Value::String(raw.to_string()));
    Ok((path, value))
}

/// Writes each override into `table`, creating intermediate tables.
pub fn apply_overrides(table: &mut toml::Table, overrides: &[(Vec<String>, toml::Value)]) -> Result<(), JobError> {
    for (path, value) in overrides {
        let (last, parents) = path.split_last().expect("override paths are non-empty");
        let mut cur = &mut *table;
        for p in parents {
            let entry = cur
                .entry(p.clone())
                .or_insert_with(|| toml::Value::Table(toml::Table::new()));
            cur = entry
                .as_table_mut()
                .ok_or_else(|| JobError::Invalid(format!("override path `{}` crosses a non-table value", path.join("."))))?;
        }
        cur.insert(last.clone(), value.clone());
    }
    Ok(())
}
