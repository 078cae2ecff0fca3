//! Executes a [`JobSpec`] and writes its artifacts.

use std::fs;
use std::io;
use std::path::Path;

use gauge_curves::{
    evolute_of_involute_roundtrip, evolute_with, involute_with, involute_of_evolute_roundtrip, polygon_polar, AssociatedGauge, AssociatedMethod,
    CurvatureEngine, DoubleAssociated, Gauge, GaugeError, GaugeKind, ParamCurve, RoundTripCase, RoundTripOptions,
    RoundTripReport, SampledCurve, Vec2, DEFAULT_VALIDATION_SEED,
};
use serde_json::json;
use thiserror::Error;

use crate::csv_out::{curve_table, profile_table, CsvError, Table};
use crate::job::{to_points, Command, JobError, JobSpec};
use crate::svg::{self, PlotCurve, Style};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitCode {
    Ok = 0,
    Io = 1,
    Parse = 2,
    Capability = 3,
    Numeric = 4,
    NotApplicable = 5,
}

#[derive(Debug, Error)]
pub enum RunError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: io::Error,
    },
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Capability(String),
    #[error("{0}")]
    Numeric(String),
    #[error("hypotheses not met: {0}")]
    NotApplicable(String),
}

impl RunError {
    pub fn io(path: &Path, source: io::Error) -> Self {
        RunError::Io {
            path: path.display().to_string(),
            source,
        }
    }

    pub fn code(&self) -> ExitCode {
        match self {
            RunError::Io { .. } => ExitCode::Io,
            RunError::Parse(_) => ExitCode::Parse,
            RunError::Capability(_) => ExitCode::Capability,
            RunError::Numeric(_) => ExitCode::Numeric,
            RunError::NotApplicable(_) => ExitCode::NotApplicable,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            RunError::Io { .. } => "io",
            RunError::Parse(_) => "parse",
            RunError::Capability(_) => "capability",
            RunError::Numeric(_) => "numeric",
            RunError::NotApplicable(_) => "not-applicable",
        }
    }

    /// The one-line JSON record printed on failure.
    pub fn record(&self) -> serde_json::Value {
        json!({
            "status": "error",
            "kind": self.kind(),
            "code": self.code() as i32,
            "message": self.to_string(),
        })
    }
}

impl From<GaugeError> for RunError {
    fn from(e: GaugeError) -> Self {
        match e {
            // Domain errors come from invalid job parameters.
            GaugeError::Domain(_) => RunError::Parse(e.to_string()),
            GaugeError::Capability(_) => RunError::Capability(e.to_string()),
            GaugeError::Numeric(_) | GaugeError::DegenerateCurvature { .. } => RunError::Numeric(e.to_string()),
        }
    }
}

impl From<JobError> for RunError {
    fn from(e: JobError) -> Self {
        RunError::Parse(e.to_string())
    }
}

impl From<CsvError> for RunError {
    fn from(e: CsvError) -> Self {
        match e {
            CsvError::Io { path, source } => RunError::Io { path, source },
            CsvError::Empty(_) => RunError::Numeric(e.to_string()),
            CsvError::Parse(m) => RunError::Parse(m),
        }
    }
}

/// What a successful run produced besides the files it wrote.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Outcome {
    /// CSV text when no CSV path was given.
    pub stdout_csv: Option<String>,
    /// Summary for round trips and validation.
    pub report: Option<serde_json::Value>,
}

struct Artifacts {
    table: Table,
    what: &'static str,
    plot: Vec<PlotCurve>,
    report: Option<serde_json::Value>,
}

/// Runs `job`, writing `output.csv` / `output.svg` / `output.report` when set.
pub fn run_job(job: &JobSpec) -> Result<Outcome, RunError> {
    let art = compute(job)?;
    let mut outcome = Outcome {
        report: art.report.clone(),
        ..Outcome::default()
    };
    match &job.output.csv {
        Some(path) => art.table.write(Path::new(path), art.what)?,
        None => {
            if art.table.is_empty() {
                return Err(CsvError::Empty(art.what).into());
            }
            outcome.stdout_csv = Some(art.table.to_csv_string());
        }
    }
    if let Some(path) = &job.output.svg {
        if art.plot.is_empty() {
            return Err(RunError::Parse(format!("command produces no plot for {}", art.what)));
        }
        let doc = svg::render(&art.plot).map_err(RunError::Numeric)?;
        fs::write(path, doc).map_err(|e| RunError::io(Path::new(path), e))?;
    }
    if let (Some(path), Some(report)) = (&job.output.report, &art.report) {
        let text = serde_json::to_string_pretty(report).expect("json values serialize") + "\n";
        fs::write(path, text).map_err(|e| RunError::io(Path::new(path), e))?;
    }
    Ok(outcome)
}

fn associated_method(job: &JobSpec, gauge: &Gauge) -> AssociatedMethod {
    job.params
        .associated
        .map_or_else(|| AssociatedMethod::default_for(gauge), AssociatedMethod::from)
}

fn engine(job: &JobSpec, gauge: &Gauge) -> Result<CurvatureEngine, RunError> {
    Ok(match job.params.associated {
        Some(m) => CurvatureEngine::with_associated(gauge, m.into())?,
        None => CurvatureEngine::new(gauge)?,
    })
}

fn base_plot(curve: &ParamCurve, n: usize) -> PlotCurve {
    let (a, b) = curve.domain();
    let n = n.max(256);
    let pts = (0..=n).map(|i| curve.value(a + (b - a) * i as f64 / n as f64)).collect();
    PlotCurve::new(pts, Style::Base)
}

fn sampled_plot(c: &SampledCurve, style: Style) -> PlotCurve {
    PlotCurve::new(c.points().iter().map(|p| p.point).collect(), style)
}

fn roundtrip_report(job: &JobSpec, r: &RoundTripReport) -> Result<serde_json::Value, RunError> {
    let case = match &r.case {
        RoundTripCase::Direct => "direct",
        RoundTripCase::Reversed => "reversed",
        RoundTripCase::NotApplicable(why) => return Err(RunError::NotApplicable(why.clone())),
    };
    Ok(json!({
        "status": "ok",
        "command": job.command.name(),
        "construction": r.construction,
        "case": case,
        "c": r.c,
        "max_deviation": r.max_deviation,
        "samples_used": r.samples_used,
    }))
}

fn compute(job: &JobSpec) -> Result<Artifacts, RunError> {
    let gauge = job.gauge.build()?;
    let curve = job.curve.as_ref().map(|c| c.build()).transpose()?;
    let tol = &job.tolerances;
    let points = to_points(&job.params.points);
    let need_curve = || curve.as_ref().ok_or_else(|| RunError::Parse("[curve] is required".into()));

    Ok(match job.command {
        Command::GaugeEval => {
            let fa = AssociatedGauge::new(&gauge, associated_method(job, &gauge))?;
            let mut table = Table::new(&["x1", "x2", "f", "f_a"]);
            for x in points {
                table.push(vec![x.x1, x.x2, gauge.eval(x)?, fa.eval(x)?]);
            }
            Artifacts { table, what: "point list", plot: Vec::new(), report: None }
        }
        Command::Associated => {
            let d = DoubleAssociated::new(&gauge, associated_method(job, &gauge))?;
            let mut table = Table::new(&["x1", "x2", "f_a", "f_aa", "residual"]);
            for x in points {
                let faa = d.second().eval(x)?;
                table.push(vec![x.x1, x.x2, d.first().eval(x)?, faa, d.residual(x)?]);
            }
            Artifacts { table, what: "point list", plot: Vec::new(), report: None }
        }
        Command::Polar => {
            let GaugeKind::Polygon(p) = gauge.kind() else {
                return Err(RunError::Parse("polar needs a polygon gauge".into()));
            };
            let polar = polygon_polar(p.vertices())?;
            let mut table = Table::new(&["x1", "x2"]);
            for q in &polar {
                table.push(vec![q.x1, q.x2]);
            }
            let closed = |v: &[Vec2]| v.iter().chain(v.first()).copied().collect::<Vec<_>>();
            let plot = vec![
                PlotCurve::new(closed(p.vertices()), Style::Base),
                PlotCurve::new(closed(&polar), Style::Evolute),
            ];
            Artifacts { table, what: "polar vertex list", plot, report: None }
        }
        Command::CurvatureProfile => {
            let curve = need_curve()?;
            let profile = engine(job, &gauge)?.profile(curve, job.samples, tol.quadrature)?;
            Artifacts {
                table: profile_table(&profile),
                what: "curvature profile",
                plot: vec![base_plot(curve, job.samples)],
                report: None,
            }
        }
        Command::Evolute => {
            let curve = need_curve()?;
            let e = evolute_with(&engine(job, &gauge)?, curve, job.samples, tol.k_min, tol.quadrature)?;
            Artifacts {
                table: curve_table(&e),
                what: "evolute",
                plot: vec![base_plot(curve, job.samples), sampled_plot(&e, Style::Evolute)],
                report: None,
            }
        }
        Command::Involute => {
            let curve = need_curve()?;
            let c = job.params.c.ok_or_else(|| RunError::Parse("params.c is required".into()))?;
            let inv = involute_with(&gauge, curve, c, job.samples, tol.quadrature)?;
            Artifacts {
                table: curve_table(&inv),
                what: "involute",
                plot: vec![base_plot(curve, job.samples), sampled_plot(&inv, Style::Involute)],
                report: None,
            }
        }
        Command::RoundTripEvoluteOfInvolute | Command::RoundTripInvoluteOfEvolute => {
            let curve = need_curve()?;
            let opts = RoundTripOptions {
                samples: job.samples,
                exclusion: tol.exclusion,
                quadrature_tol: tol.quadrature,
                derived_quadrature_tol: tol.derived_quadrature,
                sign_floor: tol.sign_floor,
                monotone_floor: tol.monotone_floor,
                k_min: tol.k_min,
                associated: job.params.associated.map(AssociatedMethod::from),
            };
            let (r, style) = if job.command == Command::RoundTripEvoluteOfInvolute {
                let c = job.params.c.ok_or_else(|| RunError::Parse("params.c is required".into()))?;
                (evolute_of_involute_roundtrip(&gauge, curve, c, &opts)?, Style::Involute)
            } else {
                (involute_of_evolute_roundtrip(&gauge, curve, &opts)?, Style::Evolute)
            };
            let report = roundtrip_report(job, &r)?;
            let recovered = r.recovered.as_ref().expect("applicable round trips carry the recovered curve");
            let mut plot = vec![base_plot(curve, job.samples)];
            if let Some(mid) = &r.intermediate {
                plot.push(sampled_plot(mid, style));
            }
            Artifacts {
                table: curve_table(recovered),
                what: "recovered curve",
                plot,
                report: Some(report),
            }
        }
        Command::Validate => {
            let seed = job.seed.unwrap_or(DEFAULT_VALIDATION_SEED);
            let v = gauge.validate_seeded(job.samples, seed);
            let mut table = Table::new(&[
                "samples",
                "positivity_failures",
                "homogeneity_violations",
                "subadditivity_violations",
                "worst_homogeneity",
                "worst_subadditivity",
                "smoothness_inconsistent",
                "strict_convexity_inconsistent",
            ]);
            table.push(vec![
                v.samples as f64,
                v.positivity_failures as f64,
                v.homogeneity_violations as f64,
                v.subadditivity_violations as f64,
                v.worst_homogeneity,
                v.worst_subadditivity,
                v.smoothness_inconsistent as u8 as f64,
                v.strict_convexity_inconsistent as u8 as f64,
            ]);
            let report = json!({
                "status": "ok",
                "command": job.command.name(),
                "gauge": gauge.name(),
                "seed": seed,
                "samples": v.samples,
                "violations": v.violations(),
                "clean": v.is_clean(),
            });
            Artifacts { table, what: "validation report", plot: Vec::new(), report: Some(report) }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::job::parse_job;

    fn run_text(text: &str) -> Result<Outcome, RunError> {
        run_job(&parse_job(text).unwrap())
    }

    #[test]
    fn polar_of_triangle() {
        let out = run_text(
            "command = \"polar\"\n[gauge]\nkind = \"polygon\"\nvertices = [[1, 0], [0, 1], [-1, -1]]\n",
        )
        .unwrap();
        let csv = out.stdout_csv.unwrap();
        assert_eq!(
            csv,
            "x1,x2\n-1.00000000000,1.00000000000\n-1.00000000000,-2.00000000000\n2.00000000000,1.00000000000\n"
        );
    }

    #[test]
    fn curvature_needs_smooth_gauge() {
        let err = run_text(
            "command = \"curvature-profile\"\n[gauge]\nkind = \"polygon\"\nvertices = [[1, 0], [0, 1], [-1, -1]]\n[curve]\nkind = \"circle\"\n",
        )
        .unwrap_err();
        assert_eq!(err.code(), ExitCode::Capability);
        assert_eq!(err.record()["code"], 3);
    }

    #[test]
    fn bad_parameter_is_a_parse_error() {
        let err = run_text("command = \"validate\"\n[gauge]\nkind = \"randers\"\nb = 1.5\n").unwrap_err();
        assert_eq!(err.code(), ExitCode::Parse);
    }

    #[test]
    fn straight_evolute_is_numeric_failure() {
        let err = run_text(
            "command = \"evolute\"\nsamples = 4\n[gauge]\nkind = \"euclidean\"\n[curve]\nkind = \"segment\"\nfrom = [0, 0]\nto = [1, 0]\n",
        )
        .unwrap_err();
        assert_eq!(err.code(), ExitCode::Numeric);
    }

    #[test]
    fn constant_curvature_round_trip_not_applicable() {
        let err = run_text("command = \"roundtrip-involute-of-evolute\"\n[gauge]\nkind = \"euclidean\"\n[curve]\nkind = \"circle\"\n")
            .unwrap_err();
        assert_eq!(err.code(), ExitCode::NotApplicable);
    }

    #[test]
    fn round_trip_report() {
        let out = run_text(
            "command = \"roundtrip-evolute-of-involute\"\n[gauge]\nkind = \"randers\"\nb = 0.5\n[curve]\nkind = \"circle\"\n[params]\nc = 10\n",
        )
        .unwrap();
        let r = out.report.unwrap();
        assert_eq!(r["case"], "direct");
        assert!(r["max_deviation"].as_f64().unwrap() <= 1e-4);
    }

    #[test]
    fn validate_is_seeded() {
        let text = "command = \"validate\"\nsamples = 50\nseed = 3\n[gauge]\nkind = \"randers\"\nb = 0.5\n";
        let a = run_text(text).unwrap();
        assert_eq!(a, run_text(text).unwrap());
        assert_eq!(a.report.unwrap()["clean"], true);
    }
}
