use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process;

use clap::Parser;
use gauge_curves_cli::job::{apply_overrides, job_from_table, parse_override};
use gauge_curves_cli::{run_job, RunError, CSV_FORMAT_VERSION, JOB_FORMAT_VERSION};

/// Curvature, evolutes and involutes of plane curves under asymmetric norms.
///
/// Every field of the job file can be overridden with `--set key.path=value`;
/// the dedicated flags below take precedence over `--set`.
#[derive(Debug, Parser)]
#[command(name = "gauge-curves", disable_version_flag = true)]
struct Cli {
    /// Job specification (TOML).
    #[arg(long, value_name = "PATH")]
    spec: Option<PathBuf>,
    #[arg(long, value_name = "PATH")]
    out_csv: Option<String>,
    #[arg(long, value_name = "PATH")]
    out_svg: Option<String>,
    #[arg(long, value_name = "N")]
    samples: Option<usize>,
    /// Seed for the sampling in `validate`.
    #[arg(long, value_name = "N")]
    seed: Option<u64>,
    /// Arc-length quadrature tolerance.
    #[arg(long, value_name = "X")]
    tol: Option<f64>,
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    /// Print library and format versions.
    #[arg(short = 'V', long)]
    version: bool,
}

fn fail(e: &RunError) -> ! {
    eprintln!("{}", e.record());
    process::exit(e.code() as i32);
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => fail(&RunError::Parse(e.to_string().trim_end().to_string())),
    };
    if cli.version {
        println!(
            "gauge-curves {} (job format {JOB_FORMAT_VERSION}, csv format {CSV_FORMAT_VERSION})",
            gauge_curves::VERSION
        );
        return;
    }
    let Some(spec) = &cli.spec else {
        fail(&RunError::Parse("--spec <PATH> is required".into()));
    };
    let text = fs::read_to_string(spec).unwrap_or_else(|e| fail(&RunError::io(spec, e)));
    let job = (|| {
        let mut table: toml::Table = toml::from_str(&text).map_err(gauge_curves_cli::job::JobError::from)?;
        let mut overrides = cli.set.iter().map(|s| parse_override(s)).collect::<Result<Vec<_>, _>>()?;
        let flag = |key: &str, v: toml::Value| (key.split('.').map(str::to_string).collect(), v);
        if let Some(n) = cli.samples {
            overrides.push(flag("samples", toml::Value::Integer(n as i64)));
        }
        if let Some(n) = cli.seed {
            overrides.push(flag("seed", toml::Value::Integer(n as i64)));
        }
        if let Some(x) = cli.tol {
            overrides.push(flag("tolerances.quadrature", toml::Value::Float(x)));
        }
        if let Some(p) = &cli.out_csv {
            overrides.push(flag("output.csv", toml::Value::String(p.clone())));
        }
        if let Some(p) = &cli.out_svg {
            overrides.push(flag("output.svg", toml::Value::String(p.clone())));
        }
        apply_overrides(&mut table, &overrides)?;
        job_from_table(table)
    })()
    .unwrap_or_else(|e| fail(&e.into()));

    let outcome = run_job(&job).unwrap_or_else(|e| fail(&e));
    let mut stdout = std::io::stdout().lock();
    if let Some(csv) = &outcome.stdout_csv {
        let _ = stdout.write_all(csv.as_bytes());
    }
    // Without a report path the summary goes to stdout, unless stdout carries the CSV.
    if let (Some(report), None) = (&outcome.report, &job.output.report) {
        if outcome.stdout_csv.is_none() {
            let _ = writeln!(stdout, "{report}");
        } else {
            eprintln!("{report}");
        }
    }
}
