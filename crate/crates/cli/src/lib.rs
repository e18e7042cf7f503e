//! Front end for the `flow` binary: `run`, `verify` and `scan`.
//!
//! Exit codes: 0 success, 1 verification failure, 2 invalid input,
//! 3 step budget exhausted, 4 I/O or other runtime failure.

pub mod config;
pub mod output;
pub mod scan;

use std::ffi::OsString;
use std::fmt;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use xflow_core::analysis::VerificationReport;
use xflow_core::suites::{all_suites, suite, SuiteRun};
use xflow_core::{integrate, verify, FlowError, FlowSpec, GeometryClass, Termination};

use config::{config_path, parse_triple, ConfigLayer, Format};
use output::{sample_rows, write_csv, RunDocument};
use scan::{run_scan, write_scan_csv, GridAxis, ScanSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_RUNTIME: i32 = 4;

/// Marks errors caused by the user's input.
#[derive(Debug)]
pub struct InvalidInput(pub String);

impl InvalidInput {
    pub fn msg(s: impl Into<String>) -> anyhow::Error {
        anyhow::Error::new(InvalidInput(s.into()))
    }

    pub fn wrap(e: impl fmt::Display) -> anyhow::Error {
        InvalidInput::msg(e.to_string())
    }
}

impl fmt::Display for InvalidInput {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InvalidInput {}

#[derive(Debug, Parser)]
#[command(
    name = "flow",
    version,
    about = "Cross curvature flow on locally homogeneous 3-manifolds"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Integrate one flow and write the trajectory.
    Run(RunArgs),
    /// Run the verification suite of a geometry, or `all`.
    Verify(VerifyArgs),
    /// Integrate a grid of initial data and classify each run.
    Scan(ScanArgs),
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[arg(long)]
    pub geometry: Option<GeometryClass>,
    /// xcf-, xcf+, nxcf or nxcf+.
    #[arg(long)]
    pub flow: Option<FlowSpec>,
    /// Initial metric as A,B,C.
    #[arg(long, value_parser = parse_triple, allow_hyphen_values = true)]
    pub init: Option<[f64; 3]>,
    #[arg(long)]
    pub t_max: Option<f64>,
    #[arg(long)]
    pub rtol: Option<f64>,
    #[arg(long)]
    pub atol: Option<f64>,
    #[arg(long)]
    pub samples: Option<usize>,
    /// Accepted-step budget.
    #[arg(long)]
    pub max_steps: Option<usize>,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Skip the verification report.
    #[arg(long)]
    pub no_analysis: bool,
    /// JSON config file; defaults to $XFLOW_CONFIG.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

impl RunArgs {
    fn layer(&self) -> ConfigLayer {
        ConfigLayer {
            geometry: self.geometry,
            flow: self.flow,
            init: self.init,
            t_max: self.t_max,
            rtol: self.rtol,
            atol: self.atol,
            samples: self.samples,
            max_steps: self.max_steps,
            output: self.output.clone(),
            format: self.format,
            analysis: self.no_analysis.then_some(false),
        }
    }
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Geometry name or `all`.
    pub suite: String,
    /// Write the JSON reports here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long)]
    pub geometry: GeometryClass,
    #[arg(long, default_value = "xcf-")]
    pub flow: FlowSpec,
    /// Grid for A: `v`, `min:max:count` or `min:max:count:log`.
    #[arg(long = "a")]
    pub a: GridAxis,
    #[arg(long = "b")]
    pub b: GridAxis,
    #[arg(long = "c")]
    pub c: GridAxis,
    /// Rescale each datum to this volume ABC.
    #[arg(long)]
    pub volume: Option<f64>,
    #[arg(long, default_value_t = config::DEFAULT_T_MAX)]
    pub t_max: f64,
    #[arg(long)]
    pub rtol: Option<f64>,
    #[arg(long)]
    pub atol: Option<f64>,
    #[arg(long, default_value_t = 512)]
    pub samples: usize,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Worker threads; defaults to all cores.
    #[arg(long)]
    pub threads: Option<usize>,
}

fn sink(path: Option<&Path>) -> anyhow::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn write_json<T: Serialize>(path: Option<&Path>, value: &T) -> anyhow::Result<()> {
    let mut w = sink(path)?;
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

fn describe(t: &Termination, t0: Option<f64>) -> String {
    match t {
        Termination::ReachedTMax => "reached t_max".into(),
        Termination::SingularTime { t_stop, .. } => match t0 {
            Some(t0) => format!("singular time, stopped at t = {t_stop}, estimated T0 = {t0}"),
            None => format!("singular time, stopped at t = {t_stop}"),
        },
        Termination::StepBudgetExhausted { t_reached } => {
            format!("step budget exhausted at t = {t_reached}")
        }
    }
}

pub fn cmd_run(args: &RunArgs) -> anyhow::Result<i32> {
    let base = match config_path(args.config.clone()) {
        Some(p) => ConfigLayer::load(&p)?,
        None => ConfigLayer::default(),
    };
    let cfg = base.overlay(args.layer()).resolve()?;
    let traj = integrate(cfg.geometry, cfg.flow, cfg.initial()?, &cfg.options())?;
    let report = cfg.analysis.then(|| verify(&traj));
    eprintln!(
        "termination: {}",
        describe(
            &traj.termination,
            report.as_ref().and_then(|r| r.blowup_time)
        )
    );
    if let Some(r) = &report {
        eprintln!(
            "analysis: {}",
            if r.pass {
                "pass".to_string()
            } else {
                format!("fail {:?}", r.failures())
            }
        );
    }
    match cfg.format {
        Format::Csv => {
            let mut w = sink(cfg.output.as_deref())?;
            write_csv(&mut w, &sample_rows(&traj))?;
        }
        Format::Json => {
            let doc = RunDocument {
                meta: &cfg,
                samples: sample_rows(&traj),
                termination: &traj.termination,
                analysis: report,
            };
            write_json(cfg.output.as_deref(), &doc)?;
        }
    }
    Ok(match traj.termination {
        Termination::StepBudgetExhausted { .. } => EXIT_BUDGET,
        _ => EXIT_OK,
    })
}

#[derive(Debug, Serialize)]
struct SuiteEntry {
    name: &'static str,
    t_max: f64,
    report: VerificationReport,
}

#[derive(Debug, Serialize)]
struct SuiteDocument {
    suite: String,
    pass: bool,
    runs: Vec<SuiteEntry>,
}

pub fn cmd_verify(args: &VerifyArgs) -> anyhow::Result<i32> {
    let runs: Vec<SuiteRun> = if args.suite == "all" {
        all_suites()
    } else {
        suite(args.suite.parse().map_err(InvalidInput::wrap)?)
    };
    let mut entries = Vec::new();
    for r in runs {
        let (_, report) = r.execute()?;
        if report.pass {
            eprintln!("PASS {}", r.name);
        } else {
            eprintln!("FAIL {}: {}", r.name, report.failures().join(", "));
        }
        entries.push(SuiteEntry {
            name: r.name,
            t_max: r.t_max,
            report,
        });
    }
    let pass = entries.iter().all(|e| e.report.pass);
    write_json(
        args.output.as_deref(),
        &SuiteDocument {
            suite: args.suite.clone(),
            pass,
            runs: entries,
        },
    )?;
    Ok(if pass { EXIT_OK } else { EXIT_VERIFY_FAILED })
}

pub fn cmd_scan(args: &ScanArgs) -> anyhow::Result<i32> {
    let defaults = xflow_core::IntegratorOptions::new(args.t_max);
    let options = defaults
        .with_tolerances(
            args.rtol.unwrap_or(defaults.rtol),
            args.atol.unwrap_or(defaults.atol),
        )
        .with_samples(args.samples);
    if let Some(v) = args.volume {
        if !(v > 0.0 && v.is_finite()) {
            return Err(InvalidInput::msg("--volume must be positive"));
        }
    }
    let spec = ScanSpec {
        geometry: args.geometry,
        flow: args.flow,
        axes: [args.a, args.b, args.c],
        volume: args.volume,
        options,
    };
    let rows = run_scan(&spec, args.threads)?;
    match args.format {
        Format::Csv => write_scan_csv(sink(args.output.as_deref())?, &rows)?,
        Format::Json => write_json(args.output.as_deref(), &rows)?,
    }
    Ok(EXIT_OK)
}

fn exit_code(err: &anyhow::Error) -> i32 {
    let invalid = err
        .chain()
        .any(|e| e.is::<InvalidInput>() || e.is::<FlowError>());
    if invalid {
        EXIT_INVALID
    } else {
        EXIT_RUNTIME
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_cli<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
        }
    };
    let result = match &cli.command {
        Command::Run(a) => cmd_run(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Scan(a) => cmd_scan(a),
    };
    result.unwrap_or_else(|e| {
        eprintln!("error: {e:#}");
        exit_code(&e)
    })
}
