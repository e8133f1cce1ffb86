//! Command line driver: reads a JSON job, runs one command, writes JSON.
//!
//! Exit codes: 0 on success, 1 on domain errors, 2 on unreadable or
//! malformed input. Failures also write an error document to stdout.

use std::ffi::OsString;
use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use thiserror::Error;
use tropsing::io::{self, Envelope, ErrorOutput, JobError, JobSpec, ParseError};
use tropsing::matroid::DEFAULT_FLAG_LIMIT;
use tropsing::SvgOptions;

/// `plot` result: the curve document plus the picture or where it went.
#[derive(Serialize)]
struct PlotOutput {
    #[serde(flatten)]
    curve: io::CurveOutput,
    #[serde(skip_serializing_if = "Option::is_none")]
    svg_file: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    svg: Option<String>,
}

pub const LIMIT_VAR: &str = "TROPSING_LIMIT";

#[derive(Debug, Parser)]
#[command(name = "tropsing", version, about = "Singular tropical plane curves with exact arithmetic")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Regular subdivision induced by the heights, with its secondary cone.
    Subdivide(Common),
    /// Dual tropical curve.
    Curve(Common),
    /// Coefficient matrix, Gale dual and classified flags of flats.
    Flags(Common),
    /// Kind of singularity at the origin, at `at`, or at the non-torus point.
    Classify(Common),
    /// Whether the secondary cone lies in the tropical discriminant.
    Discriminant(Common),
    /// Random polynomial singular at (1, 1) in the weight class of a flag.
    Lift(Common),
    /// The curve with an SVG drawing of it next to its subdivision.
    Plot(Common),
}

#[derive(Debug, Args)]
struct Common {
    /// Job file; stdin when absent.
    #[arg(long = "in", value_name = "FILE")]
    input: Option<PathBuf>,
    /// Result file; stdout when absent.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    /// SVG file written by `plot`.
    #[arg(long, value_name = "FILE")]
    svg: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    /// Largest configuration whose flags may be enumerated.
    #[arg(long)]
    limit: Option<usize>,
    /// Pivot columns of the Gale dual.
    #[arg(long, value_name = "I,J,K", value_parser = parse_pivots)]
    pivots: Option<[usize; 3]>,
}

fn parse_pivots(s: &str) -> Result<[usize; 3], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [i, j, k] = parts.as_slice() else {
        return Err(format!("expected three comma separated indices, got {s:?}"));
    };
    let num = |t: &str| t.parse::<usize>().map_err(|e| format!("{t:?}: {e}"));
    Ok([num(i)?, num(j)?, num(k)?])
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {what}: {source}")]
    Input {
        what: String,
        source: std::io::Error,
    },
    #[error("cannot write {what}: {source}")]
    Output {
        what: String,
        source: std::io::Error,
    },
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Job(#[from] JobError),
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Input { .. } | CliError::Output { .. } => "io",
            CliError::Parse(_) => "parse",
            CliError::Job(e) => e.kind(),
        }
    }

    fn exit_code(&self) -> i32 {
        match self {
            CliError::Job(_) | CliError::Output { .. } => 1,
            CliError::Usage(_) | CliError::Input { .. } | CliError::Parse(_) => 2,
        }
    }
}

/// Runs the command line `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{e}");
                return 0;
            }
            let _ = write!(stderr, "{e}");
            let err = CliError::Usage(e.kind().to_string());
            emit_error(&err, stdout);
            return err.exit_code();
        }
    };
    match execute(cli, stdin, stdout) {
        Ok(()) => 0,
        Err(err) => {
            let _ = writeln!(stderr, "tropsing: {err}");
            emit_error(&err, stdout);
            err.exit_code()
        }
    }
}

fn emit_error(err: &CliError, stdout: &mut dyn Write) {
    let doc = ErrorOutput::new(err.kind(), err.to_string());
    let _ = writeln!(stdout, "{}", serde_json::to_string_pretty(&doc).expect("serializable"));
}

fn execute(cli: Cli, stdin: &mut dyn Read, stdout: &mut dyn Write) -> Result<(), CliError> {
    let (command, common) = match cli.command {
        Command::Subdivide(c) => ("subdivide", c),
        Command::Curve(c) => ("curve", c),
        Command::Flags(c) => ("flags", c),
        Command::Classify(c) => ("classify", c),
        Command::Discriminant(c) => ("discriminant", c),
        Command::Lift(c) => ("lift", c),
        Command::Plot(c) => ("plot", c),
    };
    let text = match &common.input {
        Some(path) => fs::read_to_string(path).map_err(|source| CliError::Input {
            what: path.display().to_string(),
            source,
        })?,
        None => {
            let mut s = String::new();
            stdin.read_to_string(&mut s).map_err(|source| CliError::Input {
                what: "stdin".into(),
                source,
            })?;
            s
        }
    };
    let mut job = JobSpec::from_json(&text)?;
    apply_options(&mut job, &common)?;

    let text = match command {
        "subdivide" => document(io::subdivide(&job)?),
        "curve" => document(io::curve(&job)?),
        "flags" => document(io::flags(&job)?),
        "classify" => document(io::classify(&job)?),
        "discriminant" => document(io::discriminant(&job)?),
        "lift" => document(io::lift(&job)?),
        "plot" => {
            let (curve, svg) = io::plot(&job, &SvgOptions::default())?;
            let out = match &common.svg {
                Some(path) => {
                    write_file(path, &svg)?;
                    PlotOutput {
                        curve,
                        svg_file: Some(path.display().to_string()),
                        svg: None,
                    }
                }
                None => PlotOutput {
                    curve,
                    svg_file: None,
                    svg: Some(svg),
                },
            };
            document(out)
        }
        _ => unreachable!("every subcommand is listed"),
    };
    match &common.out {
        Some(path) => write_file(path, &text),
        None => stdout.write_all(text.as_bytes()).map_err(|source| CliError::Output {
            what: "stdout".into(),
            source,
        }),
    }
}

fn document<T: Serialize>(body: T) -> String {
    serde_json::to_string_pretty(&Envelope::new(body)).expect("serializable") + "\n"
}

fn write_file(path: &PathBuf, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Output {
        what: path.display().to_string(),
        source,
    })
}

/// Command line flags win over the job file, which wins over the environment.
fn apply_options(job: &mut JobSpec, common: &Common) -> Result<(), CliError> {
    if let Some(seed) = common.seed {
        job.options.seed = Some(seed);
    }
    if let Some(p) = common.pivots {
        job.options.pivots = Some(p);
    }
    let env_limit = match std::env::var(LIMIT_VAR) {
        Ok(v) => Some(
            v.trim()
                .parse::<usize>()
                .map_err(|e| CliError::Usage(format!("{LIMIT_VAR}={v:?}: {e}")))?,
        ),
        Err(_) => None,
    };
    job.options.limit = Some(
        common
            .limit
            .or(job.options.limit)
            .or(env_limit)
            .unwrap_or(DEFAULT_FLAG_LIMIT),
    );
    Ok(())
}
