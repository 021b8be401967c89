//! Command-line entry points. Exit codes: 0 success, 1 failed verification or
//! an empty decomposition under `--fail-on-empty`, 2 usage, input or
//! configuration errors.

use super::{FrontendError, ProblemFile, ResultFile, SystemEntry, SCHEMA};
use crate::verify::{Report, SampleConfig};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "thomas", version, about = "Disjoint decomposition of polynomial and differential systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Factor over the rationals before splitting.
    #[arg(long, global = true)]
    factor: bool,
    /// Also reduce coefficients modulo lower equations.
    #[arg(long, global = true)]
    coeff_reduce: bool,
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    jobs: u64,
    /// Seed of the sampling streams used by verification.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true)]
    max_iterations: Option<u64>,
    /// Working precision of numeric verification, in bits.
    #[arg(long, global = true, default_value_t = 128)]
    precision: usize,
    #[arg(long, global = true, default_value_t = 1e-20)]
    tolerance: f64,
    /// Random points per free variable during verification.
    #[arg(long, global = true, default_value_t = 2)]
    samples: usize,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decompose the system of a problem file.
    Decompose {
        file: PathBuf,
        /// Exit with status 1 if there are no output systems.
        #[arg(long)]
        fail_on_empty: bool,
        /// Record the wall-clock time in the statistics.
        #[arg(long)]
        timing: bool,
        /// Attach a verification report.
        #[arg(long)]
        verify: bool,
    },
    /// Normal form of an expression modulo each system of the decomposition.
    Reduce {
        file: PathBuf,
        #[arg(long)]
        poly: String,
    },
    /// Check a result file.
    Verify { file: PathBuf },
}

enum Failure {
    Usage(String),
    Check,
}

impl From<FrontendError> for Failure {
    fn from(e: FrontendError) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

impl Cli {
    fn sample_config(&self) -> Result<SampleConfig, Failure> {
        let cfg = SampleConfig { precision: self.precision, tolerance: self.tolerance, samples: self.samples, seed: self.seed };
        cfg.validate().map_err(|e| Failure::Usage(e.to_string()))?;
        Ok(cfg)
    }

    fn options(&self, file: &ProblemFile) -> crate::decompose::Options {
        let mut o = file.options();
        o.factor |= self.factor;
        o.coeff_reduce |= self.coeff_reduce;
        o.jobs = self.jobs as usize;
        if let Some(m) = self.max_iterations {
            o.max_iterations = m;
        }
        o
    }

    fn emit(&self, out: &mut dyn Write, body: &str) -> Result<(), Failure> {
        match &self.output {
            Some(path) => std::fs::write(path, body).map_err(|e| Failure::Usage(format!("{}: {e}", path.display()))),
            None => out.write_all(body.as_bytes()).map_err(|e| Failure::Usage(e.to_string())),
        }
    }
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn systems_text(systems: &[SystemEntry]) -> String {
    let mut s = String::new();
    for (i, e) in systems.iter().enumerate() {
        s.push_str(&format!("system {}\n", i + 1));
        for p in &e.equations {
            s.push_str(&format!("  {p} = 0\n"));
        }
        for p in &e.inequations {
            s.push_str(&format!("  {p} != 0\n"));
        }
    }
    if systems.is_empty() {
        s.push_str("no solutions\n");
    }
    s
}

fn report_text(r: &Report) -> String {
    let mut s = if r.precision == 0 {
        format!("verification: symbolic, {} violations\n", r.violations.len())
    } else {
        format!("verification: {} points at {} bits, {} violations\n", r.points, r.precision, r.violations.len())
    };
    for v in &r.violations {
        s.push_str(&format!("  {v}\n"));
    }
    s
}

fn result_text(r: &ResultFile) -> String {
    let st = &r.statistics;
    let mut s = systems_text(&r.systems);
    s.push_str(&format!("iterations {}, splits {}, discarded {}", st.iterations, st.splits, st.discarded));
    if let Some(t) = st.time_ms {
        s.push_str(&format!(", {t:.3} ms"));
    }
    s.push('\n');
    if let Some(v) = &r.verification {
        s.push_str(&report_text(v));
    }
    s
}

fn run(cli: &Cli, out: &mut dyn Write) -> Result<(), Failure> {
    match &cli.command {
        Command::Decompose { file, fail_on_empty, timing, verify } => {
            let input: ProblemFile = read_json(file)?;
            let problem = input.load()?;
            let cfg = if *verify { Some(cli.sample_config()?) } else { None };
            let start = Instant::now();
            let outcome = problem.decompose(cli.options(&input))?;
            let mut statistics = outcome.statistics;
            if *timing {
                statistics.time_ms = Some(start.elapsed().as_secs_f64() * 1e3);
            }
            let verification = match &cfg {
                Some(c) => Some(problem.verify(&outcome.systems, c)?),
                None => None,
            };
            let result = ResultFile { schema: SCHEMA, input, systems: outcome.systems, statistics, verification };
            let body = match cli.format.unwrap_or(Format::Json) {
                Format::Json => json(&result),
                Format::Text => result_text(&result),
            };
            cli.emit(out, &body)?;
            if result.verification.as_ref().is_some_and(|r| !r.ok()) || (*fail_on_empty && result.systems.is_empty()) {
                return Err(Failure::Check);
            }
            Ok(())
        }
        Command::Reduce { file, poly } => {
            let input: ProblemFile = read_json(file)?;
            let problem = input.load()?;
            let outcome = problem.decompose(cli.options(&input))?;
            let remainders = problem.reduce(&outcome.systems, poly)?;
            let body = match cli.format.unwrap_or(Format::Text) {
                Format::Json => json(&serde_json::json!({ "schema": SCHEMA, "poly": poly, "remainders": remainders })),
                Format::Text => remainders.iter().map(|r| format!("{r}\n")).collect(),
            };
            cli.emit(out, &body)
        }
        Command::Verify { file } => {
            let result: ResultFile = read_json(file)?;
            if result.schema != SCHEMA {
                return Err(Failure::Usage(format!("unsupported schema version {}", result.schema)));
            }
            let problem = result.input.load()?;
            let report = problem.verify(&result.systems, &cli.sample_config()?)?;
            let body = match cli.format.unwrap_or(Format::Json) {
                Format::Json => json(&report),
                Format::Text => report_text(&report),
            };
            cli.emit(out, &body)?;
            if report.ok() {
                Ok(())
            } else {
                Err(Failure::Check)
            }
        }
    }
}

/// Runs the command line `args` (program name first) and returns the exit code.
pub fn run_with_io<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return if code == 0 { 0 } else { 2 };
        }
    };
    match run(&cli, out) {
        Ok(()) => 0,
        Err(Failure::Check) => 1,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

/// [`run_with_io`] on the process's standard streams.
pub fn run_cli<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    run_with_io(argv, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
