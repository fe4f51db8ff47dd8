//! Command-line driver: `hamrep verify` and `hamrep demo`.

pub mod config;
pub mod demo;
pub mod report;
pub mod suites;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

pub use config::{Format, NRange, Overrides, Suite, SuiteConfig, Tolerances};
pub use report::{Check, Report, SuiteReport, SCHEMA};

use crate::error::{Error, Result};
use crate::liealg::Family;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "hamrep", version, about = "Verify Lie algebras, group laws and unitary representations of the quantum Hamilton group and its subgroups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run verification suites and report every check.
    Verify(VerifyArgs),
    /// Sample a transformed Gaussian wavepacket as CSV.
    Demo(DemoArgs),
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Suite to run (repeatable; default all).
    #[arg(long = "suite", value_enum)]
    suites: Vec<Suite>,
    /// Dimension or inclusive range, e.g. `3` or `1..4`.
    #[arg(long)]
    n: Option<NRange>,
    /// Family for the representation suites (repeatable), e.g. qha, ha, ga, "ga*", h.
    #[arg(long = "family")]
    families: Vec<Family>,
    /// Random trials per seeded check (default 200).
    #[arg(long)]
    trials: Option<usize>,
    /// Seed for all random streams (default 42).
    #[arg(long)]
    seed: Option<u64>,
    /// JSON file with representation labels.
    #[arg(long)]
    labels: Option<PathBuf>,
    /// JSON config file mirroring the report's `config` object.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct DemoArgs {
    /// `X0:X1:NX[,T0:T1:NT]`.
    #[arg(long, allow_hyphen_values = true)]
    grid: String,
    /// JSON file with family, labels, group element and wavepacket.
    #[arg(long)]
    transform: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Runs the selected suites, in parallel, assembling the report in suite-name order.
pub fn verify(config: &SuiteConfig) -> Report {
    let suites = config.selected();
    let results: Vec<SuiteReport> = std::thread::scope(|s| {
        let handles: Vec<_> = suites.iter().map(|suite| s.spawn(move || suites::run(*suite, config))).collect();
        handles.into_iter().map(|h| h.join().expect("suite thread panicked")).collect()
    });
    Report::new(config.clone(), results)
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::Config(format!("{}: {e}", p.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn cmd_verify(a: VerifyArgs) -> i32 {
    let overrides = Overrides {
        suites: a.suites,
        n: a.n,
        families: a.families,
        trials: a.trials,
        seed: a.seed,
        labels: a.labels,
        format: a.format,
        out: a.out,
    };
    let config = match SuiteConfig::resolve(a.config.as_deref(), overrides) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("hamrep: {e}");
            return EXIT_CONFIG;
        }
    };
    let report = verify(&config);
    let text = match config.format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    };
    if let Err(e) = emit(config.out.as_deref(), &text) {
        eprintln!("hamrep: {e}");
        return EXIT_CONFIG;
    }
    if report.pass {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

fn cmd_demo(a: DemoArgs) -> i32 {
    let run = || -> Result<String> {
        let grid: demo::Grid = a.grid.parse()?;
        let text = std::fs::read_to_string(&a.transform).map_err(|e| Error::Config(format!("{}: {e}", a.transform.display())))?;
        let transform = demo::Transform::from_json(&text)?;
        demo::demo_csv(&grid, &transform)
    };
    match run().and_then(|csv| emit(a.out.as_deref(), &csv)) {
        Ok(()) => EXIT_PASS,
        Err(e) => {
            eprintln!("hamrep: {e}");
            EXIT_CONFIG
        }
    }
}

/// Entry point shared by the binary and tests; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => match cli.command {
            Command::Verify(a) => cmd_verify(a),
            Command::Demo(a) => cmd_demo(a),
        },
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_PASS };
            let _ = e.print();
            code
        }
    }
}
