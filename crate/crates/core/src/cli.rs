//! Command-line front end.
//!
//! Exit codes: 0 success, 1 a checked fact or containment failed (or an
//! output file could not be written), 2 usage error.

use std::ffi::OsString;
use std::fs::{File, OpenOptions};
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::canonical::{build_canonical_b, verify_canonical_facts};
use crate::cayley::{count_inverse_closed, inverse_closed_log2, ConnectionSet, DEFAULT_ENUMERATION_CAP};
use crate::census::{
    run_exhaustive, run_sampled, summaries_to_csv, CensusOptions, Classifier, Provenance,
};
use crate::autgrp::DEFAULT_DEGREE_CAP;
use crate::dicyclic::DicyclicGroup;
use crate::error::Error;

pub const JOBS_ENV: &str = "DICAUT_JOBS";

#[derive(Debug, Parser)]
#[command(name = "dicaut", version, about = "Automorphisms of Cayley graphs on generalised dicyclic groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print n, m, the Q8 x C2^l flag and the inverse-closed set count.
    Group { spec: String },
    /// Check the structural facts about the canonical group B.
    Verify { spec: String },
    /// Classify one connection set.
    Classify {
        spec: String,
        /// Lowercase hex bitmask, bit i = element i.
        #[arg(long = "set")]
        set: String,
        #[arg(long)]
        directed: bool,
        #[arg(long = "max-degree", default_value_t = DEFAULT_DEGREE_CAP)]
        max_degree: usize,
    },
    /// Exhaustive or sampled census.
    Census(CensusArgs),
}

#[derive(Debug, Args)]
struct CensusArgs {
    spec: String,
    #[arg(long, conflicts_with = "sample", required_unless_present = "sample")]
    exhaustive: bool,
    /// Number of random draws.
    #[arg(long, value_name = "N", requires = "seed")]
    sample: Option<u64>,
    #[arg(long, value_name = "S")]
    seed: Option<u64>,
    #[arg(long)]
    directed: bool,
    /// Worker threads; defaults to $DICAUT_JOBS, else the available parallelism.
    #[arg(long, env = JOBS_ENV)]
    jobs: Option<usize>,
    /// Records, one JSON object per line.
    #[arg(long, value_name = "PATH")]
    out: PathBuf,
    /// Summary JSON file.
    #[arg(long, value_name = "PATH")]
    summary: Option<PathBuf>,
    /// Append the summary row to this CSV file (header written when new).
    #[arg(long, value_name = "PATH")]
    csv: Option<PathBuf>,
    #[arg(long = "max-sets", default_value_t = DEFAULT_ENUMERATION_CAP)]
    max_sets: u64,
    #[arg(long = "max-degree", default_value_t = DEFAULT_DEGREE_CAP)]
    max_degree: usize,
    /// Write 0 for elapsed_us so repeated runs are byte-identical.
    #[arg(long = "no-timing")]
    no_timing: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exhaustive,
    Sample { trials: u64, seed: u64 },
}

/// Validated census configuration.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub group: DicyclicGroup,
    pub mode: Mode,
    pub directed: bool,
    pub out: PathBuf,
    pub summary: Option<PathBuf>,
    pub csv: Option<PathBuf>,
    pub options: CensusOptions,
}

impl RunConfig {
    fn from_args(args: CensusArgs) -> Result<Self, Error> {
        let group: DicyclicGroup = args.spec.parse()?;
        let mode = match (args.exhaustive, args.sample) {
            (true, _) => Mode::Exhaustive,
            (false, Some(0)) => return Err(Error::domain("--sample needs at least one trial")),
            (false, Some(trials)) => Mode::Sample {
                trials,
                seed: args.seed.unwrap_or(0),
            },
            (false, None) => return Err(Error::domain("one of --exhaustive or --sample is required")),
        };
        let jobs = args.jobs.unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1)
        });
        if jobs == 0 {
            return Err(Error::domain("--jobs must be at least 1"));
        }
        Ok(RunConfig {
            group,
            mode,
            directed: args.directed,
            out: args.out,
            summary: args.summary,
            csv: args.csv,
            options: CensusOptions {
                jobs,
                set_cap: args.max_sets,
                degree_cap: args.max_degree,
                timing: !args.no_timing,
            },
        })
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::ContainmentViolation { .. } | Error::Io(_) => 1,
        _ => 2,
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{rendered}")
            } else {
                write!(err, "{rendered}")
            };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn io(e: std::io::Error) -> Error {
    Error::from(e)
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32, Error> {
    match command {
        Command::Group { spec } => {
            let g: DicyclicGroup = spec.parse()?;
            writeln!(out, "group={}", g.spec()).map_err(io)?;
            writeln!(out, "n={}", g.order()).map_err(io)?;
            writeln!(out, "m={}", g.element_order_le2_count()).map_err(io)?;
            writeln!(out, "q8e={}", g.is_q8_x_c2l()).map_err(io)?;
            writeln!(out, "inverse_closed={}", count_inverse_closed(&g)).map_err(io)?;
            writeln!(out, "inverse_closed_log2={}", inverse_closed_log2(&g)).map_err(io)?;
            Ok(0)
        }
        Command::Verify { spec } => {
            let g: DicyclicGroup = spec.parse()?;
            let b = build_canonical_b(&g);
            let report = verify_canonical_facts(&g, &b);
            writeln!(out, "{}", serde_json::to_string(&report).expect("report serializes")).map_err(io)?;
            Ok(if report.all_passed() { 0 } else { 1 })
        }
        Command::Classify {
            spec,
            set,
            directed,
            max_degree,
        } => {
            let g: DicyclicGroup = spec.parse()?;
            let s = ConnectionSet::from_hex(g.order(), &set)?;
            let record = Classifier::new(&g, directed)
                .with_degree_cap(max_degree)
                .classify(&s, Provenance::Adhoc)?;
            writeln!(out, "{}", record.to_json()).map_err(io)?;
            Ok(0)
        }
        Command::Census(args) => {
            let cfg = RunConfig::from_args(args)?;
            census(&cfg, out)
        }
    }
}

fn census(cfg: &RunConfig, out: &mut dyn Write) -> Result<i32, Error> {
    let mut records = BufWriter::new(File::create(&cfg.out)?);
    let mut sink = |r: &crate::census::CensusRecord| -> Result<(), Error> {
        writeln!(records, "{}", r.to_json())?;
        Ok(())
    };
    let summary = match cfg.mode {
        Mode::Exhaustive => run_exhaustive(&cfg.group, cfg.directed, &cfg.options, &mut sink)?,
        Mode::Sample { trials, seed } => {
            run_sampled(&cfg.group, trials, seed, cfg.directed, &cfg.options, &mut sink)?
        }
    };
    records.flush()?;
    let json = summary.to_json();
    writeln!(out, "{json}").map_err(io)?;
    if let Some(path) = &cfg.summary {
        std::fs::write(path, format!("{json}\n"))?;
    }
    if let Some(path) = &cfg.csv {
        let fresh = std::fs::metadata(path).map(|m| m.len() == 0).unwrap_or(true);
        let text = summaries_to_csv(std::slice::from_ref(&summary));
        let body = if fresh {
            text
        } else {
            text.lines().skip(1).map(|l| format!("{l}\n")).collect()
        };
        let mut f = OpenOptions::new().create(true).append(true).open(path)?;
        f.write_all(body.as_bytes())?;
    }
    let failed = summary.bound.as_ref().is_some_and(|b| !b.satisfied);
    Ok(if failed { 1 } else { 0 })
}

pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
