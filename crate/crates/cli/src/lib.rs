//! `polynorm` command-line front end.
//!
//! Exit codes: 0 success, 1 input or usage error, 2 property violation or
//! unmet requirement.

pub mod cache;
pub mod explore;
pub mod render;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use polynorm::audit::audit;
use polynorm::invariants::scan_levels;
use polynorm::polytope::format::{self, read_point_file};
use polynorm::{analyze, Analysis, FamilySpec, InvariantReport, Polytope, ReportOptions};

use crate::cache::Cache;
use crate::explore::ExploreConfig;

pub const EXIT_OK: u8 = 0;
pub const EXIT_INPUT: u8 = 1;
pub const EXIT_VIOLATION: u8 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "polynorm", version, about = "k-normality invariants and regularity bounds of lattice polytopes")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,

    /// Safety cap on the k_P search.
    #[arg(long, global = true, env = "POLYNORM_MAX_K", default_value_t = 64)]
    pub max_k: u32,

    /// Directory for cached reports.
    #[arg(long, global = true, env = "POLYNORM_CACHE")]
    pub cache_dir: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute the full invariant report.
    Analyze {
        /// Point files or family specs (cube:d, simplex:d, bruns:s,
        /// higashitani:d,h, reeve, random:d,bound,count,seed).
        #[arg(required = true)]
        inputs: Vec<String>,
        /// Exit 2 when some input is not very ample.
        #[arg(long)]
        require_kp: bool,
    },
    /// List the holes of kP for every scanned k.
    Holes {
        input: String,
        /// Scan at least up to this k.
        #[arg(long)]
        up_to: Option<u32>,
    },
    /// Run the property suite.
    Check { input: String },
    /// Sample random polytopes and store flagged records.
    Explore(ExploreArgs),
    /// Print the vertex file of a family.
    Gen { family: String },
}

#[derive(Debug, Args)]
pub struct ExploreArgs {
    #[arg(long, default_value_t = 3)]
    pub dim: usize,
    #[arg(long, default_value_t = 100)]
    pub count: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Coordinates are drawn from [0, bound].
    #[arg(long, default_value_t = 2)]
    pub bound: i64,
    /// Points per sample; defaults to dim + 3.
    #[arg(long)]
    pub points: Option<usize>,
    /// JSON-lines results store.
    #[arg(long, default_value = "explore.jsonl")]
    pub store: PathBuf,
    /// Store every sample, not only flagged ones.
    #[arg(long)]
    pub record_all: bool,
    /// Recompute every record of an existing store instead of sampling.
    #[arg(long, value_name = "STORE")]
    pub verify: Option<PathBuf>,
}

/// Reads a point file when `input` names an existing path, otherwise parses
/// a family spec.
pub fn load_input(input: &str) -> Result<(String, Polytope)> {
    let path = Path::new(input);
    if path.exists() {
        let file = read_point_file(path)?;
        let p = Polytope::from_points(&file.points).with_context(|| format!("{input}: invalid polytope"))?;
        return Ok((file.name.unwrap_or_else(|| input.to_string()), p));
    }
    match input.parse::<FamilySpec>() {
        Ok(spec) => Ok((spec.to_string(), spec.build()?)),
        Err(_) => bail!(
            "{input}: no such file and not a family spec \
             (cube:d, simplex:d, bruns:s, higashitani:d,h, reeve, random:d,bound,count,seed)"
        ),
    }
}

fn report_for(cli: &Cli, name: &str, p: &Polytope) -> Result<InvariantReport> {
    let opts = ReportOptions { max_k: cli.max_k };
    let cache = cli.cache_dir.as_deref().map(Cache::open).transpose()?;
    if let Some(hit) = cache.as_ref().and_then(|c| c.load(p, name)) {
        return Ok(hit);
    }
    let report = polynorm::full_report(p, name, &opts)?;
    if let Some(c) = &cache {
        c.store(p, &report)?;
    }
    Ok(report)
}

fn analysis_for(cli: &Cli, name: &str, p: &Polytope) -> Result<Analysis> {
    Ok(analyze(p, name, &ReportOptions { max_k: cli.max_k })?)
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<u8> {
    match &cli.command {
        Command::Analyze { inputs, require_kp } => {
            let mut reports = Vec::new();
            for input in inputs {
                let (name, p) = load_input(input)?;
                reports.push(report_for(cli, &name, &p)?);
            }
            let text = match cli.format {
                Format::Table => reports.iter().map(render::report_table).collect::<Vec<_>>().join("\n"),
                Format::Json if reports.len() == 1 => render::json(&reports[0])?,
                Format::Json => render::json(&reports)?,
                Format::Csv => render::reports_csv(&reports)?,
            };
            out.write_all(text.as_bytes())?;
            if *require_kp {
                let missing: Vec<&str> = reports.iter().filter(|r| r.k_p.is_none()).map(|r| r.name.as_str()).collect();
                if !missing.is_empty() {
                    eprintln!("k_P undefined (not very ample): {}", missing.join(", "));
                    return Ok(EXIT_VIOLATION);
                }
            }
            Ok(EXIT_OK)
        }
        Command::Holes { input, up_to } => {
            let (name, p) = load_input(input)?;
            let analysis = analysis_for(cli, &name, &p)?;
            let mut levels: Vec<_> = analysis.scan.levels.into_values().collect();
            if let Some(k) = *up_to {
                if k as usize > levels.len() {
                    levels = scan_levels(&p, k)?;
                }
            }
            let text = match cli.format {
                Format::Table => render::holes_table(&name, &levels),
                Format::Json => render::json(&levels)?,
                Format::Csv => render::holes_csv(&levels)?,
            };
            out.write_all(text.as_bytes())?;
            Ok(EXIT_OK)
        }
        Command::Check { input } => {
            let (name, p) = load_input(input)?;
            let analysis = analysis_for(cli, &name, &p)?;
            let verdicts = audit(&p, &analysis)?;
            let text = match cli.format {
                Format::Table => render::audit_table(&name, analysis.report.very_ample, &verdicts),
                Format::Json => render::json(&verdicts)?,
                Format::Csv => render::audit_csv(&verdicts)?,
            };
            out.write_all(text.as_bytes())?;
            Ok(if verdicts.all_pass() { EXIT_OK } else { EXIT_VIOLATION })
        }
        Command::Explore(args) => run_explore(cli, args, out),
        Command::Gen { family } => {
            let spec: FamilySpec = family.parse()?;
            let p = spec.build()?;
            let text = match cli.format {
                Format::Table => format::to_text(p.vertices()),
                Format::Json => render::json(&serde_json::json!({
                    "name": spec.to_string(),
                    "vertices": p.vertices(),
                }))?,
                Format::Csv => render::points_csv(p.vertices())?,
            };
            out.write_all(text.as_bytes())?;
            Ok(EXIT_OK)
        }
    }
}

fn run_explore(cli: &Cli, args: &ExploreArgs, out: &mut dyn Write) -> Result<u8> {
    if let Some(store) = &args.verify {
        let v = explore::verify_store(store, cli.max_k)?;
        for (spec, msg) in &v.failures {
            writeln!(out, "MISMATCH {spec}: {msg}")?;
        }
        writeln!(out, "verified {} records: {} failures", v.records, v.failures.len())?;
        return Ok(if v.failures.is_empty() { EXIT_OK } else { EXIT_VIOLATION });
    }
    let cfg = ExploreConfig {
        dim: args.dim,
        count: args.count,
        seed: args.seed,
        bound: args.bound,
        points: args.points.unwrap_or(args.dim + 3),
        max_k: cli.max_k,
    };
    let run = explore::explore(&cfg)?;
    for (spec, err) in &run.errors {
        eprintln!("skipped {spec}: {err}");
    }
    let written = if args.record_all {
        explore::append_records(&args.store, &run.records)?
    } else {
        explore::append_records(&args.store, run.flagged())?
    };
    writeln!(out, "{}", run.summary_line(&cfg))?;
    writeln!(out, "appended {written} records to {}", args.store.display())?;
    Ok(EXIT_OK)
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<polynorm::Error>() {
        Some(e) if is_internal(e) => EXIT_VIOLATION,
        _ => EXIT_INPUT,
    }
}

fn is_internal(e: &polynorm::Error) -> bool {
    match e {
        polynorm::Error::Internal(_) => true,
        polynorm::Error::Stage { source, .. } => is_internal(source),
        _ => false,
    }
}

pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    match run(&cli, &mut lock) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            let _ = lock.flush();
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
