//! `toricity`: toricity analysis of vertically parametrized systems and
//! mass-action reaction networks.
//!
//! Exit codes: 0 success, 1 I/O or internal failure, 2 parse error,
//! 3 dimension or precondition violation.

mod batch;
mod export;
mod input;
mod render;

use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use toricity_core::crn::{analyze_network, NetworkOptions};
use toricity_core::exactalg::{parse_rational, Rational};
use toricity_core::toricity::{analyze, AnalyzeOptions, BoundaryCondition, GroupMode};

use batch::{batch_text, run_batch, BatchOptions};
use input::{load_model, matrix_json, parse_mode, Model};
use render::Sections;

pub const SEED_VARIABLE: &str = "TORICITY_SEED";

#[derive(Debug)]
pub enum CliError {
    Parse(String),
    Dimension(String),
    Io(String),
    Failed(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Dimension(_) => 3,
            CliError::Io(_) | CliError::Failed(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(m) => write!(f, "parse error: {m}"),
            CliError::Dimension(m) => write!(f, "{m}"),
            CliError::Io(m) | CliError::Failed(m) => write!(f, "{m}"),
        }
    }
}

#[derive(Parser)]
#[command(name = "toricity", version, about = "Toricity of vertically parametrized systems and reaction networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Group of zeros: positive, real-star or complex-star.
    #[arg(long)]
    mode: Option<String>,
    /// Random seed; defaults to $TORICITY_SEED, then 0.
    #[arg(long)]
    seed: Option<u64>,
    /// Emit the JSON report.
    #[arg(long)]
    json: bool,
    /// Parameter values for coset counting, comma-separated.
    #[arg(long, value_delimiter = ',')]
    kappa: Option<Vec<String>>,
    /// Assert that no positive parameter gives zeros on the boundary.
    #[arg(long)]
    no_boundary_zeros: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a system given by matrices (JSON or CSV) or a network file.
    Analyze {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Analyze a reaction network.
    Network {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        analyze: bool,
        /// Reduce intermediates before the analysis (default).
        #[arg(long, conflicts_with = "no_reduce")]
        reduce: bool,
        #[arg(long)]
        no_reduce: bool,
        #[arg(long)]
        multistationarity: bool,
        #[arg(long)]
        acr: bool,
        #[arg(long)]
        structure: bool,
        /// Also write the steady-state matrices as matrix JSON.
        #[arg(long, value_name = "FILE")]
        matrices: Option<PathBuf>,
    },
    /// Analyze every model file of a directory.
    Batch {
        dir: PathBuf,
        #[arg(long, value_name = "FILE")]
        report: PathBuf,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Per-model timeout in seconds.
        #[arg(long, default_value_t = 60.0)]
        timeout: f64,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        mode: Option<String>,
        /// Record wall time per model; reports then differ between runs.
        #[arg(long)]
        timings: bool,
    },
    /// Write the coset counting system in the exchange format.
    Export {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        kappa: Vec<String>,
        #[arg(long, value_name = "FILE")]
        out: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
    },
}

fn resolve_seed(flag: Option<u64>) -> Result<u64, CliError> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var(SEED_VARIABLE) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Parse(format!("{SEED_VARIABLE} must be an unsigned integer, found '{v}'"))),
        Err(_) => Ok(0),
    }
}

fn resolve_mode(flag: Option<&str>, file: Option<GroupMode>) -> Result<GroupMode, CliError> {
    match flag {
        Some(text) => parse_mode(text).ok_or_else(|| CliError::Parse(format!("unknown mode '{text}'"))),
        None => Ok(file.unwrap_or(GroupMode::Positive)),
    }
}

fn parse_kappa(values: &[String]) -> Result<Vec<Rational>, CliError> {
    values
        .iter()
        .map(|v| parse_rational(v).ok_or_else(|| CliError::Parse(format!("invalid parameter value '{v}'"))))
        .collect()
}

fn analyze_options(common: &Common) -> Result<AnalyzeOptions, CliError> {
    Ok(AnalyzeOptions {
        boundary: if common.no_boundary_zeros { BoundaryCondition::Yes } else { BoundaryCondition::Unknown },
        kappa: common.kappa.as_deref().map(parse_kappa).transpose()?,
        ..AnalyzeOptions::default()
    })
}

fn check_kappa_length(options: &AnalyzeOptions, m: usize) -> Result<(), CliError> {
    match &options.kappa {
        Some(k) if k.len() != m => Err(CliError::Dimension(format!("{} parameter values for {m} parameters", k.len()))),
        _ => Ok(()),
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

fn json_text(value: &serde_json::Value) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("JSON values serialize");
    text.push('\n');
    text
}

fn cmd_analyze(file: &Path, common: &Common) -> Result<String, CliError> {
    let model = load_model(file)?;
    let file_mode = match &model {
        Model::Matrices { mode, .. } => *mode,
        Model::Network(_) => None,
    };
    let mode = resolve_mode(common.mode.as_deref(), file_mode)?;
    let seed = resolve_seed(common.seed)?;
    let sys = model.system()?;
    let options = analyze_options(common)?;
    check_kappa_length(&options, sys.m())?;
    let report = analyze(&sys, mode, seed, &options);
    Ok(if common.json {
        json_text(&render::analyze_json(&sys, &report))
    } else {
        render::analyze_text(&sys, &report)
    })
}

struct NetworkFlags {
    analyze: bool,
    no_reduce: bool,
    multistationarity: bool,
    acr: bool,
    structure: bool,
    matrices: Option<PathBuf>,
}

fn cmd_network(file: &Path, common: &Common, flags: &NetworkFlags) -> Result<String, CliError> {
    let text = std::fs::read_to_string(file).map_err(|e| CliError::Io(format!("cannot read {}: {e}", file.display())))?;
    let net = toricity_core::crn::parse_network(&text)?;
    let mode = resolve_mode(common.mode.as_deref(), None)?;
    let seed = resolve_seed(common.seed)?;
    let any = flags.analyze || flags.multistationarity || flags.acr || flags.structure;
    let sections = Sections {
        analyze: flags.analyze || !any,
        structure: flags.structure || !any,
        multistationarity: flags.multistationarity || !any,
        acr: flags.acr || !any,
    };
    let options = NetworkOptions {
        reduce: !flags.no_reduce,
        structure: sections.structure,
        multistationarity: sections.multistationarity,
        acr: sections.acr,
        analyze: analyze_options(common)?,
    };
    check_kappa_length(&options.analyze, net.m())?;
    let report = analyze_network(&net, mode, seed, &options)?;
    if let Some(path) = &flags.matrices {
        write_file(path, &json_text(&matrix_json(&report.system, mode)))?;
    }
    Ok(if common.json {
        json_text(&render::network_json(&net, &report, sections))
    } else {
        render::network_text(&net, &report, sections)
    })
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Analyze { file, common } => cmd_analyze(&file, &common),
        Command::Network {
            file,
            common,
            analyze,
            reduce: _,
            no_reduce,
            multistationarity,
            acr,
            structure,
            matrices,
        } => cmd_network(
            &file,
            &common,
            &NetworkFlags {
                analyze,
                no_reduce,
                multistationarity,
                acr,
                structure,
                matrices,
            },
        ),
        Command::Batch {
            dir,
            report,
            jobs,
            timeout,
            seed,
            mode,
            timings,
        } => {
            if !(timeout.is_finite() && timeout > 0.0) {
                return Err(CliError::Parse("the timeout must be a positive number of seconds".into()));
            }
            let options = BatchOptions {
                jobs,
                timeout: Duration::from_secs_f64(timeout),
                seed: resolve_seed(seed)?,
                mode: resolve_mode(mode.as_deref(), None)?,
                timings,
            };
            let result = run_batch(&dir, &options)?;
            let text = serde_json::to_string_pretty(&result).expect("batch reports serialize") + "\n";
            write_file(&report, &text)?;
            Ok(batch_text(&result))
        }
        Command::Export { file, kappa, out, seed } => {
            let model = load_model(&file)?;
            let text = export::export_system(&model.system()?, &parse_kappa(&kappa)?, resolve_seed(seed)?)?;
            write_file(&out, &text)?;
            Ok(String::new())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(text) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(text.as_bytes());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
