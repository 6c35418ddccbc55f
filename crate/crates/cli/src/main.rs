mod analysis;
mod instance;

use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use conductor_core::corpus::run_corpus;
use conductor_core::explorer::{scan, FuzzConfig, Mode};
use conductor_core::vector::parse_vector_list;
use conductor_core::{Error, Limits};
use serde_json::{json, Value};

use analysis::{lookup, Options, Status};
use instance::{parse_spec, InstanceSpec, SpecError};

const EXIT_MISMATCH: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_BOUND: u8 = 3;

#[derive(Parser)]
#[command(name = "conductor", version, about = "Normalizations, conductors and parameter-ideal certificates for monomial semigroup rings")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    #[command(flatten)]
    limits: LimitArgs,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct LimitArgs {
    /// Highest degree visited by the conductor search
    #[arg(long, global = true, env = "CONDUCTOR_DEGREE_CAP", default_value_t = Limits::default().conductor_degree_cap)]
    conductor_degree_cap: i64,

    /// Entry degree bound for monomial parameter systems
    #[arg(long, global = true, env = "CONDUCTOR_SOP_DEGREE_CAP", default_value_t = Limits::default().sop_degree_cap)]
    sop_degree_cap: i64,

    /// Largest box enumerated for zonotope lattice points
    #[arg(long, global = true, default_value_t = Limits::default().zonotope_box_cap)]
    zonotope_box_cap: u64,

    /// Largest number of module generators produced by the closure
    #[arg(long, global = true, default_value_t = Limits::default().module_iteration_cap)]
    module_iteration_cap: usize,

    /// Largest box enumerated while certifying the conductor
    #[arg(long, global = true, default_value_t = Limits::default().certify_box_cap)]
    certify_box_cap: u64,

    /// Largest multiple tried for radical exponents
    #[arg(long, global = true)]
    power_cap: Option<u64>,

    /// Degree bound for the single-generator search m = c + (y)
    #[arg(long, global = true, default_value_t = Limits::default().witness_degree_cap)]
    witness_degree_cap: i64,

    /// Degree bound for seminormality checks that cannot be made exact
    #[arg(long, global = true, default_value_t = Limits::default().seminormal_bound)]
    seminormal_bound: i64,
}

impl LimitArgs {
    fn limits(&self) -> Limits {
        Limits {
            zonotope_box_cap: self.zonotope_box_cap,
            module_iteration_cap: self.module_iteration_cap,
            conductor_degree_cap: self.conductor_degree_cap,
            certify_box_cap: self.certify_box_cap,
            power_cap: self.power_cap,
            witness_degree_cap: self.witness_degree_cap,
            seminormal_bound: self.seminormal_bound,
            sop_degree_cap: self.sop_degree_cap,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Normalization, conductor, certificate and seminormality in one report
    Analyze { file: PathBuf },
    /// Hilbert basis of the saturation and module generators over the semigroup
    Normalize { file: PathBuf },
    /// Conductor generators over R and over its normalization
    Conductor { file: PathBuf },
    /// Non-containment certificate, or a containment check for one parameter system
    Ikeda {
        file: PathBuf,
        /// Monomial system of parameters, e.g. "2 0; 0 1"
        #[arg(long)]
        sop: Option<String>,
        /// Search all monomial parameter systems up to --sop-degree-cap
        #[arg(long)]
        search: bool,
    },
    /// Built-in worked examples
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
    /// Seeded random search for parameter ideals containing the conductor
    Fuzz {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        count: usize,
        /// numerical or affine(d)
        #[arg(long, default_value = "numerical")]
        mode: String,
        /// Entry degree bound for parameter systems (overrides --sop-degree-cap)
        #[arg(long)]
        degree_cap: Option<i64>,
        /// Largest generator (numerical) or coordinate (affine)
        #[arg(long)]
        max_generator: Option<i64>,
    },
}

#[derive(Subcommand)]
enum CorpusAction {
    /// Check every entry against its expected values
    Verify,
}

enum Failure {
    Spec(SpecError),
    Core(Error),
    Io(String),
}

impl Failure {
    fn exit(&self) -> u8 {
        match self {
            Failure::Spec(_) | Failure::Io(_) => EXIT_INPUT,
            Failure::Core(e) if e.is_bound_exceeded() => EXIT_BOUND,
            Failure::Core(Error::Internal(_) | Error::MultiplicationFailed { .. }) => EXIT_MISMATCH,
            Failure::Core(_) => EXIT_INPUT,
        }
    }

    fn object(&self) -> Value {
        let kind = match self {
            Failure::Spec(_) => "invalid_instance",
            Failure::Io(_) => "io",
            Failure::Core(Error::Uncertified) => "uncertified",
            Failure::Core(e) if e.is_bound_exceeded() => "bound_exceeded",
            Failure::Core(Error::Internal(_) | Error::MultiplicationFailed { .. }) => "check_failed",
            Failure::Core(_) => "invalid_input",
        };
        let mut error = json!({ "kind": kind, "message": self.message(), "exit_code": self.exit() });
        if let Failure::Spec(e) = self {
            error["line"] = json!(e.line);
            error["column"] = json!(e.column);
        }
        json!({ "error": error })
    }

    fn message(&self) -> String {
        match self {
            Failure::Spec(e) => e.to_string(),
            Failure::Core(e) => e.to_string(),
            Failure::Io(m) => m.clone(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<SpecError> for Failure {
    fn from(e: SpecError) -> Self {
        Failure::Spec(e)
    }
}

fn read_spec(path: &Path) -> Result<InstanceSpec, Failure> {
    let mut text = String::new();
    if path == Path::new("-") {
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Failure::Io(format!("reading stdin: {e}")))?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("reading {}: {e}", path.display())))?;
    }
    Ok(parse_spec(&text)?)
}

/// Writes a report to stdout; a closed pipe is not an error.
fn emit(format: Format, json: &Value, text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(json).unwrap_or_default()),
        Format::Text => write!(out, "{text}"),
    };
}

fn to_json<T: serde::Serialize>(value: &T) -> Result<Value, Failure> {
    serde_json::to_value(value).map_err(|e| Failure::Core(Error::Internal(format!("serializing report: {e}"))))
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    let limits = cli.limits.limits();
    let (name, file, sop, search) = match &cli.command {
        Command::Analyze { file } => ("analyze", file, None, false),
        Command::Normalize { file } => ("normalize", file, None, false),
        Command::Conductor { file } => ("conductor", file, None, false),
        Command::Ikeda { file, sop, search } => ("ikeda", file, sop.as_ref(), *search),
        Command::Corpus {
            action: CorpusAction::Verify,
        } => {
            let report = run_corpus(&limits);
            emit(cli.format, &to_json(&report)?, &report.render_text());
            return Ok(if report.passed { 0 } else { EXIT_MISMATCH });
        }
        Command::Fuzz {
            seed,
            count,
            mode,
            degree_cap,
            max_generator,
        } => {
            let mut config = FuzzConfig::new(*seed, *count, mode.parse::<Mode>()?);
            config.sop_degree_cap = degree_cap.unwrap_or(limits.sop_degree_cap);
            config.limits = limits;
            if let Some(m) = max_generator {
                config.max_generator = *m;
            }
            let report = scan(&config)?;
            emit(cli.format, &to_json(&report)?, &report.render_text());
            return Ok(if report.has_counterexample() { EXIT_MISMATCH } else { 0 });
        }
    };
    let spec = read_spec(file)?;
    let sop = sop
        .map(|text| parse_vector_list(text).map_err(|m| Failure::Core(Error::Invalid(format!("--sop: {m}")))))
        .transpose()?;
    let options = Options { limits, sop, search };
    let analysis = lookup(name).ok_or_else(|| Failure::Core(Error::Internal(format!("no analysis named {name}"))))?;
    let out = analysis.run(&spec, &options)?;
    emit(cli.format, &out.json, &out.text);
    Ok(match out.status {
        Status::Ok => 0,
        Status::Uncertified => EXIT_BOUND,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            match cli.format {
                Format::Json => emit(Format::Json, &failure.object(), ""),
                Format::Text => eprintln!("error: {}", failure.message()),
            }
            ExitCode::from(failure.exit())
        }
    }
}
