//! Command-line front end for `unimod`. [`run`] does everything except
//! printing and exiting, so tests can drive it in-process.

pub mod commands;
pub mod report;

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};

use commands::{CommandError, LambdaQuery, Outcome};
use report::{CommandResult, ErrorResult, ReportDocument, Status};
use unimod::schema::ParseError;

const EXIT_CODES: &str = "\
Exit codes:
  0  definitive result
  2  unknown (search bound reached without a verdict)
  3  input error: unreadable file, malformed JSON, non-square or non-symmetric matrix, bad usage
  4  internal invariant violated (failed self-check or certificate replay)
  5  a field required by the subcommand is missing from the form file
  6  the form does not meet the subcommand's preconditions (not unimodular, wrong parity, nonzero signature, ...)
  7  basis search exceeded its coefficient bound";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "unimod", version, about = "Exact computations with unimodular integral forms", after_help = EXIT_CODES)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rank, determinant, parity and signature of a Gram matrix.
    Analyze { path: PathBuf },
    /// Change of basis to the reference form D^n or H^n.
    Classify { path: PathBuf },
    /// Arf-type invariant of (form, g). Needs `g`.
    Arf { path: PathBuf },
    /// Search for a Lagrangian inside ker g, with certificate on refutation. Needs `g`.
    Lagrangian {
        path: PathBuf,
        #[arg(long, default_value_t = 8)]
        bound: u32,
    },
    /// Elementarity of the obstruction given by (form, f, g). Needs `f` and `g`.
    Obstruction {
        path: PathBuf,
        #[arg(long, default_value_t = 2)]
        k_max: usize,
        #[arg(long, default_value_t = 8)]
        bound: u32,
    },
    /// λ-invariant arithmetic for connected sums with homotopy 7-spheres.
    #[command(group(ArgGroup::new("query").required(true).args(["table", "sum", "inertia"])))]
    Lambda {
        /// The 28-row table r -> λ(M_0 # Σ_r).
        #[arg(long)]
        table: bool,
        /// λ(M # Σ_r) for given λ(M) and r.
        #[arg(long, num_args = 2, value_names = ["LAMBDA", "R"], allow_negative_numbers = true)]
        sum: Option<Vec<i64>>,
        /// The inertia group {r : M # Σ_r ≅ M}.
        #[arg(long)]
        inertia: bool,
    },
    /// Sweep every g on D^k and H^k, 2k <= max-rank, comparing the invariant with the oracle.
    Audit {
        #[arg(long, default_value_t = 4)]
        max_rank: usize,
        #[arg(long, default_value_t = 8)]
        bound: u32,
        /// Number of additional randomly conjugated instances.
        #[arg(long, default_value_t = 0)]
        random: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
}

/// A finished invocation: the report and how to print it.
#[derive(Debug, Clone)]
pub struct Invocation {
    pub report: ReportDocument,
    pub format: Format,
}

impl Invocation {
    pub fn exit_code(&self) -> i32 {
        self.report.exit_code
    }

    pub fn render(&self) -> String {
        match self.format {
            Format::Json => self.report.to_json() + "\n",
            Format::Text => self.report.to_text(),
        }
    }
}

fn error_result(e: &CommandError) -> ErrorResult {
    let mut out = ErrorResult {
        error: e.name().to_string(),
        message: e.to_string(),
        line: None,
        column: None,
        row: None,
        col: None,
    };
    match e {
        CommandError::Parse(ParseError::Syntax { line, column, .. }) => {
            out.line = Some(*line);
            out.column = Some(*column);
        }
        CommandError::Parse(ParseError::NotSymmetric { row, col })
        | CommandError::Domain(unimod::Error::NotSymmetric { row, col }) => {
            out.row = Some(*row);
            out.col = Some(*col);
        }
        _ => {}
    }
    out
}

fn file_command(path: &Path, body: impl FnOnce(&unimod::schema::FormFile) -> Outcome) -> (Outcome, Option<String>) {
    match commands::load(path) {
        Ok((file, digest)) => (body(&file), Some(digest)),
        Err(e) => (Err(e), None),
    }
}

/// Parses `args` (including the program name) and runs the subcommand.
/// Clap errors, including `--help`, are returned untouched.
pub fn run<I, T>(args: I) -> Result<Invocation, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let cli = Cli::try_parse_from(&args)?;
    let echo: Vec<String> = args.iter().map(|a| a.to_string_lossy().into_owned()).collect();
    let start = Instant::now();

    let (outcome, digest, audit_exit) = match &cli.command {
        Command::Analyze { path } => {
            let (o, d) = file_command(path, commands::analyze);
            (o, d, None)
        }
        Command::Classify { path } => {
            let (o, d) = file_command(path, commands::classify);
            (o, d, None)
        }
        Command::Arf { path } => {
            let (o, d) = file_command(path, commands::arf);
            (o, d, None)
        }
        Command::Lagrangian { path, bound } => {
            let (o, d) = file_command(path, |f| commands::lagrangian(f, *bound));
            (o, d, None)
        }
        Command::Obstruction { path, k_max, bound } => {
            let (o, d) = file_command(path, |f| commands::obstruction(f, *k_max, *bound));
            (o, d, None)
        }
        Command::Lambda { table, sum, inertia: _ } => {
            let query = if *table {
                LambdaQuery::Table
            } else if let Some(s) = sum {
                LambdaQuery::Sum { lambda: s[0], r: s[1] }
            } else {
                LambdaQuery::Inertia
            };
            (commands::lambda(&query), None, None)
        }
        Command::Audit {
            max_rank,
            bound,
            random,
            seed,
        } => match commands::audit(*max_rank, *bound, *random, *seed) {
            Ok(report) => {
                let code = commands::audit_exit(&report);
                (Ok((CommandResult::Audit(report), code == 0)), None, Some(code))
            }
            Err(e) => (Err(e.into()), None, None),
        },
    };

    let (result, status, exit_code) = match outcome {
        Ok((result, definitive)) => {
            let code = audit_exit.unwrap_or(if definitive {
                commands::EXIT_DEFINITIVE
            } else {
                commands::EXIT_UNKNOWN
            });
            let status = match code {
                commands::EXIT_DEFINITIVE => Status::Definitive,
                commands::EXIT_UNKNOWN => Status::Unknown,
                _ => Status::Error,
            };
            (result, status, code)
        }
        Err(e) => (CommandResult::Error(error_result(&e)), Status::Error, e.exit_code()),
    };

    Ok(Invocation {
        report: ReportDocument {
            tool: "unimod".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: echo,
            input_digest: digest,
            status,
            exit_code,
            elapsed_ms: start.elapsed().as_millis() as u64,
            result,
        },
        format: cli.format,
    })
}
