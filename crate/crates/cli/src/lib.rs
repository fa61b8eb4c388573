//! Command-line front end for `qrank-core`: argument model, dispatch and
//! rendering. The binary in `main.rs` only parses and calls [`run`].

use std::fmt;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use qrank_core::degree::{Finding, VerifyMode};
use qrank_core::ncalgebra::AlgebraDescriptor;
use qrank_core::skewlat::{defining_matrix, SkewMatrix};

mod commands;
mod output;
mod reproduce;

pub use commands::{BlocksResult, CenterResult, CorankResult, DegreeResult, MinorResult, SnfResult, VerifyResult};
pub use output::{Envelope, Section, SCHEMA_VERSION};
pub use reproduce::{Cell, SuiteTable};

#[derive(Parser, Debug, Clone, Serialize)]
#[command(name = "qrank", version, about = "Degrees, centers and block structure of quantized matrix algebras at roots of unity")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Lift the bound on brute-force enumeration.
    #[arg(long, global = true)]
    pub unsafe_guard_enum: bool,
    /// Lift the size bound on symbolic centrality checks.
    #[arg(long, global = true)]
    pub unsafe_guard_symbolic: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AlgebraChoice {
    /// Square `M_q(n)`.
    Mq,
    /// Rectangle `M_q(n, r)`.
    Mqnr,
    /// Hook `A(n, r)`.
    Anr,
    /// First column of height `n` and first row of width `r`.
    Snr,
    /// Defining matrix read from `--input`.
    Custom,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct Target {
    /// Defaults to `custom` with `--input`, `mqnr` with `--r`, else `mq`.
    #[arg(long, value_enum)]
    pub algebra: Option<AlgebraChoice>,
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub r: Option<u32>,
    /// Skew matrix file: the dimension on the first line, then one row per line.
    #[arg(long)]
    pub input: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Za,
    ThetaChain,
    EvenM,
    Quarter,
    Det,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModeChoice {
    Lattice,
    Symbolic,
}

impl From<ModeChoice> for VerifyMode {
    fn from(m: ModeChoice) -> Self {
        match m {
            ModeChoice::Lattice => VerifyMode::Lattice,
            ModeChoice::Symbolic => VerifyMode::Symbolic,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Detdeg,
    Gcd,
    Goodlabel,
    Bl1,
    Blocks,
    BlocksRprime,
    Hook,
    Centrality,
    Oracle,
    Generation,
    All,
}

#[derive(Subcommand, Debug, Clone, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    /// Degree at a primitive m-th root of unity, with the closed form when one applies.
    Degree {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        m: u64,
        /// Cross-check h by enumerating every vector mod m.
        #[arg(long)]
        enumerate: bool,
    },
    /// Elementary divisors of the defining matrix, bucketed by size.
    Blocks {
        #[command(flatten)]
        target: Target,
    },
    /// Kernel of the defining matrix mod m and verdicts for the known central candidates.
    Center {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        m: u64,
    },
    /// Rank of the rational kernel of the defining matrix.
    Corank {
        #[command(flatten)]
        target: Target,
    },
    /// Congruence normal form U J U^T of the defining matrix.
    Snf {
        #[command(flatten)]
        target: Target,
    },
    /// Expand one quantum minor.
    Minor {
        #[command(flatten)]
        target: Target,
        #[arg(long, value_delimiter = ',', required = true)]
        rows: Vec<u32>,
        #[arg(long, value_delimiter = ',', required = true)]
        cols: Vec<u32>,
    },
    /// Verify every candidate of one family.
    Verify {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        m: u64,
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long, value_enum, default_value_t = ModeChoice::Lattice)]
        mode: ModeChoice,
    },
    /// Regenerate the proposition tables with a verdict per cell.
    Reproduce {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long)]
        max_n: Option<u32>,
        /// Restrict suites indexed by r to this value.
        #[arg(long)]
        r: Option<u32>,
        #[arg(long, value_delimiter = ',')]
        moduli: Option<Vec<u64>>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Degree { .. } => "degree",
            Command::Blocks { .. } => "blocks",
            Command::Center { .. } => "center",
            Command::Corank { .. } => "corank",
            Command::Snf { .. } => "snf",
            Command::Minor { .. } => "minor",
            Command::Verify { .. } => "verify",
            Command::Reproduce { .. } => "reproduce",
        }
    }
}

/// Exit statuses.
pub mod exit {
    pub const OK: u8 = 0;
    pub const MISMATCH: u8 = 1;
    pub const USAGE: u8 = 2;
    pub const GUARD: u8 = 3;
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Guard(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => exit::USAGE,
            CliError::Guard(_) => exit::GUARD,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(s) => write!(f, "usage error: {s}"),
            CliError::Guard(s) => write!(f, "{s} (pass the matching --unsafe-guard-* flag to override)"),
            CliError::Io(s) => write!(f, "i/o error: {s}"),
        }
    }
}

impl From<qrank_core::Error> for CliError {
    fn from(e: qrank_core::Error) -> Self {
        match e {
            qrank_core::Error::GuardExceeded { .. } => CliError::Guard(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

/// What a subcommand acts on.
pub(crate) enum Resolved {
    Algebra(Arc<AlgebraDescriptor>),
    Matrix(SkewMatrix),
}

impl Resolved {
    pub(crate) fn matrix(&self) -> SkewMatrix {
        match self {
            Resolved::Algebra(a) => defining_matrix(a),
            Resolved::Matrix(j) => j.clone(),
        }
    }

    pub(crate) fn name(&self) -> String {
        match self {
            Resolved::Algebra(a) => a.name(),
            Resolved::Matrix(j) => format!("custom({}x{})", j.dim(), j.dim()),
        }
    }

    pub(crate) fn algebra(&self) -> Result<&Arc<AlgebraDescriptor>, CliError> {
        match self {
            Resolved::Algebra(a) => Ok(a),
            Resolved::Matrix(_) => Err(CliError::Usage("this command needs an algebra, not a matrix file".into())),
        }
    }
}

impl Target {
    pub(crate) fn resolve(&self) -> Result<Resolved, CliError> {
        let kind = self.algebra.unwrap_or(if self.input.is_some() {
            AlgebraChoice::Custom
        } else if self.r.is_some() {
            AlgebraChoice::Mqnr
        } else {
            AlgebraChoice::Mq
        });
        let needs_r = matches!(kind, AlgebraChoice::Mqnr | AlgebraChoice::Anr | AlgebraChoice::Snr);
        if kind == AlgebraChoice::Custom {
            let path = self.input.as_ref().ok_or_else(|| CliError::Usage("--algebra custom needs --input".into()))?;
            let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            return Ok(Resolved::Matrix(SkewMatrix::parse(&text)?));
        }
        if self.input.is_some() {
            return Err(CliError::Usage("--input is only used with --algebra custom".into()));
        }
        let n = self.n.ok_or_else(|| CliError::Usage("--n is required".into()))?;
        if needs_r != self.r.is_some() {
            return Err(CliError::Usage(if needs_r {
                "--r is required for mqnr, anr and snr".into()
            } else {
                "--r only applies to mqnr, anr and snr".into()
            }));
        }
        let alg = match (kind, self.r) {
            (AlgebraChoice::Mq, _) => AlgebraDescriptor::square(n)?,
            (AlgebraChoice::Mqnr, Some(r)) => AlgebraDescriptor::rectangle(n, r)?,
            (AlgebraChoice::Anr, Some(r)) => AlgebraDescriptor::hook(n, r)?,
            (AlgebraChoice::Snr, Some(r)) => AlgebraDescriptor::cross(n, r)?,
            _ => unreachable!("r presence checked above"),
        };
        Ok(Resolved::Algebra(alg.into_arc()))
    }
}

/// Everything a subcommand produces before rendering.
pub struct Report {
    pub result: serde_json::Value,
    pub findings: Vec<Finding>,
    pub sections: Vec<Section>,
}

/// Runs the parsed command and returns the envelope; findings signal a
/// mathematical mismatch.
pub fn execute(cli: &Cli) -> Result<Envelope, CliError> {
    let report = commands::dispatch(cli)?;
    Ok(Envelope::new(cli, report))
}

/// Executes, prints in the requested format, and maps the outcome to an
/// exit status.
pub fn run(cli: &Cli) -> u8 {
    match execute(cli) {
        Ok(env) => {
            print!("{}", env.render(cli.format));
            env.exit_status()
        }
        Err(e) => {
            eprintln!("qrank: {e}");
            e.exit_code()
        }
    }
}
