use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

/// Placement delivery arrays: construct, validate, simulate, tabulate.
#[derive(Parser)]
#[command(name = "pdakit", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a PDA from a geometry or design family.
    Construct(ConstructArgs),
    /// Check a PDA file against C1–C3.
    Validate {
        path: PathBuf,
    },
    /// Run placement, delivery and decoding over a demand set.
    Simulate(SimulateArgs),
    /// Print closed-form parameter rows for a family sweep.
    Tabulate(TabulateArgs),
    /// Direct product of two PDA files.
    Product {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Inspect and certify block designs.
    Designs {
        #[command(subcommand)]
        action: DesignAction,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyName {
    Pg,
    Config,
    TdesignA,
    TdesignB,
    TdesignLambda,
}

#[derive(Args)]
struct ConstructArgs {
    family: FamilyName,
    #[arg(long)]
    q: Option<u32>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    t: Option<usize>,
    /// Catalog name, complete:v:k, sts:v, td:k:n, or a design JSON path.
    #[arg(long)]
    design: Option<String>,
    #[arg(long)]
    t0: Option<usize>,
    #[arg(long)]
    t1: Option<usize>,
    #[arg(long)]
    t2: Option<usize>,
    /// Parameter set 1, 2 or 3.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=3))]
    set: u8,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Auto,
    Exhaustive,
    Sampled,
    Adversarial,
}

#[derive(Args)]
struct SimulateArgs {
    path: PathBuf,
    /// Number of files N; defaults to min(K, 4).
    #[arg(long)]
    files: Option<usize>,
    #[arg(long, value_enum, default_value_t = Mode::Auto)]
    mode: Mode,
    #[arg(long, default_value_t = 200)]
    samples: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 16)]
    packet_size: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
}

#[derive(Args)]
struct TabulateArgs {
    family: FamilyName,
    #[arg(long)]
    q: Option<u32>,
    /// Ambient dimensions, `2..4` or a single value.
    #[arg(long)]
    k: Option<String>,
    #[arg(long)]
    design: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Subcommand)]
enum DesignAction {
    /// Catalog names and descriptions.
    List,
    /// Print a design as JSON.
    Show { spec: String },
    /// Certify a design as a configuration or against its t-design tag.
    Certify {
        spec: String,
        #[arg(long = "as", value_enum, default_value_t = CertifyAs::Auto)]
        kind: CertifyAs,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CertifyAs {
    Auto,
    Configuration,
    TDesign,
}

/// A failed command: exit code and message for stderr.
pub struct Failure {
    pub code: u8,
    pub message: String,
}

pub const EXIT_VALIDATION: u8 = 2;
pub const EXIT_HYPOTHESIS: u8 = 3;
pub const EXIT_DECODE: u8 = 4;
pub const EXIT_IO: u8 = 1;

impl Failure {
    pub fn new(code: u8, message: impl Into<String>) -> Self {
        Self { code, message: message.into() }
    }
}

pub fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::new(EXIT_IO, format!("cannot read {}: {e}", path.display())))
}

pub fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::new(EXIT_IO, format!("cannot write {}: {e}", path.display())))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Construct(args) => commands::construct(args),
        Command::Validate { path } => commands::validate(&path),
        Command::Simulate(args) => commands::simulate(args),
        Command::Tabulate(args) => commands::tabulate(args),
        Command::Product { a, b, out, json } => commands::product(&a, &b, out.as_deref(), json),
        Command::Designs { action } => commands::designs(action),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
