//! `ade`: batch front end over ade-core.

mod commands;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use ade_core::modular::DEFAULT_TOL;
use ade_core::{AdeError, DynkinDiagram};
use clap::{Parser, ValueEnum};
use serde::Serialize;

use crate::commands::Report;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Fusion,
    Essential,
    Paths,
    Ocneanu,
    Toric,
    ModularCheck,
    VerifyPaper,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Fusion => "fusion",
            Command::Essential => "essential",
            Command::Paths => "paths",
            Command::Ocneanu => "ocneanu",
            Command::Toric => "toric",
            Command::ModularCheck => "modular-check",
            Command::VerifyPaper => "verify-paper",
        }
    }

    fn draws_graph(self) -> bool {
        self == Command::Ocneanu
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Table,
}

/// Fusion algebras, essential paths, quantum symmetries and toric matrices
/// of ADE Dynkin diagrams.
#[derive(Debug, Parser)]
#[command(name = "ade", version)]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,
    /// Diagram name such as E6, A11 or D4.
    pub graph: String,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// A vertex label (fusion, essential) or a pair "a x b" such as 0x0 (ocneanu, toric).
    #[arg(long)]
    pub element: Option<String>,
    /// Starting vertex label for `paths`.
    #[arg(long)]
    pub origin: Option<u32>,
    /// Largest path length for `paths`.
    #[arg(long)]
    pub length: Option<usize>,
    /// Numerical tolerance for floating-point checks.
    #[arg(long, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    /// Write the output to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Domain(AdeError),
    Io(String),
}

impl From<AdeError> for Failure {
    fn from(e: AdeError) -> Self {
        match e {
            AdeError::ParseDiagram(_) | AdeError::UnsupportedDiagram(_) => Failure::Usage(e.to_string()),
            e => Failure::Domain(e),
        }
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Domain(_) | Failure::Io(_) => 1,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            Failure::Usage(_) => "usage",
            Failure::Domain(AdeError::NoPositiveHypergroup { .. }) => "no-positive-hypergroup",
            Failure::Domain(AdeError::AmbichiralUndefined(_)) => "ambichiral-undefined",
            Failure::Domain(AdeError::LengthCap { .. }) => "length-cap",
            Failure::Domain(AdeError::InvalidVertex { .. }) => "invalid-vertex",
            Failure::Domain(_) => "domain",
            Failure::Io(_) => "io",
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) | Failure::Io(m) => m.clone(),
            Failure::Domain(e) => e.to_string(),
        }
    }
}

#[derive(Serialize)]
struct Envelope<'a> {
    tool_version: &'static str,
    command: &'static str,
    graph: &'a str,
    payload: serde_json::Value,
}

#[derive(Serialize)]
struct Diagnostic<'a> {
    tool_version: &'static str,
    command: &'static str,
    graph: &'a str,
    error: &'static str,
    message: String,
}

fn execute(cli: &Cli) -> Result<Report, Failure> {
    if cli.format == Format::Dot && !cli.command.draws_graph() {
        return Err(Failure::Usage(format!(
            "--format dot is only available for ocneanu, not {}",
            cli.command.name()
        )));
    }
    if !(cli.tol > 0.0 && cli.tol.is_finite()) {
        return Err(Failure::Usage(format!("--tol must be a positive number, got {}", cli.tol)));
    }
    let d: DynkinDiagram = cli.graph.parse()?;
    match cli.command {
        Command::Fusion => commands::fusion(&d, cli),
        Command::Essential => commands::essential(&d, cli),
        Command::Paths => commands::paths(&d, cli),
        Command::Ocneanu => commands::ocneanu(&d, cli),
        Command::Toric => commands::toric(&d, cli),
        Command::ModularCheck => commands::modular_check(&d, cli),
        Command::VerifyPaper => commands::verify_paper(&d),
    }
}

fn render(cli: &Cli, report: &Report) -> String {
    match cli.format {
        Format::Table => report.table.clone(),
        Format::Dot => report.dot.clone().unwrap_or_default(),
        Format::Json => {
            let env = Envelope {
                tool_version: env!("CARGO_PKG_VERSION"),
                command: cli.command.name(),
                graph: &cli.graph,
                payload: report.payload.clone(),
            };
            let mut s = serde_json::to_string_pretty(&env).expect("serializable payload");
            s.push('\n');
            s
        }
    }
}

fn emit(cli: &Cli, text: &str) -> Result<(), Failure> {
    match &cli.out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = execute(&cli).and_then(|report| {
        emit(&cli, &render(&cli, &report))?;
        Ok(report.success)
    });
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            if cli.format == Format::Json {
                let diag = Diagnostic {
                    tool_version: env!("CARGO_PKG_VERSION"),
                    command: cli.command.name(),
                    graph: &cli.graph,
                    error: f.kind(),
                    message: f.message(),
                };
                eprintln!("{}", serde_json::to_string(&diag).expect("serializable diagnostic"));
            } else {
                eprintln!("error[{}]: {}", f.kind(), f.message());
            }
            ExitCode::from(f.code())
        }
    }
}
