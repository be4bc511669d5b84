//! `qf`: command-line front end for quiver classification, canonical forms,
//! path algebras, doubling and the wild embeddings.
//!
//! Results go to stdout; failures print a JSON error object to stderr and
//! exit with 1 for unreadable input and 2 for domain errors.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qf_algebra::{ComplexFloat, GaussianRational, Involution, Rational, ScalarDomain, ScalarKind};

use crate::commands::{Failure, Report};

#[derive(Parser, Debug)]
#[command(name = "qf", version, about = "Quivers, mixed graphs and their canonical forms")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Scalar domain: rationals, Gaussian rationals or complex floats.
    #[arg(long, value_enum, default_value_t = Domain::Q, global = true)]
    pub domain: Domain,
    /// Involution on scalars; conjugation needs `qi` or `cfloat`.
    #[arg(long, value_enum, global = true)]
    pub involution: Option<InvolutionArg>,
    /// Relative tolerance, only for `--domain cfloat`.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json, global = true)]
    pub output: OutputFormat,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    Q,
    Qi,
    Cfloat,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum InvolutionArg {
    Id,
    Conj,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Pretty,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum CanonProblem {
    Equiv,
    Sim,
    Pencil,
    Contra,
    Congr,
    Starcongr,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmbedKind {
    Pair,
    Quiverrep,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Finite, tame or wild type of a quiver or mixed graph.
    Classify { graph: PathBuf },
    /// The Tits form, its signature and optionally its value at a vector.
    Tits {
        graph: PathBuf,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        eval: Option<Vec<i64>>,
    },
    /// Dimension vectors of indecomposables (finite and tame types).
    Roots {
        graph: PathBuf,
        /// Component bound, required for tame types.
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Number of parameters `1 - q(z)` of representations of dimension `z`.
    Params {
        graph: PathBuf,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        z: Vec<i64>,
    },
    /// Canonical decomposition for one of the six classical matrix problems.
    Canon {
        #[arg(value_enum)]
        problem: CanonProblem,
        matrices: PathBuf,
    },
    /// Canonical decomposition of a representation of a classical shape.
    Decompose { rep: PathBuf },
    /// Path algebras with relations.
    Palg {
        #[command(subcommand)]
        command: PalgCommand,
    },
    /// The doubled quiver of a graph, or the doubled representation.
    Double { input: PathBuf },
    /// Inertia `(plus, minus, zero)` of a symmetric or Hermitian matrix.
    Inertia { matrix: PathBuf },
    /// Indecomposable summands of a single form.
    Formcanon {
        matrix: PathBuf,
        /// Treat the input as a real symmetric form (law of inertia).
        #[arg(long)]
        real: bool,
    },
    /// The wild embeddings into commuting nilpotent pairs and matrix pairs.
    Embed {
        #[arg(value_enum)]
        kind: EmbedKind,
        input: PathBuf,
        /// Four pairwise distinct scalars for `quiverrep`.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        scalars: Option<Vec<String>>,
    },
}

#[derive(Subcommand, Debug)]
pub enum PalgCommand {
    /// Product of two elements, reduced modulo the relations.
    Mul {
        left: String,
        right: String,
        /// Quiver with relations file.
        #[arg(long)]
        quiver: PathBuf,
        /// Length bound for the truncated path space.
        #[arg(long)]
        bound: usize,
    },
    /// Quiver with relations of an algebra given by structure constants or matrices.
    FromAlgebra {
        algebra: PathBuf,
        /// Length bound; defaults to twice the dimension.
        #[arg(long)]
        bound: Option<usize>,
    },
}

/// The validated scalar settings of one invocation.
#[derive(Debug, Clone, Copy)]
pub struct Settings {
    pub involution: Option<Involution>,
    pub tol: f64,
}

fn settings(g: &Global) -> Result<(ScalarKind, Settings), Failure> {
    let kind = match g.domain {
        Domain::Q => ScalarKind::Rational,
        Domain::Qi => ScalarKind::GaussianRational,
        Domain::Cfloat => ScalarKind::ComplexFloat,
    };
    let involution = g.involution.map(|i| match i {
        InvolutionArg::Id => Involution::Identity,
        InvolutionArg::Conj => Involution::Conjugation,
    });
    let mut domain = ScalarDomain::new(kind, involution.unwrap_or_default()).map_err(Failure::domain)?;
    if let Some(tol) = g.tol {
        domain = domain.with_tolerance(tol).map_err(Failure::domain)?;
    }
    let tol = if kind == ScalarKind::ComplexFloat { domain.tolerance() } else { 0.0 };
    Ok((kind, Settings { involution, tol }))
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    let (kind, s) = settings(&cli.global)?;
    match kind {
        ScalarKind::Rational => commands::run::<Rational>(&cli.command, s),
        ScalarKind::GaussianRational => commands::run::<GaussianRational>(&cli.command, s),
        ScalarKind::ComplexFloat => commands::run::<ComplexFloat>(&cli.command, s),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // help and version requests
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => return Failure::usage(e.to_string()).emit(),
    };
    match run(&cli) {
        Ok(report) => {
            match cli.global.output {
                OutputFormat::Json => println!("{}", report.json),
                OutputFormat::Pretty => print!("{}", report.text),
            }
            ExitCode::SUCCESS
        }
        Err(f) => f.emit(),
    }
}
