//! `piekit`: batch command-line front end writing `report/v1` documents.

mod commands;
mod render;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use piekit::classify::PreservationMode;
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "piekit", version, about = "Pie weights, weighted limits in Cat and presented 2-monads")]
pub struct Cli {
    /// search budget shared by every enumeration in the run
    #[arg(long, global = true, default_value_t = 1_000_000)]
    pub budget: u64,
    /// internal-node bound for tree truncations
    #[arg(long, global = true, default_value_t = 3)]
    pub bound: usize,
    /// catalogue level for the semiflexibility refuter
    #[arg(long = "grammar-level", global = true, default_value_t = 1)]
    pub grammar_level: u8,
    /// recorded in every report
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// write the report here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Kind {
    Strict,
    Pseudo,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Mode {
    Equivalence,
    Surjective,
    Injective,
}

impl From<Mode> for PreservationMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Equivalence => PreservationMode::Equivalence,
            Mode::Surjective => PreservationMode::Surjective,
            Mode::Injective => PreservationMode::Injective,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ExportKind {
    Weight,
    Presentation,
    Signature,
    /// the projection `D × I2 → D` for a named weight used as a diagram,
    /// with the sections at copy 0
    Thickening,
}

/// Inputs are file paths, `-` for stdin, or `named:<name>` for a built-in.
#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide whether a weight is pie, with a certificate.
    CheckWeight { weight: String },
    /// Compute the strict or pseudo limit of a diagram.
    Limit {
        #[arg(value_enum)]
        kind: Kind,
        #[arg(long)]
        weight: String,
        #[arg(long)]
        diagram: String,
    },
    /// Compile a pie weight to a product/inserter/equifier expression.
    CompilePie { weight: String },
    /// Evaluate a pie expression on a diagram.
    EvalPie {
        /// a `pieexpr/v1` document
        #[arg(long, conflicts_with = "weight")]
        expr: Option<String>,
        /// compile this weight instead of reading an expression
        #[arg(long)]
        weight: Option<String>,
        #[arg(long)]
        diagram: String,
    },
    /// Free category on a graph, or with --check a freeness decision for a
    /// category.
    FreeCat {
        input: String,
        #[arg(long)]
        check: bool,
    },
    /// Classify a functor.
    ClassifyFunctor { functor: String },
    /// Three-valued semiflexibility verdict.
    RefuteSemiflexible { weight: String },
    /// Check that the limit of a pointwise equivalence is one.
    Preserve {
        #[arg(value_enum)]
        mode: Mode,
        #[arg(long)]
        weight: String,
        #[arg(long)]
        map: String,
    },
    /// Transport pointwise sections to a section of the limit map.
    Transport {
        #[arg(long)]
        weight: String,
        #[arg(long)]
        map: String,
    },
    /// List Ω-trees up to the bound.
    Omega {
        #[arg(long = "max-arity", default_value_t = 2)]
        max_arity: usize,
    },
    /// The truncated free algebra on n variables.
    Zk {
        #[arg(long)]
        signature: String,
        #[arg(long)]
        n: usize,
    },
    /// The truncated free algebra on a carrier.
    FreeAlgebra {
        #[arg(long)]
        signature: String,
        #[arg(long)]
        carrier: String,
    },
    /// Check an algebra against a presentation.
    CheckAlgebra {
        #[arg(long)]
        presentation: String,
        /// an `algebra/v1` document
        #[arg(long, conflicts_with = "builtin")]
        algebra: Option<String>,
        /// terminal, idempotent or idempotent-z3, with identity cells
        #[arg(long)]
        builtin: Option<String>,
        /// replace one component: `generator:object:morphism`
        #[arg(long)]
        perturb: Option<String>,
    },
    /// Enumerate algebra structures on a carrier.
    EnumerateAlgebras {
        #[arg(long)]
        presentation: String,
        #[arg(long)]
        carrier: String,
    },
    /// Underlying signature of the induced Set-monad, with a freeness check.
    SetMonadSignature {
        #[arg(long)]
        presentation: String,
        #[arg(long)]
        n: usize,
    },
    /// Print a built-in document as a bare data file, not a report.
    Export {
        #[arg(value_enum)]
        kind: ExportKind,
        name: String,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::CheckWeight { .. } => "check-weight",
            Command::Limit { .. } => "limit",
            Command::CompilePie { .. } => "compile-pie",
            Command::EvalPie { .. } => "eval-pie",
            Command::FreeCat { .. } => "free-cat",
            Command::ClassifyFunctor { .. } => "classify-functor",
            Command::RefuteSemiflexible { .. } => "refute-semiflexible",
            Command::Preserve { .. } => "preserve",
            Command::Transport { .. } => "transport",
            Command::Omega { .. } => "omega",
            Command::Zk { .. } => "zk",
            Command::FreeAlgebra { .. } => "free-algebra",
            Command::CheckAlgebra { .. } => "check-algebra",
            Command::EnumerateAlgebras { .. } => "enumerate-algebras",
            Command::SetMonadSignature { .. } => "set-monad-signature",
            Command::Export { .. } => "export",
        }
    }
}

/// What a command produced: a result payload and whether the property it
/// checks held.
pub struct Outcome {
    pub result: Value,
    pub holds: bool,
    pub schemas: Vec<&'static str>,
}

/// A failure before a verdict could be reached.
#[derive(Debug)]
pub enum Failure {
    Input(String),
    Library(piekit::Error),
}

impl From<piekit::Error> for Failure {
    fn from(e: piekit::Error) -> Self {
        Failure::Library(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Library(e) if e.is_budget() => 3,
            _ => 2,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            Failure::Library(e) if e.is_budget() => "budget_exceeded",
            Failure::Library(piekit::Error::Schema(_) | piekit::Error::Json(_) | piekit::Error::Parse(_)) => "schema",
            Failure::Input(_) => "input",
            Failure::Library(_) => "validation",
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Input(s) => s.clone(),
            Failure::Library(e) => e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (doc, code) = match &cli.command {
        Command::Export { kind, name } => match commands::export(*kind, name) {
            Ok(doc) => (doc, 0),
            Err(f) => {
                eprintln!("piekit: {}", f.message());
                return ExitCode::from(f.exit_code());
            }
        },
        _ => run(&cli),
    };
    let mut text = serde_json::to_string_pretty(&doc).expect("report serializes");
    text.push('\n');
    let written = match &cli.out {
        Some(path) => std::fs::write(path, text.as_bytes()).map_err(|e| e.to_string()),
        None => std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        eprintln!("piekit: cannot write report: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}

/// Runs one command and builds its report and exit status.
pub fn run(cli: &Cli) -> (Value, u8) {
    let mut budget = piekit::Budget::new(cli.budget);
    let outcome = commands::dispatch(cli, &mut budget);
    let config = json!({
        "budget": cli.budget,
        "budget_used": budget.used(),
        "bound": cli.bound,
        "grammar_level": cli.grammar_level,
        "seed": cli.seed,
        "inputs": commands::inputs(&cli.command),
    });
    let mut report = json!({
        "schema": piekit::schema::REPORT_V1,
        "tool": "piekit",
        "version": env!("CARGO_PKG_VERSION"),
        "command": cli.command.name(),
        "config": config,
    });
    let code = match outcome {
        Ok(o) => {
            report["schemas"] = json!(o.schemas);
            report["status"] = json!(if o.holds { "ok" } else { "property_failed" });
            report["result"] = o.result;
            if o.holds {
                0
            } else {
                1
            }
        }
        Err(f) => {
            report["schemas"] = json!([]);
            report["status"] = json!("error");
            report["error"] = json!({ "kind": f.kind(), "message": f.message() });
            f.exit_code()
        }
    };
    (report, code)
}
