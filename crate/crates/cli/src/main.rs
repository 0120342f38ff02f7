use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use dirac_cli::{corpus, AnalysisReport, CORPUS};
use dirac_core::analysis::{analyze, Options, Stage, WeakEquality};
use dirac_core::error::Error;
use dirac_core::groebner::Budget;
use dirac_core::model::{parse_model, DegenerateModel};
use dirac_core::poly::BlockKind;

const EXIT_INCONSISTENT: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_RESOURCE: u8 = 3;
const EXIT_OTHER: u8 = 4;

#[derive(Parser)]
#[command(name = "dirac", version, about = "Dirac constraint analysis of polynomial degenerate Lagrangians")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a model file or a bundled model by name.
    Analyze(AnalyzeArgs),
    /// List the bundled models.
    List,
}

#[derive(Clone, Copy, ValueEnum)]
enum StageArg {
    Primary,
    Complete,
    Separate,
    Generator,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum WeakArg {
    Ideal,
    Radical,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    Degrevlex,
    Lex,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(clap::Args)]
struct AnalyzeArgs {
    model: String,
    #[arg(long, value_enum, default_value = "all")]
    stage: StageArg,
    #[arg(long = "weak-equality", value_enum, default_value = "ideal")]
    weak_equality: WeakArg,
    /// Inner order on momenta and coordinates.
    #[arg(long, value_enum, default_value = "degrevlex")]
    order: OrderArg,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long = "max-iterations", default_value_t = 32)]
    max_iterations: usize,
    /// Maximum number of terms held by a Groebner basis computation.
    #[arg(long = "term-budget")]
    term_budget: Option<usize>,
    /// Include per-stage timings in the report.
    #[arg(long)]
    timings: bool,
}

fn load(source: &str, inner: BlockKind) -> Result<DegenerateModel, Error> {
    let path = Path::new(source);
    if path.exists() {
        return parse_model(&std::fs::read_to_string(path)?, inner);
    }
    match corpus::find(source) {
        Some(d) => d.load(inner),
        None => Err(Error::Invalid(format!("no model file or bundled model named `{source}`"))),
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Inconsistent(_) => EXIT_INCONSISTENT,
        Error::ResourceLimit(_) => EXIT_RESOURCE,
        _ => EXIT_OTHER,
    }
}

fn run_analyze(args: &AnalyzeArgs) -> u8 {
    let inner = match args.order {
        OrderArg::Degrevlex => BlockKind::DegRevLex,
        OrderArg::Lex => BlockKind::Lex,
    };
    let model = match load(&args.model, inner) {
        Ok(m) => m,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT;
        }
    };
    let mut budget = Budget::default();
    if let Some(t) = args.term_budget {
        budget.max_terms = t;
    }
    let options = Options {
        weak: match args.weak_equality {
            WeakArg::Ideal => WeakEquality::Ideal,
            WeakArg::Radical => WeakEquality::Radical,
        },
        max_iterations: args.max_iterations,
        budget,
    };
    let stage = match args.stage {
        StageArg::Primary => Stage::Primary,
        StageArg::Complete => Stage::Complete,
        StageArg::Separate => Stage::Separate,
        StageArg::Generator | StageArg::All => Stage::Generator,
    };
    let analysis = match analyze(&model, &options, stage) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code(&e);
        }
    };
    let report = match AnalysisReport::new(&analysis, args.timings) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code(&e);
        }
    };
    let text = match args.format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json(),
    };
    match &args.output {
        Some(p) => {
            if let Err(e) = std::fs::write(p, &text) {
                eprintln!("error: cannot write {}: {e}", p.display());
                return EXIT_OTHER;
            }
        }
        None => print!("{text}"),
    }
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    if analysis.is_inconsistent() {
        eprintln!("inconsistent model:");
        for t in &report.trace {
            eprintln!("  {t}");
        }
        return EXIT_INCONSISTENT;
    }
    0
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match &cli.command {
        Command::Analyze(args) => run_analyze(args),
        Command::List => {
            for d in CORPUS {
                println!("{:<18} {}", d.name, d.summary());
            }
            0
        }
    };
    ExitCode::from(code)
}
