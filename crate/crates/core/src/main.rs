use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qfta::compiler;
use qfta::fault_tree::{self, FaultTree};
use qfta::report::{self, AnalyzeOptions, LayoutChoice, Mode};

/// Fault tree analysis through quantum circuit simulation.
#[derive(Parser)]
#[command(name = "qfta", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full pipeline: analytic, brute-force, exact quantum and sampled
    /// failure probabilities plus the top failure scenarios.
    Analyze(AnalyzeArgs),
    /// Compile a fault tree and print the circuit as text.
    Compile(CompileArgs),
    /// Sampled failure-scenario table only.
    Scenarios(ScenariosArgs),
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Fault tree definition file
    file: PathBuf,
    #[arg(long, default_value_t = 1_000_000)]
    shots: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    workers: u32,
    #[arg(long, value_enum, default_value_t = ModeArg::All)]
    mode: ModeArg,
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    #[arg(long, value_enum, default_value_t = LayoutArg::Reduced)]
    layout: LayoutArg,
    /// Maximum number of failure scenarios to report
    #[arg(long = "top-n", default_value_t = 20)]
    top_n: usize,
    /// Write the report here instead of standard output
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct CompileArgs {
    /// Fault tree definition file
    file: PathBuf,
    /// Write the circuit dump here instead of standard output
    #[arg(long)]
    dump: Option<PathBuf>,
}

#[derive(Args)]
struct ScenariosArgs {
    /// Fault tree definition file
    file: PathBuf,
    #[arg(long, default_value_t = 1_000_000)]
    shots: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    workers: u32,
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    #[arg(long, value_enum, default_value_t = LayoutArg::Reduced)]
    layout: LayoutArg,
    #[arg(long = "top-n", default_value_t = 20)]
    top_n: usize,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Sample,
    Exact,
    Analytic,
    Brute,
    All,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Sample => Mode::Sample,
            ModeArg::Exact => Mode::Exact,
            ModeArg::Analytic => Mode::Analytic,
            ModeArg::Brute => Mode::Brute,
            ModeArg::All => Mode::All,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum LayoutArg {
    Reduced,
    Full,
}

impl From<LayoutArg> for LayoutChoice {
    fn from(l: LayoutArg) -> LayoutChoice {
        match l {
            LayoutArg::Reduced => LayoutChoice::Reduced,
            LayoutArg::Full => LayoutChoice::Full,
        }
    }
}

const EXIT_VALIDATION: u8 = 1;
const EXIT_IO: u8 = 2;

fn load_tree(path: &Path) -> Result<FaultTree, u8> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        eprintln!("error: cannot read {}: {e}", path.display());
        EXIT_IO
    })?;
    fault_tree::parse(&text).map_err(|e| {
        eprintln!("error: {}: {e}", path.display());
        EXIT_VALIDATION
    })
}

fn write_output(output: Option<&Path>, content: &str) -> Result<(), u8> {
    match output {
        Some(path) => std::fs::write(path, content).map_err(|e| {
            eprintln!("error: cannot write {}: {e}", path.display());
            EXIT_IO
        }),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn run_analyze(args: &AnalyzeArgs, scenarios_only: bool) -> Result<(), u8> {
    let tree = load_tree(&args.file)?;
    let opts = AnalyzeOptions {
        shots: args.shots,
        seed: args.seed,
        workers: args.workers,
        mode: args.mode.into(),
        layout: args.layout.into(),
        top_n: args.top_n,
    };
    let report = report::analyze(&tree, &opts).map_err(|e| {
        eprintln!("error: {e}");
        EXIT_VALIDATION
    })?;
    let rendered = match args.format {
        FormatArg::Json => report.to_json() + "\n",
        FormatArg::Csv => report.to_csv(),
        FormatArg::Text if scenarios_only => scenario_table(&report),
        FormatArg::Text => report.to_text(&tree),
    };
    write_output(args.output.as_deref(), &rendered)
}

fn scenario_table(report: &qfta::report::AnalysisReport) -> String {
    let mut out = String::new();
    if let Some(layout) = &report.bit_layout {
        out.push_str(&format!("bit layout: {}\n", layout.join(", ")));
    }
    out.push_str(&format!(
        "{:<16} {:>10} {:>12}  failed components\n",
        "bitstring", "count", "frequency"
    ));
    if let Some(scenarios) = &report.scenarios {
        for s in scenarios {
            out.push_str(&format!(
                "{:<16} {:>10} {:>12.6}  {}\n",
                s.bitstring,
                s.count,
                s.frequency,
                s.failed_components.join(", ")
            ));
        }
    }
    out
}

fn run_compile(args: &CompileArgs) -> Result<(), u8> {
    let tree = load_tree(&args.file)?;
    let compiled = compiler::compile(&tree).map_err(|e| {
        eprintln!("error: {e}");
        EXIT_VALIDATION
    })?;
    write_output(args.dump.as_deref(), &compiled.circuit.dump())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Analyze(args) => run_analyze(args, false),
        Command::Compile(args) => run_compile(args),
        Command::Scenarios(args) => {
            let analyze_args = AnalyzeArgs {
                file: args.file.clone(),
                shots: args.shots,
                seed: args.seed,
                workers: args.workers,
                mode: ModeArg::Sample,
                format: args.format,
                layout: args.layout,
                top_n: args.top_n,
                output: args.output.clone(),
            };
            run_analyze(&analyze_args, true)
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(code) => ExitCode::from(code),
    }
}
