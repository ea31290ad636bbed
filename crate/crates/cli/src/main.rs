//! `entangle`: measure, search for, and map the landscape of highly
//! entangled multiqubit states.
//!
//! Exit codes: 0 on success, 1 for usage errors, 2 for data or invariant
//! errors.

mod commands;
mod states;
mod table;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use entangle_core::{MeasureKind, Scope, SearchConfig, StartState};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Data(String),
}

impl From<entangle_core::Error> for CliError {
    fn from(e: entangle_core::Error) -> Self {
        CliError::Data(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Data(format!("i/o error: {e}"))
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "entangle", version, about = "Multiqubit entanglement measures and searches")]
struct Cli {
    /// Worker threads for parallel experiments (defaults to all cores).
    #[arg(long, global = true, env = "ENTANGLE_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate E_L and/or E_vN of a state, with the per-size breakdown.
    Measure(MeasureArgs),
    /// Hill-climb towards a maximally entangled state.
    Search(SearchArgs),
    /// Run full-scope and balanced-scope searches side by side.
    Compare(SearchArgs),
    /// Binned entanglement of random neighbors of an anchor state.
    Neighborhood(NeighborhoodArgs),
    /// Histogram of E_vN over independently found maximizers of E_L.
    Distribution(DistributionArgs),
    /// Best E_L and E_vN found per register size, next to the reference values.
    Table(TableArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    #[value(alias = "l", alias = "el")]
    Linear,
    #[value(alias = "von-neumann", alias = "evn")]
    Vn,
    Both,
}

impl KindArg {
    pub fn kinds(self) -> Vec<MeasureKind> {
        match self {
            KindArg::Linear => vec![MeasureKind::Linear],
            KindArg::Vn => vec![MeasureKind::VonNeumann],
            KindArg::Both => MeasureKind::ALL.to_vec(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SingleKindArg {
    #[value(alias = "l", alias = "el")]
    Linear,
    #[value(alias = "von-neumann", alias = "evn")]
    Vn,
}

impl From<SingleKindArg> for MeasureKind {
    fn from(k: SingleKindArg) -> Self {
        match k {
            SingleKindArg::Linear => MeasureKind::Linear,
            SingleKindArg::Vn => MeasureKind::VonNeumann,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScopeArg {
    Full,
    Balanced,
}

impl From<ScopeArg> for Scope {
    fn from(s: ScopeArg) -> Self {
        match s {
            ScopeArg::Full => Scope::Full,
            ScopeArg::Balanced => Scope::Balanced,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StartArg {
    Separable,
    Haar,
}

impl From<StartArg> for StartState {
    fn from(s: StartArg) -> Self {
        match s {
            StartArg::Separable => StartState::Separable,
            StartArg::Haar => StartState::HaarRandom,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct MeasureArgs {
    /// State file (JSON) or a named state: ghz<N>, hs4, bssb4, basis:<bits>.
    #[arg(long)]
    pub state: String,
    #[arg(long, value_enum, default_value_t = KindArg::Both)]
    pub kind: KindArg,
    #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
    pub format: OutputFormat,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    /// Number of qubits.
    #[arg(short = 'n', long = "qubits")]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = SingleKindArg::Vn)]
    pub kind: SingleKindArg,
    #[arg(long, value_enum, default_value_t = ScopeArg::Full)]
    pub scope: ScopeArg,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = StartArg::Separable)]
    pub start: StartArg,
    #[arg(long, default_value_t = SearchConfig::DEFAULT_SIGMA_INIT)]
    pub sigma_init: f64,
    #[arg(long, default_value_t = SearchConfig::DEFAULT_SIGMA_DECAY)]
    pub sigma_decay: f64,
    #[arg(long, default_value_t = SearchConfig::DEFAULT_SIGMA_MIN)]
    pub sigma_min: f64,
    #[arg(long, default_value_t = SearchConfig::DEFAULT_STAGNATION_WINDOW)]
    pub stagnation_window: u64,
    #[arg(long, default_value_t = SearchConfig::DEFAULT_MAX_ITERATIONS)]
    pub max_iterations: u64,
    #[arg(long, default_value_t = SearchConfig::DEFAULT_CONVERGENCE_EPSILON)]
    pub epsilon: f64,
    /// Write the best state here; the summary goes to `<stem>.summary.json`.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
    pub format: OutputFormat,
}

impl SearchArgs {
    pub fn config(&self) -> CliResult<SearchConfig> {
        if !(2..=entangle_core::qstate::MAX_QUBITS).contains(&self.n) {
            return Err(CliError::Usage(format!(
                "-n must be in 2..={}, got {}",
                entangle_core::qstate::MAX_QUBITS,
                self.n
            )));
        }
        let cfg = SearchConfig {
            n_qubits: self.n,
            objective: entangle_core::Objective::new(self.kind.into(), self.scope.into()),
            sigma_init: self.sigma_init,
            sigma_decay: self.sigma_decay,
            sigma_min: self.sigma_min,
            stagnation_window: self.stagnation_window,
            max_iterations: self.max_iterations,
            convergence_epsilon: self.epsilon,
            seed: self.seed,
            start: self.start.into(),
        };
        cfg.validate().map_err(|e| CliError::Usage(e.to_string()))?;
        Ok(cfg)
    }
}

#[derive(Debug, Args)]
pub struct NeighborhoodArgs {
    /// hs4, bssb4, or a state file.
    #[arg(long)]
    pub anchor: String,
    #[arg(long, default_value_t = 0.95)]
    pub lo: f64,
    #[arg(long, default_value_t = 1.0)]
    pub hi: f64,
    #[arg(long, default_value_t = 100_000)]
    pub samples: usize,
    #[arg(long, default_value_t = 10)]
    pub bins: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// CSV destination; stdout when absent.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    /// Overlap window [0.95, 1] with the desk-scale sample count.
    #[arg(long)]
    pub paper_defaults: bool,
}

#[derive(Debug, Args)]
pub struct DistributionArgs {
    #[arg(short = 'n', long = "qubits", default_value_t = 4)]
    pub n: usize,
    #[arg(long, default_value_t = 200)]
    pub runs: usize,
    #[arg(long, default_value_t = 50)]
    pub bins: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = SearchConfig::DEFAULT_MAX_ITERATIONS)]
    pub max_iterations: u64,
    /// CSV destination; stdout when absent.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    /// 4 qubits, 200 runs, 50 bins.
    #[arg(long)]
    pub paper_defaults: bool,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long, default_value_t = 3)]
    pub from: usize,
    #[arg(long, default_value_t = 7)]
    pub to: usize,
    /// Comma-separated seeds; the best result over seeds is reported.
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    pub seeds: Vec<u64>,
    #[arg(long, value_enum, default_value_t = KindArg::Both)]
    pub kind: KindArg,
    #[arg(long, default_value_t = SearchConfig::DEFAULT_MAX_ITERATIONS)]
    pub max_iterations: u64,
}

fn run(cli: Cli) -> CliResult<()> {
    if let Some(threads) = cli.threads {
        if threads == 0 {
            return Err(CliError::Usage("--threads must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| CliError::Usage(format!("cannot configure thread pool: {e}")))?;
    }
    match cli.command {
        Command::Measure(args) => commands::measure(&args),
        Command::Search(args) => commands::search(&args),
        Command::Compare(args) => commands::compare(&args),
        Command::Neighborhood(args) => commands::neighborhood(args),
        Command::Distribution(args) => commands::distribution(args),
        Command::Table(args) => table::run(&args),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Data(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
