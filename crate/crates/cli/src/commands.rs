use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use entangle_core::landscape::neighborhood_curve;
use entangle_core::{
    compare_scopes, hill_climb, maximizer_distribution, EntanglementReport, MeasureEngine,
    MeasureKind, Objective, Scope, SearchConfig, StartState,
};

use crate::{
    states, CliError, CliResult, DistributionArgs, MeasureArgs, NeighborhoodArgs, OutputFormat,
    SearchArgs,
};

/// Sample count used in place of the 15,000,000-state ensembles.
pub const DESK_SCALE_SAMPLES: usize = 100_000;
const REFERENCE_SAMPLES: usize = 15_000_000;

fn render_reports(reports: &[EntanglementReport], format: OutputFormat) -> String {
    let mut out = String::new();
    match format {
        OutputFormat::Table => {
            for r in reports {
                let label = r.kind.label();
                for &(m, v) in &r.per_m {
                    out += &format!("{label}^({m})  {v:.4}\n");
                }
                out += &format!("{label}  {:.4}\n", r.total);
            }
        }
        OutputFormat::Csv => {
            out += "measure,m,value\n";
            for r in reports {
                for &(m, v) in &r.per_m {
                    out += &format!("{},{m},{v}\n", r.kind.label());
                }
                out += &format!("{},total,{}\n", r.kind.label(), r.total);
            }
        }
        OutputFormat::Json => {
            out += &serde_json::to_string_pretty(reports).expect("reports serialize");
            out.push('\n');
        }
    }
    out
}

pub fn measure(args: &MeasureArgs) -> CliResult<()> {
    let state = states::resolve(&args.state)?;
    if state.n_qubits() < 2 {
        return Err(CliError::Usage("measures need at least 2 qubits".into()));
    }
    let engine = MeasureEngine::new(state.n_qubits())?;
    let reports = args
        .kind
        .kinds()
        .into_iter()
        .map(|k| engine.report(&state, k))
        .collect::<Result<Vec<_>, _>>()?;
    print!("{}", render_reports(&reports, args.format));
    Ok(())
}

fn summary_path(output: &Path) -> PathBuf {
    let stem = output
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "search".into());
    output.with_file_name(format!("{stem}.summary.json"))
}

fn write_json<T: serde::Serialize>(path: &Path, value: &T) -> CliResult<()> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Data(format!("cannot serialize: {e}")))?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}

pub fn search(args: &SearchArgs) -> CliResult<()> {
    let cfg = args.config()?;
    let result = hill_climb(&cfg)?;
    if let Some(path) = &args.output {
        result.best_state.save(path)?;
        write_json(&summary_path(path), &result.summary(&cfg))?;
    }
    match args.format {
        OutputFormat::Json => {
            println!(
                "{}",
                serde_json::to_string_pretty(&result.summary(&cfg)).expect("summary serializes")
            );
        }
        OutputFormat::Csv => {
            println!("n,kind,scope,seed,best_value,iterations,accepted,converged");
            println!(
                "{},{},{:?},{},{},{},{},{}",
                cfg.n_qubits,
                cfg.objective.kind.label(),
                cfg.objective.scope,
                cfg.seed,
                result.best_value,
                result.iterations_used,
                result.accepted_count,
                result.converged
            );
        }
        OutputFormat::Table => {
            let scope = match cfg.objective.scope {
                Scope::Full => "",
                Scope::Balanced => " (balanced cuts only)",
            };
            println!("objective   {}{scope}", cfg.objective.kind.label());
            println!("best        {:.10}", result.best_value);
            println!("iterations  {}", result.iterations_used);
            println!("accepted    {}", result.accepted_count);
            println!("converged   {}", result.converged);
        }
    }
    Ok(())
}

pub fn compare(args: &SearchArgs) -> CliResult<()> {
    let full = args.config()?.with_scope(Scope::Full);
    let balanced = full.clone().with_scope(Scope::Balanced);
    let cmp = compare_scopes(&full, &balanced)?;
    let label = full.objective.kind.label();
    println!("scope     {label}(full)      iterations  cuts/iter");
    println!(
        "full      {:.10}  {:>10}  {:>9}",
        cmp.full_value_of_full, cmp.full.iterations_used, cmp.evaluations_per_iteration_full
    );
    println!(
        "balanced  {:.10}  {:>10}  {:>9}",
        cmp.full_value_of_balanced,
        cmp.balanced.iterations_used,
        cmp.evaluations_per_iteration_balanced
    );
    println!("difference {:.3e}", cmp.difference());
    Ok(())
}

fn open_output(path: &Option<PathBuf>) -> CliResult<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

pub fn neighborhood(mut args: NeighborhoodArgs) -> CliResult<()> {
    if args.paper_defaults {
        args.lo = 0.95;
        args.hi = 1.0;
        args.samples = DESK_SCALE_SAMPLES;
        args.bins = 10;
        eprintln!(
            "# overlap window [0.95, 1]; {DESK_SCALE_SAMPLES} samples substituted for {REFERENCE_SAMPLES}"
        );
    }
    if !(0.0 <= args.lo && args.lo < args.hi && args.hi <= 1.0) {
        return Err(CliError::Usage(format!(
            "need 0 ≤ lo < hi ≤ 1, got lo={} hi={}",
            args.lo, args.hi
        )));
    }
    if args.bins == 0 || args.samples < args.bins {
        return Err(CliError::Usage(format!(
            "need samples ≥ bins ≥ 1, got {} samples and {} bins",
            args.samples, args.bins
        )));
    }
    let anchor = states::resolve(&args.anchor)?;
    let curve = neighborhood_curve(&anchor, args.lo, args.hi, args.samples, args.bins, args.seed)?;
    let mut out = open_output(&args.output)?;
    curve.write_csv(&mut out)?;
    out.flush()?;
    Ok(())
}

pub fn distribution(mut args: DistributionArgs) -> CliResult<()> {
    if args.paper_defaults {
        args.n = 4;
        args.runs = 200;
        args.bins = 50;
    }
    if args.runs < 2 {
        return Err(CliError::Usage(format!("--runs must be at least 2, got {}", args.runs)));
    }
    if args.bins == 0 {
        return Err(CliError::Usage("--bins must be positive".into()));
    }
    if !(2..=entangle_core::qstate::MAX_QUBITS).contains(&args.n) {
        return Err(CliError::Usage(format!("-n must be in 2..=12, got {}", args.n)));
    }
    let cfg = SearchConfig::new(args.n, Objective::new(MeasureKind::Linear, Scope::Full))
        .with_seed(args.seed)
        .with_start(StartState::HaarRandom)
        .with_max_iterations(args.max_iterations);
    let dist = maximizer_distribution(args.runs, args.bins, &cfg)?;
    eprintln!(
        "# kept {} of {} runs on the E_L plateau {:.8}; mode E_vN {:.4}",
        dist.kept.len(),
        args.runs,
        dist.best_e_linear,
        dist.histogram.mode()
    );
    let mut out = open_output(&args.output)?;
    dist.histogram.write_csv(&mut out)?;
    out.flush()?;
    Ok(())
}
