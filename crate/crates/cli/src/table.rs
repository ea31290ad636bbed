use entangle_core::{hill_climb, MeasureKind, Objective, Scope, SearchConfig};
use rayon::prelude::*;

use crate::{CliError, CliResult, TableArgs};

/// Published best values for 3..=7 qubits: (N, E_L, E_vN).
pub const REFERENCE: [(usize, f64, f64); 5] = [
    (3, 1.0000, 1.0000),
    (4, 0.9445, 0.9481),
    (5, 1.0000, 1.0000),
    (6, 1.0000, 1.0000),
    (7, 0.9961, 0.9948),
];

const DEFAULT_SEEDS: [u64; 1] = [1];

pub fn reference(n: usize, kind: MeasureKind) -> Option<f64> {
    REFERENCE.iter().find(|r| r.0 == n).map(|r| match kind {
        MeasureKind::Linear => r.1,
        MeasureKind::VonNeumann => r.2,
    })
}

pub fn run(args: &TableArgs) -> CliResult<()> {
    if args.from < 2 || args.from > args.to || args.to > entangle_core::qstate::MAX_QUBITS {
        return Err(CliError::Usage(format!(
            "need 2 ≤ from ≤ to ≤ 12, got {}..={}",
            args.from, args.to
        )));
    }
    let seeds: &[u64] = if args.seeds.is_empty() { &DEFAULT_SEEDS } else { &args.seeds };
    let sizes: Vec<usize> = (args.from..=args.to).collect();
    let kinds = args.kind.kinds();

    let jobs: Vec<(usize, MeasureKind, u64)> = sizes
        .iter()
        .flat_map(|&n| kinds.iter().flat_map(move |&k| seeds.iter().map(move |&s| (n, k, s))))
        .collect();
    let values = jobs
        .par_iter()
        .map(|&(n, kind, seed)| {
            let cfg = SearchConfig::new(n, Objective::new(kind, Scope::Full))
                .with_seed(seed)
                .with_max_iterations(args.max_iterations);
            hill_climb(&cfg).map(|r| r.best_value)
        })
        .collect::<Result<Vec<_>, _>>()?;

    let best = |n: usize, kind: MeasureKind| {
        jobs.iter()
            .zip(&values)
            .filter(|((jn, jk, _), _)| *jn == n && *jk == kind)
            .map(|(_, &v)| v)
            .fold(f64::NEG_INFINITY, f64::max)
    };

    let mut header = format!("{:<18}", "Number of qubits");
    for n in &sizes {
        header += &format!("{n:>8}");
    }
    println!("{header}");
    for &kind in &kinds {
        let mut found = format!("{:<18}", kind.label());
        let mut reference_row = format!("{:<18}", format!("{} (reference)", kind.label()));
        for &n in &sizes {
            found += &format!("{:>8.4}", best(n, kind));
            reference_row += &match reference(n, kind) {
                Some(v) => format!("{v:>8.4}"),
                None => format!("{:>8}", "-"),
            };
        }
        println!("{found}");
        println!("{reference_row}");
    }
    Ok(())
}
