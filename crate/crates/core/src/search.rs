//! Greedy stochastic hill climbing over state amplitudes.
//!
//! Each iteration perturbs every amplitude of the current state with complex
//! Gaussian noise, renormalizes, and keeps the proposal only if the
//! objective strictly increases. After `stagnation_window` consecutive
//! rejections the noise scale is multiplied by `sigma_decay`, down to
//! `sigma_min`. The run stops at `max_iterations`, or once the scale sits at
//! `sigma_min` and no accepted step has improved the objective by more than
//! `convergence_epsilon` during the last `4 · stagnation_window` proposals.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measures::{MeasureEngine, MeasureKind};
use crate::qstate::{PureState, MAX_QUBITS};

/// Which bipartitions the objective averages over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scope {
    /// The global measure over all cut sizes.
    Full,
    /// Only the balanced cuts, `E^(⌊N/2⌋)`.
    Balanced,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Objective {
    pub kind: MeasureKind,
    pub scope: Scope,
}

impl Objective {
    pub fn new(kind: MeasureKind, scope: Scope) -> Self {
        Objective { kind, scope }
    }

    pub fn evaluate(&self, engine: &MeasureEngine, s: &PureState) -> Result<f64> {
        match self.scope {
            Scope::Full => engine.total(s, self.kind),
            Scope::Balanced => engine.balanced(s, self.kind),
        }
    }

    /// Reduced density matrices computed per objective evaluation.
    pub fn evaluations_per_call(&self, engine: &MeasureEngine) -> usize {
        match self.scope {
            Scope::Full => engine.total_bipartition_count(),
            Scope::Balanced => engine.bipartition_count(engine.max_subset_size()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StartState {
    /// `|0...0⟩`.
    Separable,
    /// A Haar-random state drawn from the run's own stream.
    HaarRandom,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub n_qubits: usize,
    pub objective: Objective,
    pub sigma_init: f64,
    pub sigma_decay: f64,
    pub sigma_min: f64,
    pub stagnation_window: u64,
    pub max_iterations: u64,
    pub convergence_epsilon: f64,
    pub seed: u64,
    pub start: StartState,
}

impl SearchConfig {
    pub const DEFAULT_SIGMA_INIT: f64 = 0.1;
    pub const DEFAULT_SIGMA_DECAY: f64 = 0.5;
    pub const DEFAULT_SIGMA_MIN: f64 = 1e-6;
    pub const DEFAULT_STAGNATION_WINDOW: u64 = 200;
    pub const DEFAULT_MAX_ITERATIONS: u64 = 2_000_000;
    pub const DEFAULT_CONVERGENCE_EPSILON: f64 = 1e-9;

    /// Default schedule, separable start, seed 0.
    pub fn new(n_qubits: usize, objective: Objective) -> Self {
        SearchConfig {
            n_qubits,
            objective,
            sigma_init: Self::DEFAULT_SIGMA_INIT,
            sigma_decay: Self::DEFAULT_SIGMA_DECAY,
            sigma_min: Self::DEFAULT_SIGMA_MIN,
            stagnation_window: Self::DEFAULT_STAGNATION_WINDOW,
            max_iterations: Self::DEFAULT_MAX_ITERATIONS,
            convergence_epsilon: Self::DEFAULT_CONVERGENCE_EPSILON,
            seed: 0,
            start: StartState::Separable,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_start(mut self, start: StartState) -> Self {
        self.start = start;
        self
    }

    pub fn with_scope(mut self, scope: Scope) -> Self {
        self.objective.scope = scope;
        self
    }

    pub fn with_max_iterations(mut self, max_iterations: u64) -> Self {
        self.max_iterations = max_iterations;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Input(msg));
        if self.n_qubits < 2 || self.n_qubits > MAX_QUBITS {
            return fail(format!("n_qubits must be in 2..={MAX_QUBITS}, got {}", self.n_qubits));
        }
        if !(self.sigma_init > 0.0 && self.sigma_min > 0.0 && self.sigma_min <= self.sigma_init)
            || !self.sigma_init.is_finite()
        {
            return fail(format!(
                "need 0 < sigma_min ≤ sigma_init, got sigma_min={} sigma_init={}",
                self.sigma_min, self.sigma_init
            ));
        }
        if !(self.sigma_decay > 0.0 && self.sigma_decay <= 1.0) {
            return fail(format!("sigma_decay must be in (0, 1], got {}", self.sigma_decay));
        }
        if self.stagnation_window == 0 || self.max_iterations == 0 {
            return fail("stagnation_window and max_iterations must be positive".into());
        }
        if !(self.convergence_epsilon >= 0.0) {
            return fail(format!(
                "convergence_epsilon must be non-negative, got {}",
                self.convergence_epsilon
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult {
    pub best_state: PureState,
    pub best_value: f64,
    pub iterations_used: u64,
    pub accepted_count: u64,
    /// Total reduced density matrices computed, including the start state.
    pub reduced_evaluations: u64,
    pub converged: bool,
    pub final_sigma: f64,
    /// Downsampled `(iteration, best value)` trace; non-decreasing.
    pub value_history: Vec<(u64, f64)>,
}

/// Summary fields of a [`SearchResult`], for the JSON sidecar.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchSummary {
    pub config: SearchConfig,
    pub best_value: f64,
    pub iterations_used: u64,
    pub accepted_count: u64,
    pub reduced_evaluations: u64,
    pub converged: bool,
    pub final_sigma: f64,
    pub value_history: Vec<(u64, f64)>,
}

impl SearchResult {
    pub fn summary(&self, config: &SearchConfig) -> SearchSummary {
        SearchSummary {
            config: config.clone(),
            best_value: self.best_value,
            iterations_used: self.iterations_used,
            accepted_count: self.accepted_count,
            reduced_evaluations: self.reduced_evaluations,
            converged: self.converged,
            final_sigma: self.final_sigma,
            value_history: self.value_history.clone(),
        }
    }
}

const HISTORY_CAP: usize = 1024;

fn push_history(history: &mut Vec<(u64, f64)>, point: (u64, f64)) {
    if history.len() >= HISTORY_CAP {
        // keep the first point and every other one after it
        let mut i = 0;
        history.retain(|_| {
            i += 1;
            i % 2 == 1
        });
    }
    history.push(point);
}

/// Runs one hill climb. Deterministic in `cfg`.
pub fn hill_climb(cfg: &SearchConfig) -> Result<SearchResult> {
    cfg.validate()?;
    let engine = MeasureEngine::new(cfg.n_qubits)?;
    let objective = cfg.objective;
    let per_call = objective.evaluations_per_call(&engine) as u64;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);

    let mut current = match cfg.start {
        StartState::Separable => PureState::zero(cfg.n_qubits)?,
        StartState::HaarRandom => PureState::random_haar(cfg.n_qubits, &mut rng)?,
    };
    let mut value = objective.evaluate(&engine, &current)?;
    let mut evaluations = per_call;
    let mut history = vec![(0, value)];

    let mut sigma = cfg.sigma_init;
    let mut rejections = 0u64;
    let mut accepted = 0u64;
    let mut last_significant = 0u64;
    let mut iterations = 0u64;
    let mut converged = false;
    let quiet_window = cfg.stagnation_window.saturating_mul(4);

    while iterations < cfg.max_iterations {
        iterations += 1;
        let proposal = current.perturb(sigma, &mut rng)?;
        let candidate = objective.evaluate(&engine, &proposal)?;
        evaluations += per_call;
        if candidate > value {
            if candidate - value > cfg.convergence_epsilon {
                last_significant = iterations;
            }
            current = proposal;
            value = candidate;
            accepted += 1;
            rejections = 0;
            push_history(&mut history, (iterations, value));
        } else {
            rejections += 1;
            if rejections >= cfg.stagnation_window {
                sigma = (sigma * cfg.sigma_decay).max(cfg.sigma_min);
                rejections = 0;
            }
        }
        if sigma <= cfg.sigma_min && iterations - last_significant >= quiet_window {
            converged = true;
            break;
        }
    }
    if history.last().map(|&(it, _)| it) != Some(iterations) {
        history.push((iterations, value));
    }

    Ok(SearchResult {
        best_state: current,
        best_value: value,
        iterations_used: iterations,
        accepted_count: accepted,
        reduced_evaluations: evaluations,
        converged,
        final_sigma: sigma,
        value_history: history,
    })
}

/// SplitMix64 finalizer.
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Child seed for run `index` of a multi-start or sampling job:
/// `splitmix64(seed ^ splitmix64(index))`. Index 0 maps back to `seed`, so
/// a single-run multi-start reproduces the plain hill climb.
pub fn mix_seed(seed: u64, index: u64) -> u64 {
    if index == 0 {
        seed
    } else {
        splitmix64(seed ^ splitmix64(index))
    }
}

/// `runs` independent hill climbs with seeds `mix_seed(cfg.seed, i)`,
/// executed in parallel and returned in run order.
pub fn multi_start(cfg: &SearchConfig, runs: usize) -> Result<Vec<SearchResult>> {
    if runs == 0 {
        return Err(Error::input("multi_start needs at least one run"));
    }
    cfg.validate()?;
    (0..runs as u64)
        .into_par_iter()
        .map(|i| hill_climb(&cfg.clone().with_seed(mix_seed(cfg.seed, i))))
        .collect()
}

#[derive(Debug, Clone)]
pub struct ScopeComparison {
    pub full: SearchResult,
    pub balanced: SearchResult,
    /// Full-scope measure of the full-scope search result.
    pub full_value_of_full: f64,
    /// Full-scope measure of the balanced-scope search result.
    pub full_value_of_balanced: f64,
    pub evaluations_per_iteration_full: usize,
    pub evaluations_per_iteration_balanced: usize,
}

impl ScopeComparison {
    /// `full_value_of_full − full_value_of_balanced`.
    pub fn difference(&self) -> f64 {
        self.full_value_of_full - self.full_value_of_balanced
    }
}

/// Runs a full-scope and a balanced-scope search and scores both results
/// with the full-scope measure of the shared kind.
pub fn compare_scopes(
    cfg_full: &SearchConfig,
    cfg_balanced: &SearchConfig,
) -> Result<ScopeComparison> {
    if cfg_full.objective.scope != Scope::Full || cfg_balanced.objective.scope != Scope::Balanced {
        return Err(Error::input("expected one full-scope and one balanced-scope config"));
    }
    if cfg_full.clone().with_scope(Scope::Balanced) != *cfg_balanced {
        return Err(Error::input("configs must be identical except for scope"));
    }
    let (full, balanced) = rayon::join(|| hill_climb(cfg_full), || hill_climb(cfg_balanced));
    let (full, balanced) = (full?, balanced?);
    let engine = MeasureEngine::new(cfg_full.n_qubits)?;
    let kind = cfg_full.objective.kind;
    Ok(ScopeComparison {
        full_value_of_full: engine.total(&full.best_state, kind)?,
        full_value_of_balanced: engine.total(&balanced.best_state, kind)?,
        evaluations_per_iteration_full: cfg_full.objective.evaluations_per_call(&engine),
        evaluations_per_iteration_balanced: cfg_balanced.objective.evaluations_per_call(&engine),
        full,
        balanced,
    })
}
