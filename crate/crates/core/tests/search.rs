use entangle_core::*;

fn cfg(n: usize, kind: MeasureKind, scope: Scope, seed: u64) -> SearchConfig {
    SearchConfig::new(n, Objective::new(kind, scope)).with_seed(seed)
}

#[test]
fn accepted_values_strictly_increase() {
    for (n, kind) in [(3, MeasureKind::VonNeumann), (4, MeasureKind::Linear)] {
        let r = hill_climb(&cfg(n, kind, Scope::Full, 17)).unwrap();
        let accepted = &r.value_history[..r.value_history.len() - 1];
        assert!(accepted.windows(2).all(|w| w[1].1 > w[0].1));
        let max = r.value_history.iter().map(|p| p.1).fold(f64::MIN, f64::max);
        assert_eq!(max, r.best_value);
        assert!(r.converged);
        assert!(r.iterations_used < SearchConfig::DEFAULT_MAX_ITERATIONS);
    }
}

#[test]
fn multi_start_is_reproducible_and_ordered() {
    let base = cfg(3, MeasureKind::Linear, Scope::Full, 99).with_start(StartState::HaarRandom);
    let a = multi_start(&base, 6).unwrap();
    let b = multi_start(&base, 6).unwrap();
    assert_eq!(a, b);
    for (i, r) in a.iter().enumerate() {
        let single = hill_climb(&base.clone().with_seed(mix_seed(99, i as u64))).unwrap();
        assert_eq!(r.best_value.to_bits(), single.best_value.to_bits());
    }
}

#[test]
fn stored_value_matches_recomputation() {
    for scope in [Scope::Full, Scope::Balanced] {
        let c = cfg(4, MeasureKind::VonNeumann, scope, 2);
        let r = hill_climb(&c).unwrap();
        let engine = MeasureEngine::new(4).unwrap();
        let again = c.objective.evaluate(&engine, &r.best_state).unwrap();
        assert!((again - r.best_value).abs() <= 1e-12);
        let per_iter = c.objective.evaluations_per_call(&engine) as u64;
        assert_eq!(r.reduced_evaluations, per_iter * (r.iterations_used + 1));
    }
}

#[test]
fn hard_iteration_cap() {
    let r = hill_climb(&cfg(5, MeasureKind::VonNeumann, Scope::Full, 1).with_max_iterations(50))
        .unwrap();
    assert_eq!(r.iterations_used, 50);
    assert!(!r.converged);
}

#[test]
fn sigma_schedule_floors_at_minimum() {
    let mut c = cfg(3, MeasureKind::Linear, Scope::Full, 4);
    c.stagnation_window = 5;
    c.sigma_min = 1e-3;
    let r = hill_climb(&c).unwrap();
    assert_eq!(r.final_sigma, 1e-3);
}

#[test]
fn scope_comparison_for_three_qubits() {
    let full = cfg(3, MeasureKind::VonNeumann, Scope::Full, 8);
    let balanced = full.clone().with_scope(Scope::Balanced);
    let cmp = compare_scopes(&full, &balanced).unwrap();
    assert_eq!(
        cmp.evaluations_per_iteration_full,
        cmp.evaluations_per_iteration_balanced
    );
    assert!(cmp.difference().abs() < 1e-3);
}

#[test]
fn summary_serializes_config() {
    let c = cfg(3, MeasureKind::Linear, Scope::Balanced, 3).with_max_iterations(100);
    let r = hill_climb(&c).unwrap();
    let json = serde_json::to_value(r.summary(&c)).unwrap();
    assert_eq!(json["config"]["objective"]["scope"], "balanced");
    assert_eq!(json["config"]["objective"]["kind"], "linear");
    assert_eq!(json["iterations_used"], 100);
}
