use std::path::Path;
use std::process::{Command, Output};

fn entangle(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_entangle"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Parses `label  value` lines of the plain measure output.
fn measured(text: &str, label: &str) -> f64 {
    text.lines()
        .find_map(|l| {
            let mut parts = l.split_whitespace();
            (parts.next() == Some(label)).then(|| parts.next().unwrap().parse().unwrap())
        })
        .unwrap_or_else(|| panic!("no {label} in {text}"))
}

#[test]
fn measure_reference_states() {
    let o = entangle(&["measure", "--state", "hs4", "--kind", "both"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!((measured(&text, "E_L") - 0.9445).abs() <= 5e-4);
    assert!((measured(&text, "E_vN") - 0.9481).abs() <= 5e-4);

    let text = stdout(&entangle(&["measure", "--state", "ghz3", "--kind", "vn"]));
    assert_eq!(measured(&text, "E_vN"), 1.0);
    assert!(!text.contains("E_L"));

    let text = stdout(&entangle(&["measure", "--state", "basis:0000"]));
    assert_eq!(measured(&text, "E_L"), 0.0);
    assert_eq!(measured(&text, "E_vN"), 0.0);
}

#[test]
fn measure_json_has_full_precision() {
    let o = entangle(&["measure", "--state", "hs4", "--kind", "linear", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let total = v[0]["total"].as_f64().unwrap();
    assert!((total - 17.0 / 18.0).abs() < 1e-12);
    assert_eq!(v[0]["kind"], "linear");
    assert_eq!(v[0]["per_m"].as_array().unwrap().len(), 2);
}

#[test]
fn bad_state_files_exit_with_data_error() {
    let dir = tempfile::tempdir().unwrap();
    let malformed = dir.path().join("bad.json");
    std::fs::write(&malformed, "{ not json").unwrap();
    let o = entangle(&["measure", "--state", malformed.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());

    let unnormalized = dir.path().join("norm.json");
    std::fs::write(&unnormalized, r#"{"n": 2, "amplitudes": [[1,0],[1,0],[0,0],[0,0]]}"#).unwrap();
    let o = entangle(&["measure", "--state", unnormalized.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("norm"));
}

#[test]
fn usage_errors_exit_with_one() {
    assert_eq!(entangle(&["bogus"]).status.code(), Some(1));
    let o = entangle(&["neighborhood", "--anchor", "hs4", "--samples", "10", "--bins", "20"]);
    assert_eq!(o.status.code(), Some(1));
    let o = entangle(&["neighborhood", "--anchor", "hs4", "--lo", "0.99", "--hi", "0.95"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(entangle(&["search", "-n", "1"]).status.code(), Some(1));
    assert_eq!(entangle(&["search", "-n", "3", "--sigma-decay", "2"]).status.code(), Some(1));
    assert_eq!(entangle(&["distribution", "--runs", "1"]).status.code(), Some(1));
    assert_eq!(entangle(&["--help"]).status.code(), Some(0));
}

fn summary(path: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn search_outputs_are_deterministic_and_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let out = dir.path().join(name);
        let o = entangle(&[
            "search", "-n", "4", "--kind", "vn", "--scope", "full", "--seed", "1", "-o",
            out.to_str().unwrap(),
        ]);
        assert!(o.status.success());
        out
    };
    let a = run("a.json");
    let b = run("b.json");
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let (sa, sb) = (summary(&dir.path().join("a.summary.json")), summary(&dir.path().join("b.summary.json")));
    assert_eq!(sa, sb);

    let best = sa["best_value"].as_f64().unwrap();
    assert!((best - 0.9481).abs() <= 1e-3);
    let o = entangle(&["measure", "--state", a.to_str().unwrap(), "--kind", "vn", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!((v[0]["total"].as_f64().unwrap() - best).abs() <= 1e-12);
}

#[test]
fn balanced_search_remeasured_with_full_measure() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("bal.json");
    let o = entangle(&[
        "search", "-n", "4", "--kind", "vn", "--scope", "balanced", "--seed", "1", "-o",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let text = stdout(&entangle(&["measure", "--state", out.to_str().unwrap(), "--kind", "vn"]));
    assert!((measured(&text, "E_vN") - 0.9481).abs() <= 1e-3);
}

#[test]
fn five_qubit_search_reaches_one() {
    let o = entangle(&["search", "-n", "5", "--kind", "vn", "--scope", "full", "--seed", "1", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["best_value"].as_f64().unwrap() >= 0.9999);
}

#[test]
fn neighborhood_csv_format() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("curve.csv");
    let o = entangle(&[
        "neighborhood", "--anchor", "hs4", "--lo", "0.95", "--hi", "1.0", "--samples", "2000",
        "--bins", "10", "--seed", "3", "-o", out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "overlap_bin_center,count,mean_EL,std_EL,mean_EvN,std_EvN");
    assert_eq!(lines.len(), 11);
    let total: usize = lines[1..].iter().map(|l| l.split(',').nth(1).unwrap().parse::<usize>().unwrap()).sum();
    assert_eq!(total, 2000);
    let top: Vec<f64> = lines[10].split(',').map(|f| f.parse().unwrap()).collect();
    assert!((top[0] - 0.9975).abs() < 1e-12);
    assert!((top[4] - 0.9481).abs() < 5e-3);
    assert!(text.ends_with('\n'));
}

#[test]
fn neighborhood_is_independent_of_thread_count() {
    let args = ["neighborhood", "--anchor", "bssb4", "--samples", "500", "--bins", "5", "--seed", "9"];
    let one = Command::new(env!("CARGO_BIN_EXE_entangle"))
        .args(["--threads", "1"])
        .args(args)
        .output()
        .unwrap();
    let many = Command::new(env!("CARGO_BIN_EXE_entangle"))
        .env("ENTANGLE_THREADS", "4")
        .args(args)
        .output()
        .unwrap();
    assert!(one.status.success() && many.status.success());
    assert_eq!(one.stdout, many.stdout);
}

#[test]
fn three_qubit_distribution_is_a_single_bin() {
    let run = || entangle(&["distribution", "-n", "3", "--runs", "50", "--seed", "2"]);
    let o = run();
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "bin_center,density");
    let populated: Vec<f64> = lines[1..]
        .iter()
        .filter(|l| l.split(',').nth(1).unwrap().parse::<f64>().unwrap() > 0.0)
        .map(|l| l.split(',').next().unwrap().parse().unwrap())
        .collect();
    assert_eq!(populated.len(), 1);
    assert!((populated[0] - 1.0).abs() < 1e-4);
    assert_eq!(run().stdout, o.stdout);
}

#[test]
fn table_with_empty_seed_list_uses_defaults() {
    let o = entangle(&["table", "--from", "3", "--to", "4", "--seeds"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert!(text.starts_with("Number of qubits"));
    let row = |label: &str| -> Vec<f64> {
        text.lines()
            .find(|l| l.split("  ").next().unwrap().trim() == label)
            .unwrap()
            .split_whitespace()
            .filter_map(|t| t.parse().ok())
            .collect()
    };
    let (found, reference) = (row("E_vN"), row("E_vN (reference)"));
    assert_eq!(found.len(), 2);
    for (f, r) in found.iter().zip(&reference) {
        assert!((f - r).abs() <= 1e-3);
    }
    let (found, reference) = (row("E_L"), row("E_L (reference)"));
    for (f, r) in found.iter().zip(&reference) {
        assert!((f - r).abs() <= 1e-3);
    }
}
