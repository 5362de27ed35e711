use std::fs;

use tvws_fcca::conflict::build_interference_matrix;
use tvws_fcca::experiment::{
    emit_results, generate_topology, read_sweep_csv, run_sweep, selection_stats, summarize, Scheme,
    SweepConfig, CHART_FILES, SUMMARY_CSV, SWEEP_CSV,
};
use tvws_fcca::macsim::MacConfig;
use tvws_fcca::model::{validate_topology, SubAlgorithm};

fn quick(enb_counts: Vec<usize>, seeds: u64) -> SweepConfig {
    SweepConfig {
        enb_counts,
        seeds,
        mac: MacConfig {
            sim_time_s: 2.0,
            ..MacConfig::default()
        },
        ..SweepConfig::default()
    }
}

#[test]
fn ten_thousand_dense_topologies_respect_the_degree_cap() {
    let cfg = SweepConfig::default();
    for seed in 0..10_000 {
        let t = generate_topology(seed, 10, &cfg).unwrap();
        let c = build_interference_matrix(&t.enb_positions, cfg.threshold_km);
        assert!(c.max_degree() <= 2, "seed {seed}");
        assert_eq!(t.cpe_positions.iter().map(Vec::len).sum::<usize>(), 50);
        validate_topology(&t, &cfg.plan, cfg.threshold_km).unwrap();
    }
}

#[test]
fn fcca_only_density_three() {
    let cfg = SweepConfig {
        schemes: vec![Scheme::Fcca],
        ..quick(vec![3], 100)
    };
    let out = run_sweep(&cfg).unwrap();
    assert!(out.failures.is_empty());
    assert_eq!(out.records.len(), 100);
    for r in &out.records {
        assert!(matches!(r.chosen_sub_algorithm, SubAlgorithm::Mdca | SubAlgorithm::OdrsCa));
    }
    assert_eq!(selection_stats(&out.records, 3).total(), 100);
}

#[test]
fn record_invariants() {
    let out = run_sweep(&quick(vec![1, 4, 8], 6)).unwrap();
    assert_eq!(out.records.len(), 3 * 6 * 3);
    for r in &out.records {
        let k = r.enb_count as f64;
        assert!(r.jfi >= 1.0 / k - 1e-12 && r.jfi <= 1.0 + 1e-12, "{r:?}");
        assert!(r.mean_spectral_efficiency > 0.0);
        let se_from_tp = r.mean_throughput_mbps * 1e6 / 20e6;
        assert!((se_from_tp - r.mean_spectral_efficiency).abs() < 1e-9);
        match r.scheme {
            Scheme::Fcca => assert_ne!(r.chosen_sub_algorithm, SubAlgorithm::NotApplicable),
            _ => assert_eq!(r.chosen_sub_algorithm, SubAlgorithm::NotApplicable),
        }
    }
    // Ordering is density, seed, scheme.
    let keys: Vec<_> = out.records.iter().map(|r| (r.enb_count, r.seed, r.scheme)).collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn emitted_files_are_reproducible() {
    let cfg = quick(vec![3, 5], 5);
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    emit_results(&run_sweep(&cfg).unwrap().records, a.path()).unwrap();
    emit_results(&run_sweep(&cfg).unwrap().records, b.path()).unwrap();
    for name in [SWEEP_CSV, SUMMARY_CSV].into_iter().chain(CHART_FILES) {
        let x = fs::read(a.path().join(name)).unwrap();
        let y = fs::read(b.path().join(name)).unwrap();
        assert!(!x.is_empty());
        assert_eq!(x, y, "{name}");
    }
}

#[test]
fn summary_matches_csv_contents() {
    let cfg = quick(vec![4], 7);
    let dir = tempfile::tempdir().unwrap();
    let records = run_sweep(&cfg).unwrap().records;
    emit_results(&records, dir.path()).unwrap();
    let back = read_sweep_csv(fs::File::open(dir.path().join(SWEEP_CSV)).unwrap()).unwrap();
    assert_eq!(back, records);
    for row in summarize(&back) {
        let vals: Vec<f64> = back
            .iter()
            .filter(|r| r.scheme == row.scheme)
            .map(|r| r.mean_throughput_mbps)
            .collect();
        let mean = vals.iter().sum::<f64>() / vals.len() as f64;
        assert!((row.mean_throughput_mbps - mean).abs() < 1e-9);
        assert_eq!(row.seeds, 7);
    }
}
