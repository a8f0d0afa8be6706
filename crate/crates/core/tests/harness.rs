use qreduce::harness::{brute_force_pauli, run_sweep, SweepMode, SweepSpec};
use qreduce::{Backend, Complex64, Decision, LogicalQubit};

fn pauli_spec(n: usize, p: f64, trials: usize, seed: u64, decision: Decision) -> SweepSpec {
    SweepSpec { mode: SweepMode::Pauli, ns: vec![n], noise: vec![p], trials, seed, decision, ..Default::default() }
}

#[test]
fn identical_spec_gives_identical_stats() {
    let spec = SweepSpec {
        mode: SweepMode::Unitary,
        ns: vec![2, 3],
        noise: vec![0.05, 0.1],
        trials: 500,
        seed: 11,
        decision: Decision::Sampled,
        ..Default::default()
    };
    assert_eq!(run_sweep(&spec).unwrap(), run_sweep(&spec).unwrap());
    assert_eq!(run_sweep(&spec).unwrap().to_json(), run_sweep(&spec).unwrap().to_json());
}

#[test]
fn monte_carlo_matches_oracle_within_four_sigma() {
    let p = 0.1;
    let oracle = brute_force_pauli(2, p, p, p, &LogicalQubit::plus()).unwrap();
    for decision in [Decision::Expectation, Decision::Sampled] {
        let stats = run_sweep(&pauli_spec(2, p, 100_000, 5, decision)).unwrap();
        let pt = &stats.points[0];
        let q_sigma = (pt.q_ci_hi - pt.q_ci_lo) / (2.0 * 1.96);
        let p_sigma = (pt.p_ci_hi - pt.p_ci_lo) / (2.0 * 1.96);
        assert!((pt.q_mean - oracle.q).abs() <= 4.0 * q_sigma, "{decision:?} Q {} vs {}", pt.q_mean, oracle.q);
        assert!((pt.p_mean - oracle.p).abs() <= 4.0 * p_sigma, "{decision:?} P {} vs {}", pt.p_mean, oracle.p);
    }
}

#[test]
fn wilson_intervals_cover_oracle_values() {
    let p = 0.1;
    let oracle = brute_force_pauli(2, p, p, p, &LogicalQubit::plus()).unwrap();
    let (mut q_hits, mut p_hits) = (0, 0);
    for seed in 0..100 {
        let pt = run_sweep(&pauli_spec(2, p, 2000, seed, Decision::Sampled)).unwrap().points[0].clone();
        q_hits += (pt.q_ci_lo <= oracle.q && oracle.q <= pt.q_ci_hi) as usize;
        p_hits += (pt.p_ci_lo <= oracle.p && oracle.p <= pt.p_ci_hi) as usize;
    }
    assert!(q_hits >= 93, "Q coverage {q_hits}/100");
    assert!(p_hits >= 93, "P coverage {p_hits}/100");
}

#[test]
fn stats_are_ordered_probabilities() {
    let spec = SweepSpec {
        mode: SweepMode::Zeno,
        ns: vec![2],
        noise: vec![0.5],
        stations: vec![1, 3],
        trials: 300,
        backend: Backend::Factored,
        ..Default::default()
    };
    for pt in run_sweep(&spec).unwrap().points {
        for (lo, m, hi) in [(pt.q_ci_lo, pt.q_mean, pt.q_ci_hi), (pt.p_ci_lo, pt.p_mean, pt.p_ci_hi)] {
            assert!(0.0 <= lo && lo <= m && m <= hi && hi <= 1.0, "{pt:?}");
        }
    }
}

#[test]
fn oracle_q_near_leading_order() {
    // Every one of the nine physical qubits is hit with probability 3p.
    let p = 0.02;
    for input in [
        LogicalQubit::plus(),
        LogicalQubit::zero(),
        LogicalQubit::new(Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8)).unwrap(),
    ] {
        let rep = brute_force_pauli(3, p, p, p, &input).unwrap();
        let approx = (1.0 - 3.0 * p).powi(9);
        assert!((rep.q / approx - 1.0).abs() < 0.15, "{} vs {approx}", rep.q);
        let s = rep.summary();
        assert_eq!(s.patterns, 262_144);
        assert_eq!(s.benign + s.logical + s.orthogonal, s.patterns);
    }
}

#[test]
fn oracle_sweep_rows_carry_zero_trials() {
    let spec = SweepSpec { mode: SweepMode::Oracle, ns: vec![2], noise: vec![0.0, 0.1], trials: 1, ..Default::default() };
    let stats = run_sweep(&spec).unwrap();
    assert_eq!(stats.points.len(), 2);
    assert!(stats.points.iter().all(|p| p.trials == 0));
    assert_eq!((stats.points[0].q_mean, stats.points[0].p_mean), (1.0, 0.0));
}
