use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use codespectra::codes::{augment_all_ones, gold_code};
use codespectra::eigen::{green_function, ComplexMatrix};
use codespectra::harness::{quantile, run_experiment, ExperimentConfig};
use codespectra::matrix::{centered_matrix, sample_codewords, SamplingMode};

fn trace_gap(m: &ComplexMatrix, removed: &[usize], z: Complex64) -> f64 {
    let mut reduced = m.clone();
    for &l in removed {
        reduced = reduced.without(l);
    }
    let full = green_function(m, z).unwrap().trace();
    let minor = green_function(&reduced, z).unwrap().trace();
    (minor - full).norm()
}

/// η |Tr G^(T) − Tr G| / |T| over 10³ sampled matrices per p.
#[test]
fn interlacing_bound_does_not_grow_with_p() {
    let code = augment_all_ones(&gold_code(7, 1).unwrap()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0x1E7E_A5ED);
    let mut worst = Vec::new();
    for p in [8usize, 16, 32] {
        let mut max = 0.0f64;
        for trial in 0..1000u64 {
            let cw = sample_codewords(&code, p, SamplingMode::Distinct, 0x1A7E, trial).unwrap();
            let m = centered_matrix(&cw).matrix;
            let eta = [0.1, 0.5, 1.0][trial as usize % 3];
            let z = Complex64::new(rng.gen_range(-2.5..2.5), eta);
            let size = 1 + trial as usize % 3;
            let mut removed: Vec<usize> = Vec::new();
            while removed.len() < size {
                let l = rng.gen_range(0..p);
                if !removed.contains(&l) {
                    removed.push(l);
                }
            }
            max = max.max(eta * trace_gap(&m, &removed, z) / size as f64);
        }
        assert!(
            max <= 4.0,
            "p = {p}: eta |Tr G^(T) - Tr G| / |T| reached {max}"
        );
        worst.push(max);
    }
    eprintln!("interlacing maxima for p = 8, 16, 32: {worst:?}");
    assert!(worst[2] <= worst[0] * 1.5 + 0.1, "grows with p: {worst:?}");
}

#[test]
fn distinct_and_iid_sampling_agree() {
    let mut medians = Vec::new();
    for mode in [SamplingMode::Distinct, SamplingMode::Iid] {
        let mut cfg = ExperimentConfig::gold_grid();
        cfg.triples = vec![(7, 20)];
        cfg.trials = 200;
        cfg.mode = mode;
        let result = run_experiment(&cfg).unwrap();
        medians.push(result.median_discrepancy()[0]);
    }
    let rel = (medians[0] - medians[1]).abs() / medians[0];
    assert!(
        rel < 0.1,
        "distinct {} vs iid {}: {rel}",
        medians[0],
        medians[1]
    );
}

#[test]
fn medians_non_increasing_for_most_seeds() {
    let mut good = 0;
    for seed in 0..10u64 {
        let mut cfg = ExperimentConfig::gold_grid();
        cfg.seed = 0x5EED_0000 + seed;
        let medians = run_experiment(&cfg).unwrap().median_discrepancy();
        if medians.windows(2).all(|w| w[1] <= w[0]) {
            good += 1;
        }
    }
    assert!(
        good >= 9,
        "only {good} of 10 seeds give non-increasing medians"
    );
}

#[test]
fn every_sampled_matrix_has_zero_diagonal_and_is_hermitian() {
    let code = gold_code(5, 1).unwrap();
    for trial in 0..20 {
        let m = centered_matrix(&sample_codewords(&code, 8, SamplingMode::Iid, 3, trial).unwrap())
            .matrix;
        for i in 0..8 {
            assert_eq!(m[(i, i)], Complex64::new(0.0, 0.0));
            for j in 0..8 {
                assert_eq!(m[(i, j)], m[(j, i)].conj());
            }
        }
    }
}

#[test]
fn sup_interval_is_between_ks_and_twice_ks() {
    let mut cfg = ExperimentConfig::gold_grid();
    cfg.trials = 5;
    let result = run_experiment(&cfg).unwrap();
    for t in &result.trials {
        let d = t.report.discrepancy;
        assert!(d.ks <= d.sup_interval + 1e-15);
        assert!(d.sup_interval <= 2.0 * d.ks + 1e-15);
    }
    let all: Vec<f64> = result
        .trials
        .iter()
        .map(|t| t.report.discrepancy.sup_interval)
        .collect();
    assert!(quantile(&all, 0.5) < 1.0);
}
