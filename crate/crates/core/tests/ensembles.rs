use markov_spectra::ensembles::{
    dirichlet_markov_sample, markov_sample, sample_iid_matrix, to_markov, EntryLaw, SeededStream,
};

#[test]
fn same_stream_gives_identical_matrix() {
    let law = EntryLaw::heavy_tail(0.75).unwrap();
    let a = sample_iid_matrix(40, &law, SeededStream::new(9, 4)).unwrap();
    let b = sample_iid_matrix(40, &law, SeededStream::new(9, 4)).unwrap();
    assert_eq!(a.as_slice(), b.as_slice());
    let c = sample_iid_matrix(40, &law, SeededStream::new(9, 5)).unwrap();
    assert_ne!(a.as_slice(), c.as_slice());
}

#[test]
fn bernoulli_entries_average_to_p() {
    let x = sample_iid_matrix(500, &EntryLaw::bernoulli(0.5).unwrap(), SeededStream::new(11, 0)).unwrap();
    let mean = x.as_slice().iter().sum::<f64>() / 250_000.0;
    assert!((mean - 0.5).abs() < 0.01, "{mean}");
}

#[test]
fn row_sums_concentrate_uniformly() {
    let s = markov_sample(500, &EntryLaw::standard_exponential(), SeededStream::new(12, 0)).unwrap();
    let worst = s.row_sums.iter().map(|r| (r / 500.0 - 1.0).abs()).fold(0.0, f64::max);
    assert!(worst <= 0.2, "max |rho_i/n - 1| = {worst}");
}

#[test]
fn sampled_rows_are_stochastic_for_every_law() {
    let laws =
        ["exponential:rate=3", "bernoulli:p=0.1", "uniform", "heavytail:beta=0.75", "shifteduniform:a=0.5,b=1.5"];
    for (k, law) in laws.iter().enumerate() {
        let law: EntryLaw = law.parse().unwrap();
        for n in [1, 2, 17, 300, 2000] {
            let s = markov_sample(n, &law, SeededStream::new(77, k as u64)).unwrap();
            for i in 0..n {
                let row = s.m_matrix.row(i);
                let total: f64 = row.iter().sum();
                assert!((total - 1.0).abs() <= 1e-12, "{law} n={n} row {i}: {total}");
                assert!(row.iter().all(|&v| (0.0..=1.0).contains(&v)));
                if s.fallback_rows.contains(&i) {
                    assert!(row.iter().enumerate().all(|(j, &v)| v == if i == j { 1.0 } else { 0.0 }));
                } else {
                    for (j, &v) in row.iter().enumerate() {
                        let x = s.x[(i, j)];
                        assert!((v * s.row_sums[i] - x).abs() <= 1e-12 * x.max(f64::MIN_POSITIVE));
                    }
                }
            }
        }
    }
}

#[test]
fn two_state_dirichlet_rows_are_uniform() {
    let mut total = 0.0;
    let samples = 50_000u64;
    for r in 0..samples {
        let s = dirichlet_markov_sample(2, SeededStream::new(3, r)).unwrap();
        total += s.m_matrix[(0, 0)] + s.m_matrix[(1, 0)];
    }
    let mean = total / (2 * samples) as f64;
    assert!((mean - 0.5).abs() < 0.01, "{mean}");
}

#[test]
fn dirichlet_coordinates_are_negatively_correlated() {
    let n = 10;
    let (mut s1, mut s2, mut s12, mut count) = (0.0, 0.0, 0.0, 0.0);
    for r in 0..10_000u64 {
        let s = dirichlet_markov_sample(n, SeededStream::new(4, r)).unwrap();
        for i in 0..n {
            let (a, b) = (s.m_matrix[(i, 0)], s.m_matrix[(i, 1)]);
            s1 += a;
            s2 += b;
            s12 += a * b;
            count += 1.0;
        }
    }
    let cov = s12 / count - (s1 / count) * (s2 / count);
    let expected = -1.0 / ((n * n * (n + 1)) as f64);
    assert!(cov < 0.0 && (cov - expected).abs() < 0.002, "cov {cov}, expected {expected}");
}

#[test]
fn fallback_rows_occur_at_rate_q_to_the_n() {
    let p = 0.5;
    let law = EntryLaw::bernoulli(p).unwrap();
    let replicas = 100_000u64;
    let mut fallbacks = 0usize;
    for r in 0..replicas {
        fallbacks += markov_sample(10, &law, SeededStream::new(2010, r)).unwrap().fallback_rows.len();
    }
    let trials = (replicas * 10) as f64;
    let rate = (1.0 - p).powi(10);
    let se = (rate * (1.0 - rate) / trials).sqrt();
    let observed = fallbacks as f64 / trials;
    assert!((observed - rate).abs() <= 3.0 * se, "observed {observed}, expected {rate} +- {}", 3.0 * se);
}

#[test]
fn scale_invariance_across_factors() {
    let x = sample_iid_matrix(30, &EntryLaw::Uniform, SeededStream::new(8, 1)).unwrap();
    let base = to_markov(&x).unwrap().m_matrix;
    for t in [1e-3, 0.5, 7.0, 1e6] {
        let m = to_markov(&x.scaled(t)).unwrap().m_matrix;
        let worst = base.as_slice().iter().zip(m.as_slice()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        assert!(worst <= 1e-14, "t={t}: {worst}");
    }
}
