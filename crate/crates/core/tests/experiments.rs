use std::collections::BTreeMap;
use std::path::Path;

use markov_spectra::ensembles::{markov_sample, EntryLaw, SeededStream};
use markov_spectra::experiments::*;
use num_complex::Complex64;

fn config(kind: ExperimentKind, ns: &[usize], replicas: usize) -> ExperimentConfig {
    let mut cfg = ExperimentConfig::new(kind);
    cfg.n_values = ns.to_vec();
    cfg.replicas = replicas;
    cfg
}

fn read_dir(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    std::fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (e.file_name().into_string().unwrap(), std::fs::read(e.path()).unwrap())
        })
        .collect()
}

#[test]
fn tiny_sizes_produce_reports_for_every_experiment() {
    for kind in ExperimentKind::ALL {
        let cfg = config(kind, &[2, 3], 2);
        let report = run_experiment(&cfg).unwrap_or_else(|e| panic!("{kind}: {e}"));
        assert_eq!(report.experiment_id, kind.id());
        assert!(!report.rows.is_empty());
        // nothing is judged on an absolute scale below the minimum size
        for row in &report.rows {
            if row.n == Some(3) && matches!(row.criterion, Criterion::Within) {
                assert_ne!(row.statistic, "second_moment_mean");
            }
        }
    }
}

#[test]
fn outputs_do_not_depend_on_thread_count() {
    let base = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for threads in [1, 4] {
        let mut cfg = config(ExperimentKind::Circular, &[40, 90], 3);
        cfg.law = EntryLaw::Bernoulli { p: 0.5 };
        cfg.threads = Some(threads);
        cfg.output_dir = Some(base.path().join(format!("t{threads}")));
        let report = run_experiment(&cfg).unwrap();
        assert!(report.artifacts.iter().all(|p| p.exists()));
        let mut files = read_dir(cfg.output_dir.as_ref().unwrap());
        files.remove("config.txt");
        // the report lists the output directory only through config.txt
        outputs.push(files);
    }
    assert_eq!(outputs[0], outputs[1]);
    let names: Vec<&String> = outputs[0].keys().collect();
    for expected in ["summary.csv", "report.txt", "figure_40.svg", "figure_90.svg", "spectrum_90_2.csv"] {
        assert!(names.iter().any(|n| *n == expected), "{expected} missing from {names:?}");
    }
}

#[test]
fn summary_csv_layout() {
    let report = run_experiment(&config(ExperimentKind::Extremes, &[30], 2)).unwrap();
    let csv = report.summary_csv();
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), "n,statistic,value,reference,tolerance,pass,source");
    for line in lines {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields.len(), 7, "{line}");
        assert!(["true", "false", "na"].contains(&fields[5]));
        assert!(!fields[6].is_empty());
    }
}

#[test]
fn svg_figures_are_well_formed() {
    let pts: Vec<Complex64> = (0..50).map(|k| Complex64::from_polar(0.02 * k as f64, k as f64)).collect();
    let fig = svg::scatter(&pts, 1.0, "a < b & c");
    assert!(fig.contains("viewBox=\"0 0 1000 1000\""));
    assert!(fig.trim_end().ends_with("</svg>"));
    assert!(fig.contains("a &lt; b &amp; c"));
    assert_eq!(fig.matches("<svg").count(), 1);
    assert_eq!(fig, svg::scatter(&pts, 1.0, "a < b & c"));
}

#[test]
fn shifted_matrices_are_invertible_at_the_origin() {
    let mut cfg = config(ExperimentKind::Resolvent, &[200], 5);
    cfg.z_grid = vec![Complex64::new(0.0, 0.0)];
    let report = run_experiment(&cfg).unwrap();
    let row = report.find(Some(200), "min_sn[z=0+0i]").unwrap();
    assert!(row.value > 0.0);
    assert!(report.passed());
}

#[test]
fn decay_exponent_is_finite_at_the_bulk_edge() {
    let mut cfg = config(ExperimentKind::Resolvent, &[100, 200, 400], 3);
    cfg.z_grid = vec![Complex64::new(1.0, 0.0)];
    let report = run_experiment(&cfg).unwrap();
    let b = report.find(None, "decay_exponent[z=1+0i]").unwrap();
    assert!(b.value.is_finite() && b.value <= MAX_DECAY_EXPONENT, "{}", b.value);
}

#[test]
fn perturbation_gap_shrinks_with_n() {
    let report = run_experiment(&config(ExperimentKind::Perturbation, &[100, 400, 1600], 3)).unwrap();
    print!("{}", report.text());
    let trend = report.find(None, "log_gap_median_strictly_decreasing").unwrap();
    assert_eq!(trend.pass(), Some(true));
    let dev = report.find(Some(1600), "d_deviation_max").unwrap();
    assert!(dev.value <= D_DEVIATION_TOL, "{}", dev.value);
    assert!(report.passed());
}

#[test]
fn second_loop_statistic_shrinks_with_n() {
    let report = run_experiment(&config(ExperimentKind::Moments, &[100, 400, 1600], 5)).unwrap();
    print!("{}", report.text());
    let trend = report.find(None, "abs_loop_statistic_median[r=2]_strictly_decreasing").unwrap();
    assert_eq!(trend.pass(), Some(true));
    assert_eq!(report.find(Some(1600), "reducible_replicas").unwrap().value, 0.0);
}

#[test]
fn loop_statistic_at_zero_length_is_one_minus_one_over_n() {
    let s = markov_sample(50, &EntryLaw::standard_exponential(), SeededStream::new(3, 0)).unwrap();
    assert!((loop_statistic(&s.m_matrix, 0).unwrap() - 0.98).abs() <= 1e-15);
    let r1 = loop_statistic(&s.m_matrix, 1).unwrap();
    let direct = 50f64.sqrt() * (s.m_matrix.trace() / 50.0 - 0.02);
    assert!((r1 - direct).abs() <= 1e-14);
}

#[test]
fn helper_statistics() {
    assert!((slope(&[0.0, 1.0, 2.0], &[1.0, 3.0, 5.0]) - 2.0).abs() < 1e-15);
    let ev = [Complex64::new(1.0, 0.5), Complex64::new(1.0, -0.5), Complex64::new(2.0, 0.0)];
    assert_eq!(conjugate_asymmetry(&ev), 0.0);
    let lone = [Complex64::new(1.0, 0.5), Complex64::new(2.0, 0.0)];
    assert!(conjugate_asymmetry(&lone) > 0.4);
}
