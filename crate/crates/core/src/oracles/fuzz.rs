use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::seq::index::sample;
use rand::Rng;
use rayon::prelude::*;

use super::checks::*;
use super::report::CheckReport;
use crate::ensembles::{EntryLaw, SeededStream, StreamRng};
use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// The deterministic lemmas with an executable check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Lemma {
    Basic,
    RvRowBound,
    TaoVuNegativeMoment,
    CauchyInterlacing,
    ThompsonLidskii,
    Weyl,
    SpecialMatrix,
    DistanceConcentration,
}

impl Lemma {
    pub const ALL: [Lemma; 8] = [
        Lemma::Basic,
        Lemma::RvRowBound,
        Lemma::TaoVuNegativeMoment,
        Lemma::CauchyInterlacing,
        Lemma::ThompsonLidskii,
        Lemma::Weyl,
        Lemma::SpecialMatrix,
        Lemma::DistanceConcentration,
    ];

    /// Lemmas checked on random matrices; the concentration lemma is a
    /// Monte Carlo statement and runs through [`concentration_suite`] instead.
    pub const MATRIX_LEMMAS: [Lemma; 7] = [
        Lemma::Basic,
        Lemma::RvRowBound,
        Lemma::TaoVuNegativeMoment,
        Lemma::CauchyInterlacing,
        Lemma::ThompsonLidskii,
        Lemma::Weyl,
        Lemma::SpecialMatrix,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Lemma::Basic => "basic",
            Lemma::RvRowBound => "rv-row-bound",
            Lemma::TaoVuNegativeMoment => "tao-vu-negative-moment",
            Lemma::CauchyInterlacing => "cauchy-interlacing",
            Lemma::ThompsonLidskii => "thompson-lidskii",
            Lemma::Weyl => "weyl",
            Lemma::SpecialMatrix => "special-matrix",
            Lemma::DistanceConcentration => "distance-concentration",
        }
    }
}

impl fmt::Display for Lemma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Lemma {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Lemma::ALL.into_iter().find(|l| l.id() == s).ok_or_else(|| {
            let ids: Vec<&str> = Lemma::ALL.iter().map(|l| l.id()).collect();
            Error::Parse(format!("unknown lemma {s:?}; expected one of {}", ids.join(", ")))
        })
    }
}

/// Smallest and largest dimension used by the fuzzers.
pub const FUZZ_SIZES: std::ops::RangeInclusive<usize> = 3..=12;

/// Random test matrix: mostly uniform entries in `[-1, 1]`, with rescaled and
/// low-rank variants mixed in.
fn random_matrix(rng: &mut StreamRng, rows: usize, cols: usize, full_rank: bool) -> Matrix {
    let uniform = |rng: &mut StreamRng, r: usize, c: usize| -> Matrix {
        Matrix::from_fn(r, c, |_, _| rng.random_range(-1.0..=1.0))
    };
    let kind = rng.random_range(0..10);
    match kind {
        0..=5 => uniform(rng, rows, cols),
        6 | 7 => {
            let scale = 10f64.powf(rng.random_range(-3.0..=3.0));
            uniform(rng, rows, cols).scaled(scale)
        }
        _ if full_rank => uniform(rng, rows, cols),
        _ => {
            let r = rng.random_range(1..rows.min(cols).max(2));
            let left = uniform(rng, rows, r);
            left.matmul(&uniform(rng, r, cols)).expect("inner dimensions agree")
        }
    }
}

/// Shape of instance `index`: `(3 + index mod 10, 3 + (index / 10) mod 10)`,
/// so every block of 100 consecutive instances covers each shape once.
fn instance_shape(index: u64) -> (usize, usize) {
    let width = (FUZZ_SIZES.end() - FUZZ_SIZES.start() + 1) as u64;
    let first = FUZZ_SIZES.start() + (index % width) as usize;
    let second = FUZZ_SIZES.start() + (index / width % width) as usize;
    (first, second)
}

/// Runs one random instance of `lemma` drawn from `stream`; the stream index
/// also fixes the matrix shape.
pub fn fuzz_instance(lemma: Lemma, stream: SeededStream) -> Result<CheckReport> {
    let rng = &mut stream.rng();
    let (n, m) = instance_shape(stream.stream_index);
    let report = match lemma {
        Lemma::Basic => {
            let a = if rng.random_bool(0.3) {
                Matrix::from_diagonal(&(0..n).map(|_| rng.random_range(-2.0..=2.0)).collect::<Vec<_>>())
            } else {
                random_matrix(rng, n, n, false)
            };
            let b = random_matrix(rng, n, n, false);
            check_basic_inequalities(&a, &b)?
        }
        Lemma::RvRowBound => check_rv_row_bound(&random_matrix(rng, n, n, false))?,
        Lemma::TaoVuNegativeMoment => {
            let (rows, cols) = (n.min(m), n.max(m));
            check_tao_vu_negative_moment(&random_matrix(rng, rows, cols, true))?
        }
        Lemma::CauchyInterlacing => {
            let a = random_matrix(rng, n, n, false);
            let count = rng.random_range(0..n);
            let deleted = sample(rng, n, count).into_vec();
            check_cauchy_interlacing(&a, &deleted)?
        }
        Lemma::ThompsonLidskii => {
            let (rows, cols) = (n, m);
            let a = random_matrix(rng, rows, cols, false);
            let k = rng.random_range(0..=3usize);
            let mut b = a.clone();
            for _ in 0..k {
                let scale = 10f64.powf(rng.random_range(-2.0..=1.0));
                let u: Vec<f64> = (0..rows).map(|_| rng.random_range(-1.0..=1.0)).collect();
                let v: Vec<f64> = (0..cols).map(|_| rng.random_range(-1.0..=1.0)).collect();
                b = b.checked_add(&Matrix::from_fn(rows, cols, |i, j| scale * u[i] * v[j]))?;
            }
            check_thompson_lidskii(&a, &b)?
        }
        Lemma::Weyl => check_weyl(&random_matrix(rng, n, n, false))?,
        Lemma::SpecialMatrix => {
            // Include n = 2, where no singular value is pinned at 1.
            let n = n - usize::from(m == *FUZZ_SIZES.start());
            let z = Complex64::new(rng.random_range(-3.0..=3.0), rng.random_range(-3.0..=3.0));
            check_special_matrix_a(n, z)?
        }
        Lemma::DistanceConcentration => {
            let n = rng.random_range(50..=200);
            let dim_h = rng.random_range(1..=n / 2);
            check_distance_concentration(n, &EntryLaw::standard_exponential(), dim_h, 200, stream)?
        }
    };
    Ok(report)
}

/// `instances` seeded random instances of `lemma`; instance `i` uses stream
/// `(seed, i)`. Instances run in parallel and are merged in index order, so
/// the result does not depend on the thread count. A failing instance is
/// named in the witness.
pub fn fuzz_campaign(lemma: Lemma, instances: usize, seed: u64) -> Result<CheckReport> {
    let reports: Vec<Result<CheckReport>> = (0..instances as u64)
        .into_par_iter()
        .map(|i| match fuzz_instance(lemma, SeededStream::new(seed, i)) {
            Ok(r) => Ok(r.with_context(&format!("instance {i}"))),
            Err(Error::RankDeficient { .. }) => Ok(skipped(lemma, i)),
            Err(e) => Err(e),
        })
        .collect();
    let mut merged: Option<CheckReport> = None;
    for r in reports {
        let r = r?;
        merged = Some(match merged {
            None => r,
            Some(m) => m.merge(r),
        });
    }
    merged.ok_or_else(|| Error::Dimension("campaign needs at least one instance".into()))
}

/// Report for an instance rejected by the check's precondition.
fn skipped(lemma: Lemma, instance: u64) -> CheckReport {
    CheckReport {
        lemma_id: lemma.id().into(),
        passed: true,
        worst_margin: f64::INFINITY,
        tolerance: INEQUALITY_TOL,
        witness: format!("instance {instance}: skipped"),
        flags: vec!["skipped-rank-deficient".into()],
        instances: 1,
    }
}

/// Fixed settings of the concentration check: `(n, dim_h, law)`.
pub fn concentration_cases() -> Vec<(usize, usize, EntryLaw)> {
    vec![
        (400, 200, EntryLaw::standard_exponential()),
        (100, 50, EntryLaw::Bernoulli { p: 0.5 }),
        (100, 0, EntryLaw::Uniform),
    ]
}

/// Runs every [`concentration_cases`] entry with `replicas` rows.
pub fn concentration_suite(replicas: usize, seed: u64) -> Result<CheckReport> {
    let reports: Vec<Result<CheckReport>> = concentration_cases()
        .into_par_iter()
        .enumerate()
        .map(|(i, (n, dim_h, law))| {
            check_distance_concentration(n, &law, dim_h, replicas, SeededStream::new(seed, i as u64))
                .map(|r| r.with_context(&format!("n={n} dim_h={dim_h} {law}")))
        })
        .collect();
    let mut it = reports.into_iter();
    let first = it.next().expect("nonempty case list")?;
    it.try_fold(first, |acc, r| Ok(acc.merge(r?)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip() {
        for l in Lemma::ALL {
            assert_eq!(l.id().parse::<Lemma>().unwrap(), l);
        }
        assert!("nope".parse::<Lemma>().is_err());
    }

    #[test]
    fn campaigns_are_reproducible() {
        let a = fuzz_campaign(Lemma::Weyl, 20, 3).unwrap();
        let b = fuzz_campaign(Lemma::Weyl, 20, 3).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.instances, 20);
        assert!(a.passed, "{a}");
    }
}
