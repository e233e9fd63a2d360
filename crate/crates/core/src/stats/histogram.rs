use std::f64::consts::TAU;

use super::EmpiricalMeasure;
use crate::error::{Error, Result};

/// Points this close (in bin units) to a bin edge are snapped onto it, so
/// that exact symmetries survive rounding in `atan2`.
const EDGE_SNAP: f64 = 1e-9;

/// Counts of atom phases in `bins` equal arcs of `[0, 2 pi)`, bin `k` covering
/// `[2 pi k / bins, 2 pi (k+1) / bins)`.
///
/// Conjugation maps an interior point of bin `k` to bin `bins - 1 - k` and an
/// edge point at `k` to `(bins - k) mod bins`.
pub fn phase_histogram(mu: &EmpiricalMeasure, bins: usize) -> Result<Vec<usize>> {
    if bins == 0 {
        return Err(Error::Dimension("phase histogram needs at least one bin".into()));
    }
    let points =
        mu.complex_atoms().ok_or_else(|| Error::Dimension("phase histogram needs a complex-plane measure".into()))?;
    let mut counts = vec![0; bins];
    for z in points {
        let mut theta = z.im.atan2(z.re);
        if theta < 0.0 {
            theta += TAU;
        }
        let mut x = theta / TAU * bins as f64;
        if (x - x.round()).abs() < EDGE_SNAP {
            x = x.round();
        }
        counts[(x.floor() as usize) % bins] += 1;
    }
    Ok(counts)
}

/// Pearson statistic of `counts` against equal expected counts.
pub fn chi_square_uniform(counts: &[usize]) -> f64 {
    let total: usize = counts.iter().sum();
    if total == 0 {
        return 0.0;
    }
    let expected = total as f64 / counts.len() as f64;
    counts.iter().map(|&c| (c as f64 - expected).powi(2) / expected).sum()
}

/// Counts of real values in `bins` equal cells of `[lo, hi)`; values outside are dropped.
pub fn real_histogram(values: &[f64], bins: usize, lo: f64, hi: f64) -> Vec<usize> {
    let mut counts = vec![0; bins];
    let width = (hi - lo) / bins as f64;
    for &v in values {
        if v >= lo && v < hi {
            counts[(((v - lo) / width) as usize).min(bins - 1)] += 1;
        }
    }
    counts
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn conjugate_pair_on_edges() {
        let mu = EmpiricalMeasure::complex(vec![Complex64::new(0.0, 1.0), Complex64::new(0.0, -1.0)]).unwrap();
        let h = phase_histogram(&mu, 4).unwrap();
        assert_eq!(h, vec![0, 1, 0, 1]);
        for k in 0..4 {
            assert_eq!(h[k], h[(4 - k) % 4]);
        }
    }

    #[test]
    fn roots_of_unity_fill_bins_evenly() {
        let n = 24;
        let roots = (0..n).map(|k| Complex64::from_polar(1.0, TAU * k as f64 / n as f64)).collect();
        let mu = EmpiricalMeasure::complex(roots).unwrap();
        for bins in [1, 2, 3, 4, 6, 8, 12, 24] {
            let h = phase_histogram(&mu, bins).unwrap();
            assert!(h.iter().all(|&c| c == n / bins), "bins={bins}: {h:?}");
            assert_eq!(chi_square_uniform(&h), 0.0);
        }
    }

    #[test]
    fn real_bins() {
        assert_eq!(real_histogram(&[0.0, 0.5, 0.99, 1.0, -0.1], 2, 0.0, 1.0), vec![1, 2]);
    }
}
