use std::collections::VecDeque;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// Iteration budget of [`invariant_measure`].
pub const INVARIANT_MAX_ITER: usize = 100_000;

/// Row sums must match 1 to this accuracy for a matrix to count as Markov.
const ROW_SUM_TOL: f64 = 1e-9;

/// `(1/n) tr(M^r)`, the average probability of returning to the start after `r` steps.
pub fn loop_probability_moment(m: &Matrix, r: u32) -> Result<f64> {
    require_markov(m)?;
    let n = m.rows();
    let trace = match r {
        0 => n as f64,
        1 => m.trace(),
        _ => {
            let mut p = m.clone();
            for _ in 0..r - 2 {
                p = p.matmul(m)?;
            }
            trace_of_product(&p, m)
        }
    };
    Ok(trace / n as f64)
}

/// `Re (1/n) sum lambda_i^r`, the eigenvalue route to the same quantity.
pub fn loop_probability_power_sum(eigenvalues: &[Complex64], r: u32) -> f64 {
    let sum: Complex64 = eigenvalues.iter().map(|l| l.powu(r)).sum();
    sum.re / eigenvalues.len() as f64
}

/// `tr(AB) = sum_{i,j} A_{ij} B_{ji}` without forming the product.
fn trace_of_product(a: &Matrix, b: &Matrix) -> f64 {
    let n = a.rows();
    let mut t = 0.0;
    for i in 0..n {
        let row = a.row(i);
        for (j, &v) in row.iter().enumerate() {
            t += v * b[(j, i)];
        }
    }
    t
}

fn require_markov(m: &Matrix) -> Result<()> {
    if !m.is_square() {
        return Err(Error::Shape(format!("Markov matrix must be square, got {}x{}", m.rows(), m.cols())));
    }
    for i in 0..m.rows() {
        let row = m.row(i);
        let sum: f64 = row.iter().sum();
        if row.iter().any(|&v| v < 0.0) || (sum - 1.0).abs() > ROW_SUM_TOL {
            return Err(Error::Shape(format!("row {i} is not a probability vector (sum {sum})")));
        }
    }
    Ok(())
}

fn reachable(n: usize, start: usize, edge: impl Fn(usize, usize) -> bool) -> Vec<bool> {
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([start]);
    seen[start] = true;
    while let Some(i) = queue.pop_front() {
        for (j, s) in seen.iter_mut().enumerate() {
            if !*s && edge(i, j) {
                *s = true;
                queue.push_back(j);
            }
        }
    }
    seen
}

/// Number of states that both reach and are reached from state 0.
fn communicating_with_first(m: &Matrix) -> usize {
    let n = m.rows();
    let forward = reachable(n, 0, |i, j| m[(i, j)] > 0.0);
    let backward = reachable(n, 0, |i, j| m[(j, i)] > 0.0);
    forward.iter().zip(&backward).filter(|(a, b)| **a && **b).count()
}

/// Strong connectivity of the graph `i -> j` iff `M_{ij} > 0`.
pub fn is_irreducible(m: &Matrix) -> bool {
    m.is_square() && communicating_with_first(m) == m.rows()
}

/// Stationary row vector `kappa M = kappa` by power iteration on the lazy
/// chain `(I + M)/2`, which has the same stationary law and is aperiodic.
/// Stops once `||kappa M - kappa||_1 <= tol`.
pub fn invariant_measure(m: &Matrix, tol: f64) -> Result<Vec<f64>> {
    require_markov(m)?;
    let n = m.rows();
    let communicating = communicating_with_first(m);
    if communicating < n {
        return Err(Error::Reducible { communicating, n });
    }
    let mut kappa = vec![1.0 / n as f64; n];
    let mut next = vec![0.0; n];
    for _ in 0..INVARIANT_MAX_ITER {
        next.iter_mut().for_each(|x| *x = 0.0);
        for (i, &k) in kappa.iter().enumerate() {
            for (x, &v) in next.iter_mut().zip(m.row(i)) {
                *x += k * v;
            }
        }
        let residual: f64 = kappa.iter().zip(&next).map(|(a, b)| (a - b).abs()).sum();
        if residual <= tol {
            return Ok(kappa);
        }
        for (k, x) in kappa.iter_mut().zip(&next) {
            *k = 0.5 * (*k + x);
        }
        let total: f64 = kappa.iter().sum();
        kappa.iter_mut().for_each(|k| *k /= total);
    }
    Err(Error::IterationLimit { routine: "invariant_measure", limit: INVARIANT_MAX_ITER })
}

/// `(1/2) sum |p_i - q_i|`.
pub fn total_variation(p: &[f64], q: &[f64]) -> f64 {
    0.5 * p.iter().zip(q).map(|(a, b)| (a - b).abs()).sum::<f64>()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loop_moments_of_small_chains() {
        let m = Matrix::from_rows(&[[0.9, 0.1], [0.2, 0.8]]).unwrap();
        assert_eq!(loop_probability_moment(&m, 0).unwrap(), 1.0);
        assert!((loop_probability_moment(&m, 1).unwrap() - 0.85).abs() < 1e-15);
        // eigenvalues 1 and 0.7
        let ev = [Complex64::new(1.0, 0.0), Complex64::new(0.7, 0.0)];
        for r in 0..6 {
            let a = loop_probability_moment(&m, r).unwrap();
            assert!((a - loop_probability_power_sum(&ev, r)).abs() < 1e-14, "r={r}");
        }
        assert_eq!(loop_probability_moment(&Matrix::identity(4), 5).unwrap(), 1.0);
        assert!(loop_probability_moment(&Matrix::from_rows(&[[0.5, 0.4]; 2]).unwrap(), 1).is_err());
    }

    #[test]
    fn stationary_laws() {
        let m = Matrix::from_rows(&[[0.9, 0.1], [0.2, 0.8]]).unwrap();
        let k = invariant_measure(&m, 1e-12).unwrap();
        assert!((k[0] - 2.0 / 3.0).abs() < 1e-11 && (k[1] - 1.0 / 3.0).abs() < 1e-11);

        let flip = Matrix::from_rows(&[[0.0, 1.0], [1.0, 0.0]]).unwrap();
        assert_eq!(invariant_measure(&flip, 1e-12).unwrap(), vec![0.5, 0.5]);

        let absorbing = Matrix::from_rows(&[[1.0, 0.0], [0.5, 0.5]]).unwrap();
        assert!(!is_irreducible(&absorbing));
        assert!(matches!(invariant_measure(&absorbing, 1e-12), Err(Error::Reducible { communicating: 1, n: 2 })));
        assert_eq!(total_variation(&[1.0, 0.0], &[0.5, 0.5]), 0.5);
    }
}
