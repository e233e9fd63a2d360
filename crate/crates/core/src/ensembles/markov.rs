use crate::error::{Error, Result};
use crate::linalg::Matrix;

use super::{EntryLaw, SeededStream};

/// One draw of the model: the raw matrix `X`, its row normalization `M = DX`
/// and the bookkeeping needed to rebuild `D`.
#[derive(Clone, Debug, PartialEq)]
pub struct MarkovSample {
    pub x: Matrix,
    pub m_matrix: Matrix,
    /// `rho_i = sum_j X_{i,j}`.
    pub row_sums: Vec<f64>,
    /// Rows with `rho_i = 0`, replaced by the basis row `e_i` (`D_{i,i} = 1`).
    pub fallback_rows: Vec<usize>,
}

impl MarkovSample {
    pub fn dim(&self) -> usize {
        self.x.rows()
    }

    /// Diagonal of `D`: `1/rho_i`, or 1 on fallback rows.
    pub fn d_diagonal(&self) -> Vec<f64> {
        self.row_sums.iter().map(|&r| if r == 0.0 { 1.0 } else { 1.0 / r }).collect()
    }

    /// `sqrt(n) M`, the scaling under which the bulk has a nondegenerate limit.
    pub fn scaled_markov(&self) -> Matrix {
        self.m_matrix.scaled((self.dim() as f64).sqrt())
    }

    /// `n^{-1/2} X`.
    pub fn scaled_x(&self) -> Matrix {
        self.x.scaled(1.0 / (self.dim() as f64).sqrt())
    }
}

/// Row-normalizes a nonnegative square matrix.
pub fn to_markov(x: &Matrix) -> Result<MarkovSample> {
    if !x.is_square() {
        return Err(Error::Shape(format!("Markov normalization of a {}x{} matrix", x.rows(), x.cols())));
    }
    if let Some(k) = x.as_slice().iter().position(|&v| v < 0.0) {
        return Err(Error::Shape(format!(
            "negative entry {} at ({}, {})",
            x.as_slice()[k],
            k / x.cols(),
            k % x.cols()
        )));
    }
    let n = x.rows();
    let mut data = Vec::with_capacity(n * n);
    let mut row_sums = Vec::with_capacity(n);
    let mut fallback_rows = Vec::new();
    for i in 0..n {
        let row = x.row(i);
        let rho: f64 = row.iter().sum();
        row_sums.push(rho);
        if rho == 0.0 {
            fallback_rows.push(i);
            data.extend((0..n).map(|j| if i == j { 1.0 } else { 0.0 }));
        } else {
            data.extend(row.iter().map(|&v| v / rho));
        }
    }
    Ok(MarkovSample { x: x.clone(), m_matrix: Matrix::from_vec_unchecked(n, n, data), row_sums, fallback_rows })
}

/// `n x n` matrix of independent draws, filled row by row from `stream`.
pub fn sample_iid_matrix(n: usize, law: &EntryLaw, stream: SeededStream) -> Result<Matrix> {
    if n == 0 {
        return Err(Error::EmptyMatrix { rows: 0, cols: 0 });
    }
    let mut rng = stream.rng();
    let data = (0..n * n).map(|_| law.sample(&mut rng)).collect();
    Ok(Matrix::from_vec_unchecked(n, n, data))
}

/// Samples `X` and normalizes it in one step.
pub fn markov_sample(n: usize, law: &EntryLaw, stream: SeededStream) -> Result<MarkovSample> {
    to_markov(&sample_iid_matrix(n, law, stream)?)
}

/// Dirichlet Markov ensemble: rows uniform on the simplex.
pub fn dirichlet_markov_sample(n: usize, stream: SeededStream) -> Result<MarkovSample> {
    markov_sample(n, &EntryLaw::standard_exponential(), stream)
}

/// `E X`, the constant matrix with entries `m`.
pub fn mean_matrix(n: usize, law: &EntryLaw) -> Result<Matrix> {
    if n == 0 {
        return Err(Error::EmptyMatrix { rows: 0, cols: 0 });
    }
    Ok(Matrix::from_vec_unchecked(n, n, vec![law.mean(); n * n]))
}
