use num_complex::Complex64;

use super::eigen::{eigenvalues, EigenScalar};
use super::matrix::Matrix;
use super::svd::singular_values;
use crate::error::Result;

/// Eigenvalues (modulus descending, then phase ascending) and singular
/// values (descending) of one square matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    pub eigenvalues: Vec<Complex64>,
    pub singular_values: Vec<f64>,
}

impl Spectrum {
    pub fn of<T: EigenScalar>(a: &Matrix<T>) -> Result<Self> {
        Ok(Self { eigenvalues: eigenvalues(a)?, singular_values: singular_values(a)? })
    }

    pub fn dim(&self) -> usize {
        self.singular_values.len()
    }

    /// `|lambda_1|`.
    pub fn spectral_radius(&self) -> f64 {
        self.eigenvalues.first().map_or(0.0, |z| z.norm())
    }
}
