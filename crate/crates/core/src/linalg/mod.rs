//! Dense matrices and hand-written spectral kernels.

mod eigen;
mod hessenberg;
mod householder;
mod matrix;
mod scalar;
mod spectrum;
mod svd;

pub use eigen::{
    compare_eigenvalues, eigenvalues, phase, sort_eigenvalues, EigenScalar, DEFLATION_EPS, EXCEPTIONAL_SHIFT_PERIOD,
    SWEEPS_PER_EIGENVALUE,
};
pub use hessenberg::hessenberg_reduce;
pub use householder::{
    abs_determinant, distance_to_span, householder_qr, log_abs_determinant, row_complement_distances, row_volume,
    SpanProjector, RANK_TOL,
};
pub use matrix::{parse_complex, ComplexMatrix, Matrix, TextEntry};
pub use scalar::{norm2, Scalar};
pub use spectrum::Spectrum;
pub use svd::{
    bidiagonal_singular_values, operator_norm, power_iteration_top, singular_values, smallest_singular_value,
    ZERO_THRESHOLD,
};
