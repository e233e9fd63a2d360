//! Random Markov matrices `M = D X` obtained by row-normalizing an i.i.d.
//! nonnegative matrix, and the tools to study their spectra: dense
//! eigenvalue and singular value kernels, seeded ensembles, empirical
//! spectral statistics, executable matrix inequalities and Monte Carlo
//! experiment drivers.

pub mod cli;
pub mod ensembles;
pub mod error;
pub mod experiments;
pub mod linalg;
pub mod oracles;
pub mod stats;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, Matrix, Spectrum};
