//! Empirical spectral measures, their reference limits, logarithmic
//! potentials and Markov-chain observables.

mod chain;
mod histogram;
mod measure;
mod potential;
mod reference;

pub use chain::{
    invariant_measure, is_irreducible, loop_probability_moment, loop_probability_power_sum, total_variation,
    INVARIANT_MAX_ITER,
};
pub use histogram::{chi_square_uniform, phase_histogram, real_histogram};
pub use measure::{esd_eigen, esd_singular, EmpiricalMeasure};
pub use potential::{
    girko_identity_residual, log_potential_circular, log_potential_empirical, log_tail_integral, negative_log_integral,
    ATOM_TOL,
};
pub use reference::{
    circular_radial_cdf, kolmogorov_distance, quartercircular_cdf, quartercircular_density, quartercircular_quantile,
    radial_kolmogorov_distance, ReferenceLaw,
};
