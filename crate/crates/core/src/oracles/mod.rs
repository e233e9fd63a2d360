//! Executable checks of deterministic singular value and eigenvalue
//! inequalities, plus seeded fuzz campaigns over random matrices.

mod checks;
mod fuzz;
mod report;

pub use checks::{
    check_basic_inequalities, check_cauchy_interlacing, check_distance_concentration, check_rv_row_bound,
    check_special_matrix_a, check_tao_vu_negative_moment, check_thompson_lidskii, check_weyl, perturbation_rank,
    special_matrix, special_matrix_limit, special_matrix_singular_values, SpecialMatrixForm, INEQUALITY_TOL,
    PRODUCT_TOL, RANK_THRESHOLD, SPECIAL_DENSE_LIMIT,
};
pub use fuzz::{concentration_cases, concentration_suite, fuzz_campaign, fuzz_instance, Lemma, FUZZ_SIZES};
pub use report::CheckReport;
