//! Seeded Monte Carlo experiments at desk scale, with CSV and SVG output.

mod config;
mod report;
mod runners;
pub mod svg;

pub use config::{
    default_z_grid, format_complex, ExperimentConfig, ExperimentKind, DEFAULT_N_VALUES, DEFAULT_REPLICAS, DEFAULT_SEED,
};
pub use report::{Criterion, ExperimentReport, SummaryRow};
pub use runners::*;
