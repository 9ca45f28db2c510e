//! Batch experiments: configuration, trial runner, SVG figures and rate fits.

pub mod config;
pub mod plot;
pub mod rate;
pub mod run;

pub use config::{ExperimentConfig, DEFAULT_SEED, DEFAULT_TRIALS, GOLD_GRID};
pub use plot::{cdf_svg, density_svg};
pub use rate::{fit_rate, parse_summary, quantile, RateFit, RateSample};
pub use run::{run_experiment, ExperimentResult, TrialResult};
