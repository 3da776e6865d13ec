//! Experiment driver: threshold-crossing sweeps, scaling fits, the
//! cross-validation matrix and result files.

pub mod config;
pub mod fit;
pub mod output;
pub mod sweep;
pub mod validate;

pub use config::{Mode, SweepConfig};
pub use fit::{fit_scaling, FitResult};
pub use output::{Format, ResultRow};
pub use sweep::{find_k_star, mode_probability, run_sweep, SweepPoint};
pub use validate::{validate_all, CheckResult, ValidationReport};
