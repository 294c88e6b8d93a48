//! Seeded Monte-Carlo studies over the prediction machinery, with
//! machine-readable reports.
//!
//! Every study derives one independent random stream per replicate from
//! `(master seed, study id, replicate index)`, so results are byte-identical
//! across runs and across any parallel schedule.

pub mod concentration;
pub mod config;
pub mod figures;
pub mod longitudinal;
pub mod report;
pub mod survival;
pub mod validity;

pub use concentration::{focal_gap_exceedance, run_concentration, ConcentrationParams, EvalPoint};
pub use config::{ExperimentConfig, MeasureKind};
pub use figures::{emit_figures, paired_draws, window_mass, FiguresParams};
pub use longitudinal::run_longitudinal;
pub use report::{ExperimentReport, ReportFormat, ReportRow};
pub use survival::run_survival;
pub use validity::run_validity;
