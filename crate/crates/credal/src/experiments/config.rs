//! Shared configuration for the Monte-Carlo studies.

use std::fmt;
use std::str::FromStr;

use crate::dist::Generator;
use crate::error::{Error, Result};
use crate::interval::IntervalSet;
use crate::scores::NonconformityMeasure;

/// The two built-in nonconformity measures, by CLI name.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeasureKind {
    Identity,
    MeanDeviation,
}

impl MeasureKind {
    pub fn to_measure(self) -> NonconformityMeasure {
        match self {
            MeasureKind::Identity => NonconformityMeasure::Identity,
            MeasureKind::MeanDeviation => NonconformityMeasure::MeanAbsDeviation,
        }
    }
}

impl fmt::Display for MeasureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MeasureKind::Identity => write!(f, "identity"),
            MeasureKind::MeanDeviation => write!(f, "meandev"),
        }
    }
}

impl FromStr for MeasureKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "identity" => Ok(MeasureKind::Identity),
            "meandev" => Ok(MeasureKind::MeanDeviation),
            other => Err(Error::InvalidInput(format!(
                "unknown measure {other:?}; expected identity or meandev"
            ))),
        }
    }
}

/// Knobs common to the studies; each study reads the fields it needs.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    /// Sample sizes to sweep.
    pub ns: Vec<usize>,
    /// Monte-Carlo replicates per cell.
    pub replicates: usize,
    /// Levels to sweep where applicable.
    pub alphas: Vec<f64>,
    /// Event of interest for belief/plausibility studies.
    pub event: IntervalSet,
    pub generator: Generator,
    pub measure: MeasureKind,
    /// Master seed; every replicate stream and report row records it.
    pub seed: u64,
    /// Conjugate prior for the exponential-model baseline.
    pub prior_shape: f64,
    pub prior_rate: f64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            ns: vec![100],
            replicates: 1_000,
            alphas: vec![0.05, 0.1, 0.2],
            event: IntervalSet::interval(0.0, false, 2.0, false).unwrap(),
            generator: Generator::standard_gaussian(),
            measure: MeasureKind::Identity,
            seed: 20_240_817,
            prior_shape: 1.0,
            prior_rate: 1.0,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.ns.is_empty() {
            return Err(Error::InvalidInput("need at least one sample size".into()));
        }
        if self.ns.iter().any(|&n| n < 2) {
            return Err(Error::InvalidInput("sample sizes must be at least 2".into()));
        }
        if self.replicates == 0 {
            return Err(Error::InvalidInput("need at least one replicate".into()));
        }
        if self.alphas.is_empty() {
            return Err(Error::InvalidInput("need at least one level".into()));
        }
        if self.alphas.iter().any(|&a| !(0.0 < a && a < 1.0)) {
            return Err(Error::InvalidInput("levels must lie strictly in (0,1)".into()));
        }
        if !(self.prior_shape > 0.0 && self.prior_rate > 0.0) {
            return Err(Error::InvalidInput("prior must be positive".into()));
        }
        Ok(())
    }

    /// Key-value echo embedded in every report.
    pub fn echo(&self) -> Vec<(String, String)> {
        vec![
            ("generator".into(), self.generator.to_string()),
            ("measure".into(), self.measure.to_string()),
            ("event".into(), self.event.to_string()),
            ("prior_shape".into(), self.prior_shape.to_string()),
            ("prior_rate".into(), self.prior_rate.to_string()),
            ("replicates".into(), self.replicates.to_string()),
        ]
    }
}
