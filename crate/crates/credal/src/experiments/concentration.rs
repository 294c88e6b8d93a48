//! Concentration studies for the flat-per-region distribution built from
//! the identity measure.
//!
//! Two regimes are measured:
//!
//! * **CDF concentration**: how often the scaled gap
//!   `n^gamma |Pi((-inf, y]) - F(y)|` exceeds epsilon, against the
//!   sub-exponential bound `2 exp(-eps^2 n^(1-2 gamma) / 8) + exp(-n F(y))`
//!   (zero when `F(y) = 0`), for `gamma in [0, 1/2)`.
//! * **Focal-gap concentration**: how often
//!   `n^tau |Pi(A(v)) - P(A(v))|` exceeds epsilon. For interior ranks the
//!   region's true probability is a uniform spacing, giving the exact
//!   exceedance probability `1 - (1-b)^n + (1-c)^n` with
//!   `b = max(1/(n+1) - eps/n^tau, 0)` and `c = min(1/(n+1) + eps/n^tau, 1)`;
//!   for the two boundary ranks the region is a point of true probability
//!   zero and the exceedance is the indicator `1{n^tau/(n+1) > eps}`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::experiments::config::{ExperimentConfig, MeasureKind};
use crate::experiments::report::{ExperimentReport, ReportRow};
use crate::experiments::validity::kv;
use crate::maxent::MaxEntropyDistribution;
use crate::partition::FocalPartition;
use crate::scores::Sample;
use crate::stats::proportion_se;
use crate::stream::replicate_rng;

/// Where to probe the CDF.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EvalPoint {
    /// The generator's exact median.
    Median,
    Value(f64),
}

#[derive(Debug, Clone)]
pub enum ConcentrationParams {
    Cdf { gammas: Vec<f64>, epsilon: f64, at: EvalPoint },
    Focal { taus: Vec<f64>, epsilon: f64, ranks: Vec<usize> },
}

fn build_med(sample: Vec<f64>) -> Result<(FocalPartition, MaxEntropyDistribution)> {
    let sample = Sample::new(sample)?;
    let partition = FocalPartition::identity(&sample)?;
    let med = MaxEntropyDistribution::from_partition(&partition)?;
    Ok((partition, med))
}

/// Exact exceedance probability of the focal-gap event for one rank.
pub fn focal_gap_exceedance(n: usize, v: usize, tau: f64, epsilon: f64) -> Result<f64> {
    if !(1..=n + 1).contains(&v) {
        return Err(Error::InvalidInput(format!("rank {v} outside 1..={}", n + 1)));
    }
    let mass = 1.0 / (n + 1) as f64;
    let threshold = epsilon / (n as f64).powf(tau);
    if v == 1 || v == n + 1 {
        return Ok(if mass > threshold { 1.0 } else { 0.0 });
    }
    let b = (mass - threshold).max(0.0);
    let c = (mass + threshold).min(1.0);
    Ok(1.0 - (1.0 - b).powi(n as i32) + (1.0 - c).powi(n as i32))
}

pub fn run_concentration(
    config: &ExperimentConfig,
    params: &ConcentrationParams,
) -> Result<ExperimentReport> {
    config.validate()?;
    if config.measure != MeasureKind::Identity {
        return Err(Error::AssumptionViolated(
            "concentration studies are defined for the identity measure".into(),
        ));
    }
    match params {
        ConcentrationParams::Cdf { gammas, epsilon, at } => {
            run_cdf(config, gammas, *epsilon, *at)
        }
        ConcentrationParams::Focal { taus, epsilon, ranks } => {
            run_focal(config, taus, *epsilon, ranks)
        }
    }
}

fn run_cdf(
    config: &ExperimentConfig,
    gammas: &[f64],
    epsilon: f64,
    at: EvalPoint,
) -> Result<ExperimentReport> {
    if gammas.is_empty() {
        return Err(Error::InvalidInput("need at least one gamma".into()));
    }
    if let Some(&g) = gammas.iter().find(|&&g| !(0.0..0.5).contains(&g)) {
        return Err(Error::InvalidInput(format!("gamma must lie in [0, 0.5), got {g}")));
    }
    if epsilon.is_nan() || epsilon <= 0.0 {
        return Err(Error::InvalidInput(format!("epsilon must be positive, got {epsilon}")));
    }
    let y = match at {
        EvalPoint::Median => config.generator.median(),
        EvalPoint::Value(v) => v,
    };
    let f_y = config.generator.cdf(y);
    let mut rows = Vec::new();
    for &n in &config.ns {
        let id = format!("concentration-cdf/n={n}");
        // The scaled threshold varies with gamma but the raw gap does not,
        // so each replicate is computed once.
        let gaps: Vec<f64> = (0..config.replicates)
            .into_par_iter()
            .map(|rep| {
                let mut rng = replicate_rng(config.seed, &id, rep as u64);
                let (_, med) = build_med(config.generator.sample_n(n, &mut rng))?;
                Ok((med.cdf(y) - f_y).abs())
            })
            .collect::<Result<Vec<_>>>()?;
        let reps = gaps.len();
        for &gamma in gammas {
            let scale = (n as f64).powf(gamma);
            let freq =
                gaps.iter().filter(|&&d| scale * d > epsilon).count() as f64 / reps as f64;
            let se = proportion_se(freq, reps);
            let bound = if f_y > 0.0 {
                2.0 * (-epsilon * epsilon * (n as f64).powf(1.0 - 2.0 * gamma) / 8.0).exp()
                    + (-(n as f64) * f_y).exp()
            } else {
                0.0
            };
            rows.push(ReportRow {
                cell: vec![kv("n", n), kv("gamma", gamma), kv("y", y)],
                estimate: freq,
                std_error: se,
                oracle: Some(bound),
                pass: Some(freq <= bound + 3.0 * se),
            });
        }
    }
    let mut echo = config.echo();
    echo.push(kv("epsilon", epsilon));
    Ok(ExperimentReport::new("concentration-cdf", config.seed, echo, rows))
}

fn run_focal(
    config: &ExperimentConfig,
    taus: &[f64],
    epsilon: f64,
    ranks: &[usize],
) -> Result<ExperimentReport> {
    if taus.is_empty() || ranks.is_empty() {
        return Err(Error::InvalidInput("need at least one tau and one rank".into()));
    }
    if let Some(&t) = taus.iter().find(|&&t| !(0.0..1.0).contains(&t)) {
        return Err(Error::InvalidInput(format!("tau must lie in [0, 1), got {t}")));
    }
    if epsilon.is_nan() || epsilon <= 0.0 {
        return Err(Error::InvalidInput(format!("epsilon must be positive, got {epsilon}")));
    }
    let mut rows = Vec::new();
    for &n in &config.ns {
        if let Some(&v) = ranks.iter().find(|&&v| !(1..=n + 1).contains(&v)) {
            return Err(Error::InvalidInput(format!("rank {v} outside 1..={}", n + 1)));
        }
        let id = format!("concentration-focal/n={n}");
        // Raw gaps |Pi(A(v)) - P(A(v))| per replicate and rank; thresholds
        // depend only on tau.
        let gaps: Vec<Vec<f64>> = (0..config.replicates)
            .into_par_iter()
            .map(|rep| {
                let mut rng = replicate_rng(config.seed, &id, rep as u64);
                let (partition, med) = build_med(config.generator.sample_n(n, &mut rng))?;
                ranks
                    .iter()
                    .map(|&v| {
                        let region = partition.region(v)?;
                        let pi = med.probability(region);
                        let p_true = config.generator.probability(region);
                        Ok((pi - p_true).abs())
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let reps = gaps.len();
        for &tau in taus {
            let threshold = epsilon / (n as f64).powf(tau);
            for (j, &v) in ranks.iter().enumerate() {
                let freq =
                    gaps.iter().filter(|g| g[j] > threshold).count() as f64 / reps as f64;
                let se = proportion_se(freq, reps);
                let exact = focal_gap_exceedance(n, v, tau, epsilon)?;
                rows.push(ReportRow {
                    cell: vec![kv("n", n), kv("tau", tau), kv("rank", v)],
                    estimate: freq,
                    std_error: se,
                    oracle: Some(exact),
                    pass: Some((freq - exact).abs() <= 3.0 * se),
                });
            }
        }
    }
    let mut echo = config.echo();
    echo.push(kv("epsilon", epsilon));
    Ok(ExperimentReport::new("concentration-focal", config.seed, echo, rows))
}
