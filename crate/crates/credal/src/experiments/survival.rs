//! Survival-probability study: the longitudinal comparison swept over the
//! event family `[t, inf)` for `t` on an integer grid. Each replicate
//! builds its partition, flat-per-region distribution, and Bayesian
//! baseline once and evaluates every `t` against them.

use rayon::prelude::*;

use crate::baselines::LomaxPredictive;
use crate::belief::{belief, plausibility};
use crate::error::Result;
use crate::experiments::config::ExperimentConfig;
use crate::experiments::report::{ExperimentReport, ReportRow};
use crate::experiments::validity::kv;
use crate::interval::IntervalSet;
use crate::maxent::MaxEntropyDistribution;
use crate::partition::FocalPartition;
use crate::scores::Sample;
use crate::stats::mean_and_se;
use crate::stream::replicate_rng;

const SERIES: [&str; 4] = ["belief", "precise", "plausibility", "lomax"];

pub fn run_survival(config: &ExperimentConfig, t_max: usize) -> Result<ExperimentReport> {
    config.validate()?;
    let measure = config.measure.to_measure();
    let events: Vec<IntervalSet> = (0..=t_max)
        .map(|t| IntervalSet::interval(t as f64, false, f64::INFINITY, true))
        .collect::<Result<Vec<_>>>()?;
    let mut rows = Vec::new();
    for &n in &config.ns {
        let id = format!("survival/n={n}");
        // per replicate: values[t][series]
        let curves: Vec<Vec<[f64; 4]>> = (0..config.replicates)
            .into_par_iter()
            .map(|rep| {
                let mut rng = replicate_rng(config.seed, &id, rep as u64);
                let sample = Sample::new(config.generator.sample_n(n, &mut rng))?;
                let lomax =
                    LomaxPredictive::fit(&sample, config.prior_shape, config.prior_rate)?;
                let partition = FocalPartition::with_defaults(&sample, &measure)?;
                let med = MaxEntropyDistribution::from_partition(&partition)?;
                events
                    .iter()
                    .map(|ev| {
                        Ok([
                            belief(&partition, ev),
                            med.probability(ev),
                            plausibility(&partition, ev),
                            lomax.probability(ev)?,
                        ])
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;

        for t in 0..=t_max {
            let truth = 1.0 - config.generator.cdf(t as f64);
            for (j, name) in SERIES.iter().enumerate() {
                let series: Vec<f64> = curves.iter().map(|c| c[t][j]).collect();
                let (mean, se) = mean_and_se(&series);
                rows.push(ReportRow {
                    cell: vec![kv("n", n), kv("t", t), kv("series", name)],
                    estimate: mean,
                    std_error: se,
                    oracle: Some(truth),
                    pass: None,
                });
            }
            rows.push(ReportRow {
                cell: vec![kv("n", n), kv("t", t), kv("series", "truth")],
                estimate: truth,
                std_error: 0.0,
                oracle: Some(truth),
                pass: None,
            });
        }
    }
    Ok(ExperimentReport::new("survival", config.seed, config.echo(), rows))
}
