//! Type-1 validity study: the proportion of replicates in which the
//! plausibility of the freshly drawn next observation falls at or below the
//! level alpha. Under exchangeable continuous data that proportion
//! concentrates on `floor(alpha (n+1)) / (n+1)`, which never exceeds alpha.
//! The study also records the full empirical distribution of the
//! plausibility value, whose exact law is uniform on
//! `{1/(n+1), ..., (n+1)/(n+1)}`.

use rayon::prelude::*;

use crate::error::Result;
use crate::experiments::config::ExperimentConfig;
use crate::experiments::report::{ExperimentReport, ReportRow};
use crate::scores::{exact_type1_rate, transducer, Sample};
use crate::stats::proportion_se;
use crate::stream::replicate_rng;

pub(crate) fn kv(k: &str, v: impl ToString) -> (String, String) {
    (k.to_string(), v.to_string())
}

pub fn run_validity(config: &ExperimentConfig) -> Result<ExperimentReport> {
    config.validate()?;
    let measure = config.measure.to_measure();
    let mut rows = Vec::new();
    for &n in &config.ns {
        let id = format!("validity/n={n}");
        let pvalues: Vec<f64> = (0..config.replicates)
            .into_par_iter()
            .map(|rep| {
                let mut rng = replicate_rng(config.seed, &id, rep as u64);
                let mut values = config.generator.sample_n(n + 1, &mut rng);
                let next = values.pop().unwrap();
                transducer(&Sample::new(values)?, &measure, next)
            })
            .collect::<Result<Vec<_>>>()?;
        let reps = pvalues.len();

        for &alpha in &config.alphas {
            let rate =
                pvalues.iter().filter(|&&f| f <= alpha).count() as f64 / reps as f64;
            let se = proportion_se(rate, reps);
            rows.push(ReportRow {
                cell: vec![kv("n", n), kv("alpha", alpha)],
                estimate: rate,
                std_error: se,
                oracle: Some(exact_type1_rate(n, alpha)?),
                pass: Some(rate <= alpha + 3.0 * se),
            });
        }

        // Empirical law of the plausibility value against the discrete
        // uniform oracle; the pass tolerance uses the oracle's own binomial
        // standard error so that zero-count cells are judged fairly.
        let mut counts = vec![0usize; n + 1];
        for &f in &pvalues {
            let k = (f * (n + 1) as f64).round() as usize;
            counts[k.clamp(1, n + 1) - 1] += 1;
        }
        let uniform = 1.0 / (n + 1) as f64;
        let se_oracle = (uniform * (1.0 - uniform) / reps as f64).sqrt();
        for (i, &c) in counts.iter().enumerate() {
            let freq = c as f64 / reps as f64;
            rows.push(ReportRow {
                cell: vec![kv("n", n), kv("pvalue_numerator", i + 1)],
                estimate: freq,
                std_error: proportion_se(freq, reps),
                oracle: Some(uniform),
                pass: Some((freq - uniform).abs() <= 3.0 * se_oracle),
            });
        }
    }
    Ok(ExperimentReport::new("validity", config.seed, config.echo(), rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiments::config::MeasureKind;

    fn desk_config() -> ExperimentConfig {
        ExperimentConfig {
            ns: vec![2],
            replicates: 3_000,
            alphas: vec![0.1, 0.5],
            seed: 7,
            ..ExperimentConfig::default()
        }
    }

    #[test]
    fn tiny_sample_matches_permutation_enumeration() {
        // With n=2 the plausibility value is uniform on {1/3, 2/3, 1}:
        // alpha=0.1 excludes nothing (rate 0), alpha=0.5 catches only 1/3.
        let report = run_validity(&desk_config()).unwrap();
        let rate = |alpha: &str| {
            report
                .rows
                .iter()
                .find(|r| r.cell.contains(&kv("alpha", alpha)))
                .unwrap()
        };
        let r = rate("0.1");
        assert_eq!(r.estimate, 0.0);
        assert_eq!(r.oracle, Some(0.0));
        assert_eq!(r.pass, Some(true));
        let r = rate("0.5");
        assert_eq!(r.oracle, Some(1.0 / 3.0));
        assert!((r.estimate - 1.0 / 3.0).abs() < 0.03);

        // The three pmf cells sit near 1/3 each and all pass.
        let pmf: Vec<_> = report
            .rows
            .iter()
            .filter(|r| r.cell.iter().any(|(k, _)| k == "pvalue_numerator"))
            .collect();
        assert_eq!(pmf.len(), 3);
        for r in pmf {
            assert!((r.estimate - 1.0 / 3.0).abs() < 0.03);
            assert_eq!(r.pass, Some(true));
        }
    }

    #[test]
    fn mean_deviation_measure_is_also_valid() {
        let config = ExperimentConfig {
            measure: MeasureKind::MeanDeviation,
            ns: vec![9],
            replicates: 2_000,
            alphas: vec![0.2],
            seed: 11,
            ..ExperimentConfig::default()
        };
        let report = run_validity(&config).unwrap();
        assert!(report.all_pass());
        // floor(0.2 * 10)/10 = 0.2 exactly.
        let r = &report.rows[0];
        assert_eq!(r.oracle, Some(0.2));
        assert!((r.estimate - 0.2).abs() < 0.03);
    }

    #[test]
    fn deterministic_given_seed() {
        let a = run_validity(&desk_config()).unwrap().to_csv();
        let b = run_validity(&desk_config()).unwrap().to_csv();
        assert_eq!(a, b);
        let mut other = desk_config();
        other.seed = 8;
        assert_ne!(a, run_validity(&other).unwrap().to_csv());
    }
}
