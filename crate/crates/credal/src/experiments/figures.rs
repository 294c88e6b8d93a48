//! Raw-data emitter for the sampling figures: one synthetic data set, large
//! samples from the flat-per-region distribution and from its nested-union
//! variant, shared histogram bins for both, and the plausibility curve over
//! a grid. Everything lands in plottable CSV files.

use std::fs;
use std::path::{Path, PathBuf};

use rand::Rng;

use crate::error::Result;
use crate::experiments::config::ExperimentConfig;
use crate::experiments::validity::kv;
use crate::maxent::{CpAnalogueSampler, MaxEntropyDistribution};
use crate::partition::FocalPartition;
use crate::scores::{transducer, Sample};
use crate::stream::replicate_rng;

#[derive(Debug, Clone)]
pub struct FiguresParams {
    /// Data-set size drawn from the configured generator.
    pub n: usize,
    /// Draws from each sampler.
    pub draws: usize,
    /// Shared histogram bin count.
    pub bins: usize,
    /// Grid resolution of the plausibility curve.
    pub grid_points: usize,
    pub out_dir: PathBuf,
}

impl Default for FiguresParams {
    fn default() -> Self {
        FiguresParams {
            n: 100,
            draws: 10_000,
            bins: 50,
            grid_points: 512,
            out_dir: PathBuf::from("figures-out"),
        }
    }
}

fn write_csv(
    path: &Path,
    header_kv: &[(String, String)],
    columns: &str,
    body: String,
) -> Result<()> {
    let mut out = String::from("# ");
    out.push_str(
        &header_kv
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(" "),
    );
    out.push('\n');
    out.push_str(columns);
    out.push('\n');
    out.push_str(&body);
    fs::write(path, out)?;
    Ok(())
}

/// Writes `data.csv`, `med_samples.csv`, `cp_samples.csv`, `histogram.csv`,
/// and `transducer.csv` into `params.out_dir`, returning the paths.
pub fn emit_figures(config: &ExperimentConfig, params: &FiguresParams) -> Result<Vec<PathBuf>> {
    config.validate()?;
    let measure = config.measure.to_measure();
    fs::create_dir_all(&params.out_dir)?;
    let header = {
        let mut h = vec![
            kv("experiment", "figures"),
            kv("seed", config.seed),
            kv("n", params.n),
        ];
        h.extend(config.echo());
        h
    };

    let mut rng = replicate_rng(config.seed, "figures/data", 0);
    let sample = Sample::new(config.generator.sample_n(params.n, &mut rng))?;
    let partition = FocalPartition::with_defaults(&sample, &measure)?;
    let med = MaxEntropyDistribution::from_partition(&partition)?;
    let cp = CpAnalogueSampler::new(&partition)?;

    let mut med_rng = replicate_rng(config.seed, "figures/med", 0);
    let med_draws: Vec<f64> = (0..params.draws).map(|_| med.sample(&mut med_rng)).collect();
    let mut cp_rng = replicate_rng(config.seed, "figures/cp", 0);
    let cp_draws: Vec<f64> = (0..params.draws).map(|_| cp.sample(&mut cp_rng)).collect();

    let mut paths = Vec::new();
    let mut emit = |name: &str, columns: &str, body: String| -> Result<()> {
        let path = params.out_dir.join(name);
        write_csv(&path, &header, columns, body)?;
        paths.push(path);
        Ok(())
    };

    let one_column = |values: &[f64]| {
        values.iter().map(|v| format!("{v}\n")).collect::<String>()
    };
    emit("data.csv", "value", one_column(sample.values()))?;
    emit("med_samples.csv", "value", one_column(&med_draws))?;
    emit("cp_samples.csv", "value", one_column(&cp_draws))?;

    // Shared equal-width bins over the truncation support.
    let (lo, hi) = partition.support();
    let width = (hi - lo) / params.bins as f64;
    let mut med_counts = vec![0usize; params.bins];
    let mut cp_counts = vec![0usize; params.bins];
    let bin_of = |y: f64| (((y - lo) / width) as usize).min(params.bins - 1);
    for &y in &med_draws {
        med_counts[bin_of(y)] += 1;
    }
    for &y in &cp_draws {
        cp_counts[bin_of(y)] += 1;
    }
    let body: String = (0..params.bins)
        .map(|b| {
            format!(
                "{},{},{},{}\n",
                lo + b as f64 * width,
                lo + (b + 1) as f64 * width,
                med_counts[b],
                cp_counts[b]
            )
        })
        .collect();
    emit("histogram.csv", "bin_lo,bin_hi,med_count,cp_count", body)?;

    let body: String = (0..params.grid_points)
        .map(|i| {
            let y = lo + (hi - lo) * i as f64 / (params.grid_points - 1) as f64;
            Ok(format!("{y},{}\n", transducer(&sample, &measure, y)?))
        })
        .collect::<Result<String>>()?;
    emit("transducer.csv", "y,plausibility", body)?;

    Ok(paths)
}

/// Fraction of draws falling inside `[lo, hi]`; used by the bimodal
/// contrast checks.
pub fn window_mass(draws: &[f64], lo: f64, hi: f64) -> f64 {
    let mut inside = 0usize;
    for &y in draws {
        if (lo..=hi).contains(&y) {
            inside += 1;
        }
    }
    inside as f64 / draws.len() as f64
}

/// Convenience used by tests and the demo example: draws from both
/// samplers without touching the filesystem.
pub fn paired_draws<R: Rng + ?Sized>(
    partition: &FocalPartition,
    draws: usize,
    med_rng: &mut R,
    cp_rng: &mut R,
) -> Result<(Vec<f64>, Vec<f64>)> {
    let med = MaxEntropyDistribution::from_partition(partition)?;
    let cp = CpAnalogueSampler::new(partition)?;
    let m = (0..draws).map(|_| med.sample(med_rng)).collect();
    let c = (0..draws).map(|_| cp.sample(cp_rng)).collect();
    Ok((m, c))
}
