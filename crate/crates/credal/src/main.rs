//! Command-line front end: every subcommand is a thin wrapper over the
//! library, wiring flags into configs and writing reports.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use credal::baselines::{binomial_gf_sample, DMapping};
use credal::dist::Generator;
use credal::error::{Error, Result};
use credal::experiments::{
    emit_figures, run_concentration, run_longitudinal, run_survival, run_validity,
    ConcentrationParams, EvalPoint, ExperimentConfig, ExperimentReport, FiguresParams,
    MeasureKind, ReportFormat, ReportRow,
};
use credal::interval::IntervalSet;
use credal::maxent::{CpAnalogueSampler, MaxEntropyDistribution};
use credal::partition::FocalPartition;
use credal::scores::{transducer, Sample};
use credal::stats::ks_one_sample;
use credal::stream::replicate_rng;

#[derive(Parser)]
#[command(
    name = "credal",
    version,
    about = "Rank-based prediction inference: plausibility curves, belief envelopes, \
             prediction sets, maximum-entropy sampling, and seeded Monte-Carlo studies"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct OutputArgs {
    /// Write to this path instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output encoding.
    #[arg(long, default_value = "csv")]
    format: ReportFormat,
}

#[derive(Args)]
struct DataArgs {
    /// Explicit observations (comma-separated); overrides --dist/--n.
    #[arg(long, value_delimiter = ',')]
    data: Option<Vec<f64>>,
    /// Generator for synthetic observations.
    #[arg(long, default_value = "gaussian(0,1)")]
    dist: Generator,
    /// Synthetic sample size.
    #[arg(long, default_value_t = 100)]
    n: usize,
    /// Nonconformity measure.
    #[arg(long, default_value = "identity")]
    measure: MeasureKind,
    /// Master seed for all random streams.
    #[arg(long, default_value_t = 20240817)]
    seed: u64,
    /// Lower truncation bound (default: data minimum minus one range width,
    /// or the data minimum for the identity measure).
    #[arg(long)]
    lo: Option<f64>,
    /// Upper truncation bound (see --lo).
    #[arg(long)]
    hi: Option<f64>,
}

impl DataArgs {
    fn sample(&self) -> Result<Sample> {
        match &self.data {
            Some(values) => Sample::new(values.clone()),
            None => {
                let mut rng = replicate_rng(self.seed, "cli/data", 0);
                Sample::new(self.dist.sample_n(self.n, &mut rng))
            }
        }
    }

    fn partition(&self, sample: &Sample) -> Result<FocalPartition> {
        let measure = self.measure.to_measure();
        match (self.lo, self.hi) {
            (None, None) => FocalPartition::with_defaults(sample, &measure),
            (Some(lo), Some(hi)) => FocalPartition::numeric(
                sample,
                &measure,
                (lo, hi),
                credal::partition::default_grid_points(sample.n()),
                credal::partition::DEFAULT_REFINE_REL_TOL * (hi - lo),
            ),
            _ => Err(Error::InvalidInput(
                "--lo and --hi must be given together".into(),
            )),
        }
    }

    fn bounds(&self, sample: &Sample) -> Result<(f64, f64)> {
        match (self.lo, self.hi) {
            (None, None) => {
                let range = sample.max() - sample.min();
                Ok((sample.min() - range, sample.max() + range))
            }
            (Some(lo), Some(hi)) if lo < hi => Ok((lo, hi)),
            (Some(lo), Some(hi)) => {
                Err(Error::InvalidInput(format!("need lo < hi, got ({lo}, {hi})")))
            }
            _ => Err(Error::InvalidInput(
                "--lo and --hi must be given together".into(),
            )),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Type-1 error rates of the level-alpha prediction sets, with the
    /// exact finite-sample oracle.
    Validity {
        #[arg(long, value_delimiter = ',', default_value = "100")]
        n: Vec<usize>,
        #[arg(long, default_value_t = 10_000)]
        reps: usize,
        #[arg(long, value_delimiter = ',', default_value = "0.05,0.1,0.2")]
        alpha: Vec<f64>,
        #[arg(long, default_value = "gaussian(0,1)")]
        dist: Generator,
        #[arg(long, default_value = "identity")]
        measure: MeasureKind,
        #[arg(long, default_value_t = 20240817)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Concentration of the flat-per-region CDF (kind=cdf) or of the
    /// per-region masses against the exact spacing law (kind=focal).
    Concentration {
        #[arg(long, default_value = "focal")]
        kind: String,
        #[arg(long, value_delimiter = ',', default_value = "50")]
        n: Vec<usize>,
        #[arg(long, default_value_t = 20_000)]
        reps: usize,
        /// CDF scaling exponents, each in [0, 0.5). Only valid with
        /// kind=cdf; defaults to 0,0.25.
        #[arg(long, value_delimiter = ',')]
        gamma: Option<Vec<f64>>,
        /// Focal scaling exponents, each in [0, 1). Only valid with
        /// kind=focal; defaults to 0.
        #[arg(long, value_delimiter = ',')]
        tau: Option<Vec<f64>>,
        /// Exceedance threshold (default 0.1 for cdf, 0.005 for focal).
        #[arg(long)]
        epsilon: Option<f64>,
        /// Focal region indices to track. Only valid with kind=focal;
        /// defaults to 10.
        #[arg(long, value_delimiter = ',')]
        rank: Option<Vec<usize>>,
        /// CDF evaluation point (defaults to the generator median).
        /// Only valid with kind=cdf.
        #[arg(long)]
        y: Option<f64>,
        #[arg(long, default_value = "gaussian(0,1)")]
        dist: Generator,
        #[arg(long, default_value_t = 20240817)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Event-probability comparison across sample sizes: belief envelope,
    /// flat-per-region value, and the exponential-model Bayesian baseline.
    Longitudinal {
        #[arg(long, value_delimiter = ',', default_value = "10,50,100,200")]
        n: Vec<usize>,
        #[arg(long, default_value_t = 200)]
        reps: usize,
        #[arg(long, default_value = "lognormal(1,2)")]
        dist: Generator,
        #[arg(long, default_value = "identity")]
        measure: MeasureKind,
        /// Event as comma-separated interval literals, e.g. "[0,2]".
        #[arg(long, default_value = "[0,2]")]
        event: IntervalSet,
        #[arg(long, default_value_t = 1.0)]
        prior_shape: f64,
        #[arg(long, default_value_t = 1.0)]
        prior_rate: f64,
        #[arg(long, default_value_t = 20240817)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// The longitudinal comparison swept over survival events [t, inf).
    Survival {
        #[arg(long, value_delimiter = ',', default_value = "10,100")]
        n: Vec<usize>,
        #[arg(long, default_value_t = 200)]
        reps: usize,
        #[arg(long, default_value_t = 100)]
        t_max: usize,
        #[arg(long, default_value = "lognormal(1,2)")]
        dist: Generator,
        #[arg(long, default_value = "identity")]
        measure: MeasureKind,
        #[arg(long, default_value_t = 1.0)]
        prior_shape: f64,
        #[arg(long, default_value_t = 1.0)]
        prior_rate: f64,
        #[arg(long, default_value_t = 20240817)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Raw ingredients for the sampling figures: data set, draws from both
    /// samplers, shared histogram, and the plausibility curve.
    Figures {
        #[arg(long, default_value_t = 100)]
        n: usize,
        #[arg(long, default_value_t = 10_000)]
        draws: usize,
        #[arg(long, default_value_t = 50)]
        bins: usize,
        #[arg(long, default_value_t = 512)]
        grid: usize,
        #[arg(long, default_value = "gaussian(0,1)")]
        dist: Generator,
        #[arg(long, default_value = "identity")]
        measure: MeasureKind,
        #[arg(long, default_value_t = 20240817)]
        seed: u64,
        /// Directory receiving the CSV files.
        #[arg(long, default_value = "figures-out")]
        out_dir: PathBuf,
    },
    /// The plausibility curve y -> f(y) over a grid.
    Transducer {
        #[command(flatten)]
        data: DataArgs,
        #[arg(long, default_value_t = 512)]
        grid: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Belief and plausibility of one event, with the flat-per-region
    /// probability when it exists.
    Belief {
        #[command(flatten)]
        data: DataArgs,
        /// Event as comma-separated interval literals.
        #[arg(long)]
        event: IntervalSet,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Draws from the flat-per-region distribution (med) or its
    /// nested-union variant (cp).
    Sample {
        #[command(flatten)]
        data: DataArgs,
        #[arg(long, default_value = "med")]
        sampler: String,
        #[arg(long, default_value_t = 10_000)]
        draws: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Fiducial sampling for a binomial proportion: draws the interval and
    /// a representative under the chosen mapping, reporting the fit to the
    /// beta law.
    BinomialDemo {
        /// Observed success count.
        #[arg(long, default_value_t = 3)]
        y: u64,
        /// Number of trials.
        #[arg(long, default_value_t = 10)]
        m: u64,
        /// Representative mapping 1..=5: uniform, endpoints, arcsine,
        /// boundary-mixture, midpoint.
        #[arg(long, default_value_t = 4)]
        mapping: u8,
        #[arg(long, default_value_t = 50_000)]
        draws: usize,
        #[arg(long, default_value_t = 20240817)]
        seed: u64,
        /// Also write the raw draws to this path (one per line).
        #[arg(long)]
        draws_out: Option<PathBuf>,
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn kv(k: &str, v: impl ToString) -> (String, String) {
    (k.to_string(), v.to_string())
}

fn run() -> Result<()> {
    match Cli::parse().command {
        Command::Validity { n, reps, alpha, dist, measure, seed, output } => {
            let config = ExperimentConfig {
                ns: n,
                replicates: reps,
                alphas: alpha,
                generator: dist,
                measure,
                seed,
                ..ExperimentConfig::default()
            };
            run_validity(&config)?.write(output.out.as_deref(), output.format)
        }
        Command::Concentration {
            kind, n, reps, gamma, tau, epsilon, rank, y, dist, seed, output,
        } => {
            let config = ExperimentConfig {
                ns: n,
                replicates: reps,
                generator: dist,
                measure: MeasureKind::Identity,
                seed,
                ..ExperimentConfig::default()
            };
            let params = match kind.as_str() {
                "cdf" => {
                    if tau.is_some() || rank.is_some() {
                        return Err(Error::InvalidInput(
                            "--tau and --rank only apply to --kind focal".into(),
                        ));
                    }
                    ConcentrationParams::Cdf {
                        gammas: gamma.unwrap_or_else(|| vec![0.0, 0.25]),
                        epsilon: epsilon.unwrap_or(0.1),
                        at: y.map_or(EvalPoint::Median, EvalPoint::Value),
                    }
                }
                "focal" => {
                    if gamma.is_some() || y.is_some() {
                        return Err(Error::InvalidInput(
                            "--gamma and --y only apply to --kind cdf".into(),
                        ));
                    }
                    ConcentrationParams::Focal {
                        taus: tau.unwrap_or_else(|| vec![0.0]),
                        epsilon: epsilon.unwrap_or(0.005),
                        ranks: rank.unwrap_or_else(|| vec![10]),
                    }
                }
                other => {
                    return Err(Error::InvalidInput(format!(
                        "unknown concentration kind {other:?}; expected cdf or focal"
                    )))
                }
            };
            run_concentration(&config, &params)?.write(output.out.as_deref(), output.format)
        }
        Command::Longitudinal {
            n, reps, dist, measure, event, prior_shape, prior_rate, seed, output,
        } => {
            let config = ExperimentConfig {
                ns: n,
                replicates: reps,
                generator: dist,
                measure,
                event,
                prior_shape,
                prior_rate,
                seed,
                ..ExperimentConfig::default()
            };
            run_longitudinal(&config)?.write(output.out.as_deref(), output.format)
        }
        Command::Survival {
            n, reps, t_max, dist, measure, prior_shape, prior_rate, seed, output,
        } => {
            let config = ExperimentConfig {
                ns: n,
                replicates: reps,
                generator: dist,
                measure,
                prior_shape,
                prior_rate,
                seed,
                ..ExperimentConfig::default()
            };
            run_survival(&config, t_max)?.write(output.out.as_deref(), output.format)
        }
        Command::Figures { n, draws, bins, grid, dist, measure, seed, out_dir } => {
            let config = ExperimentConfig {
                generator: dist,
                measure,
                seed,
                ..ExperimentConfig::default()
            };
            let params = FiguresParams { n, draws, bins, grid_points: grid, out_dir };
            let paths = emit_figures(&config, &params)?;
            for p in paths {
                println!("{}", p.display());
            }
            Ok(())
        }
        Command::Transducer { data, grid, output } => {
            if grid < 2 {
                return Err(Error::InvalidInput("need at least 2 grid points".into()));
            }
            let sample = data.sample()?;
            let measure = data.measure.to_measure();
            let (lo, hi) = data.bounds(&sample)?;
            let rows = (0..grid)
                .map(|i| {
                    let y = lo + (hi - lo) * i as f64 / (grid - 1) as f64;
                    Ok(ReportRow {
                        cell: vec![kv("y", y)],
                        estimate: transducer(&sample, &measure, y)?,
                        std_error: 0.0,
                        oracle: None,
                        pass: None,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let report = ExperimentReport::new(
                "transducer",
                data.seed,
                vec![kv("measure", data.measure), kv("n", sample.n())],
                rows,
            );
            report.write(output.out.as_deref(), output.format)
        }
        Command::Belief { data, event, output } => {
            let sample = data.sample()?;
            let partition = data.partition(&sample)?;
            let bel = credal::belief::belief(&partition, &event);
            let pl = credal::belief::plausibility(&partition, &event);
            let mut rows = vec![
                ReportRow {
                    cell: vec![kv("quantity", "belief")],
                    estimate: bel,
                    std_error: 0.0,
                    oracle: None,
                    pass: None,
                },
                ReportRow {
                    cell: vec![kv("quantity", "plausibility")],
                    estimate: pl,
                    std_error: 0.0,
                    oracle: None,
                    pass: None,
                },
            ];
            if let Ok(med) = MaxEntropyDistribution::from_partition(&partition) {
                rows.insert(
                    1,
                    ReportRow {
                        cell: vec![kv("quantity", "precise")],
                        estimate: med.probability(&event),
                        std_error: 0.0,
                        oracle: None,
                        pass: None,
                    },
                );
            }
            let report = ExperimentReport::new(
                "belief",
                data.seed,
                vec![
                    kv("event", &event),
                    kv("measure", data.measure),
                    kv("n", sample.n()),
                ],
                rows,
            );
            report.write(output.out.as_deref(), output.format)
        }
        Command::Sample { data, sampler, draws, output } => {
            let sample = data.sample()?;
            let partition = data.partition(&sample)?;
            let mut rng = replicate_rng(data.seed, &format!("cli/sample/{sampler}"), 0);
            let values: Vec<f64> = match sampler.as_str() {
                "med" => {
                    let med = MaxEntropyDistribution::from_partition(&partition)?;
                    (0..draws).map(|_| med.sample(&mut rng)).collect()
                }
                "cp" => {
                    let cp = CpAnalogueSampler::new(&partition)?;
                    (0..draws).map(|_| cp.sample(&mut rng)).collect()
                }
                other => {
                    return Err(Error::InvalidInput(format!(
                        "unknown sampler {other:?}; expected med or cp"
                    )))
                }
            };
            match output.format {
                ReportFormat::Csv => {
                    let mut body = String::from("value\n");
                    for v in &values {
                        body.push_str(&format!("{v}\n"));
                    }
                    match output.out {
                        Some(p) => std::fs::write(p, body)?,
                        None => print!("{body}"),
                    }
                }
                ReportFormat::Json => {
                    let body = serde_json::to_string(&values)?;
                    match output.out {
                        Some(p) => std::fs::write(p, body)?,
                        None => println!("{body}"),
                    }
                }
            }
            Ok(())
        }
        Command::BinomialDemo { y, m, mapping, draws, seed, draws_out, output } => {
            if draws == 0 {
                return Err(Error::InvalidInput("need at least one draw".into()));
            }
            let mapping = DMapping::from_index(mapping)?;
            let mut rng = replicate_rng(seed, "cli/binomial-demo", 0);
            let values: Vec<f64> = (0..draws)
                .map(|_| binomial_gf_sample(y, m, mapping, &mut rng))
                .collect::<Result<Vec<_>>>()?;
            if let Some(p) = draws_out {
                let mut body = String::from("value\n");
                for v in &values {
                    body.push_str(&format!("{v}\n"));
                }
                std::fs::write(p, body)?;
            }
            let beta = statrs::distribution::Beta::new((y + 1) as f64, (m - y + 1) as f64)
                .map_err(|e| Error::InvalidInput(e.to_string()))?;
            let ks = ks_one_sample(&values, |x| {
                statrs::distribution::ContinuousCDF::cdf(&beta, x)
            });
            let mean = values.iter().sum::<f64>() / values.len() as f64;
            let report = ExperimentReport::new(
                "binomial-demo",
                seed,
                vec![
                    kv("y", y),
                    kv("m", m),
                    kv("mapping", format!("{mapping:?}")),
                    kv("draws", draws),
                ],
                vec![
                    ReportRow {
                        cell: vec![kv("quantity", "ks_to_beta")],
                        estimate: ks,
                        std_error: 0.0,
                        oracle: Some(0.0),
                        pass: None,
                    },
                    ReportRow {
                        cell: vec![kv("quantity", "mean")],
                        estimate: mean,
                        std_error: 0.0,
                        oracle: Some((y + 1) as f64 / (m + 2) as f64),
                        pass: None,
                    },
                ],
            );
            report.write(output.out.as_deref(), output.format)
        }
    }
}

fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
