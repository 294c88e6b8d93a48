//! End-to-end acceptance gates. Each test drives one headline guarantee at
//! full scale against a frozen oracle and prints a single PASS line with the
//! measured values (run with `-- --nocapture` to see them).

use std::time::{Duration, Instant};

use rand::Rng;

use credal::baselines::{binomial_gf_interval, binomial_gf_sample, DMapping, GfInterval};
use credal::belief::{belief, plausibility};
use credal::dist::Generator;
use credal::experiments::{
    run_concentration, run_longitudinal, run_validity, window_mass, ConcentrationParams,
    EvalPoint, ExperimentConfig, ReportRow,
};
use credal::interval::IntervalSet;
use credal::maxent::MaxEntropyDistribution;
use credal::partition::FocalPartition;
use credal::scores::{exact_type1_rate, transducer, NonconformityMeasure, Sample};
use credal::stats::{ks_one_sample, ks_two_sample};
use credal::stream::replicate_rng;
use statrs::distribution::{Beta, ContinuousCDF};

const SEED: u64 = 20_240_817;

fn cell(row: &ReportRow, key: &str) -> String {
    row.cell
        .iter()
        .find(|(k, _)| k == key)
        .map(|(_, v)| v.clone())
        .unwrap_or_else(|| panic!("row {:?} lacks cell key {key}", row.cell))
}

fn within_budget(start: Instant, budget: Duration, what: &str) -> f64 {
    let elapsed = start.elapsed();
    assert!(
        elapsed <= budget,
        "{what} took {elapsed:?}, over the {budget:?} budget"
    );
    elapsed.as_secs_f64()
}

/// Two observations {4, 5} under the mean-absolute-deviation score: the
/// plausibility curve takes exactly the values 1, 2/3, 1/3 on its three
/// plateaus, and the numeric boundary search localizes the rank changes at
/// 3, 4, 5, 6 to within 1e-8.
#[test]
fn worked_example_transducer_plateaus_and_boundaries() {
    let start = Instant::now();
    let sample = Sample::new(vec![4.0, 5.0]).unwrap();
    let measure = NonconformityMeasure::MeanAbsDeviation;

    for y in [4.1, 4.25, 4.5, 4.75, 4.9] {
        assert_eq!(transducer(&sample, &measure, y).unwrap(), 1.0, "inner plateau at {y}");
    }
    for y in [3.1, 3.5, 3.9, 5.1, 5.5, 5.9] {
        assert_eq!(
            transducer(&sample, &measure, y).unwrap(),
            2.0 / 3.0,
            "middle plateau at {y}"
        );
    }
    for y in [-20.0, 0.0, 1.5, 2.9, 6.1, 7.5, 100.0] {
        assert_eq!(
            transducer(&sample, &measure, y).unwrap(),
            1.0 / 3.0,
            "outer plateau at {y}"
        );
    }

    let partition = FocalPartition::numeric(&sample, &measure, (0.0, 9.0), 192, 9e-10).unwrap();
    let inner = partition.region(1).unwrap();
    assert_eq!(inner.pieces().len(), 1);
    let p = &inner.pieces()[0];
    assert!((p.lo - 4.0).abs() <= 1e-8 && (p.hi - 5.0).abs() <= 1e-8, "rank-1 region {inner}");
    let middle = partition.region(2).unwrap();
    assert_eq!(middle.pieces().len(), 2);
    for (piece, (lo, hi)) in middle.pieces().iter().zip([(3.0, 4.0), (5.0, 6.0)]) {
        assert!(
            (piece.lo - lo).abs() <= 1e-8 && (piece.hi - hi).abs() <= 1e-8,
            "rank-2 piece ({}, {}) vs ({lo}, {hi})",
            piece.lo,
            piece.hi
        );
    }

    let secs = within_budget(start, Duration::from_secs(1), "worked example");
    println!(
        "PASS worked example: plateaus exact at 1, 2/3, 1/3; boundaries within 1e-8 of \
         3, 4, 5, 6 ({secs:.2}s)"
    );
}

/// Type-1 error of the level-alpha prediction set, n = 100 Gaussian, 10,000
/// replicates: the empirical miss rate sits within 3 standard errors of the
/// exact rate floor(alpha(n+1))/(n+1) and never above alpha + 3 SE.
#[test]
fn type1_error_rate_matches_exact_law() {
    let start = Instant::now();
    let config = ExperimentConfig {
        ns: vec![100],
        replicates: 10_000,
        alphas: vec![0.05, 0.1, 0.2],
        seed: SEED,
        ..ExperimentConfig::default()
    };
    let report = run_validity(&config).unwrap();

    let mut shown = Vec::new();
    for alpha in [0.05, 0.1, 0.2] {
        let row = report
            .rows
            .iter()
            .find(|r| cell(r, "alpha") == alpha.to_string())
            .expect("alpha row");
        let exact = exact_type1_rate(100, alpha).unwrap();
        assert_eq!(row.oracle, Some(exact));
        let se = row.std_error.max(1e-12);
        assert!(
            (row.estimate - exact).abs() <= 3.0 * se,
            "alpha={alpha}: rate {} vs exact {exact} (se {se})",
            row.estimate
        );
        assert!(
            row.estimate <= alpha + 3.0 * se,
            "alpha={alpha}: rate {} above {alpha} + 3se",
            row.estimate
        );
        assert_eq!(row.pass, Some(true));
        shown.push(format!("{alpha}: {:.4} (exact {exact:.4})", row.estimate));
    }

    let secs = within_budget(start, Duration::from_secs(120), "validity study");
    println!("PASS type-1 rate: {} ({secs:.1}s)", shown.join(", "));
}

/// Focal-gap exceedance at n = 50, rank 10, tau = 0, epsilon = 0.005 over
/// 20,000 replicates: the empirical frequency lands within 0.01 of the
/// closed-form probability, whose value is pinned here before the run.
#[test]
fn focal_gap_frequency_matches_pinned_constant() {
    let start = Instant::now();
    const PINNED: f64 = 0.808583426554134;
    let closed_form = credal::experiments::focal_gap_exceedance(50, 10, 0.0, 0.005).unwrap();
    assert!(
        (closed_form - PINNED).abs() < 1e-12,
        "closed form drifted: {closed_form}"
    );

    let config = ExperimentConfig {
        ns: vec![50],
        replicates: 20_000,
        seed: SEED,
        ..ExperimentConfig::default()
    };
    let params = ConcentrationParams::Focal {
        taus: vec![0.0],
        epsilon: 0.005,
        ranks: vec![10],
    };
    let report = run_concentration(&config, &params).unwrap();
    assert_eq!(report.rows.len(), 1);
    let row = &report.rows[0];
    assert_eq!(row.oracle, Some(closed_form));
    assert!(
        (row.estimate - PINNED).abs() <= 0.01,
        "frequency {} vs pinned {PINNED}",
        row.estimate
    );

    let secs = within_budget(start, Duration::from_secs(120), "focal-gap study");
    println!(
        "PASS focal gap: frequency {:.6} vs exact {PINNED} (diff {:.1e}, {secs:.1}s)",
        row.estimate,
        (row.estimate - PINNED).abs()
    );
}

/// Scaled CDF-gap exceedance at the generator median, n in {500, 2000} and
/// gamma in {0, 0.25}, epsilon = 0.1, 2,000 replicates: every cell stays
/// below its sub-exponential bound plus 3 standard errors.
#[test]
fn cdf_gap_frequency_stays_under_subexponential_bound() {
    let start = Instant::now();
    let config = ExperimentConfig {
        ns: vec![500, 2000],
        replicates: 2_000,
        seed: SEED,
        ..ExperimentConfig::default()
    };
    let params = ConcentrationParams::Cdf {
        gammas: vec![0.0, 0.25],
        epsilon: 0.1,
        at: EvalPoint::Median,
    };
    let report = run_concentration(&config, &params).unwrap();
    assert_eq!(report.rows.len(), 4);

    let mut shown = Vec::new();
    for row in &report.rows {
        let bound = row.oracle.unwrap();
        assert!(
            row.estimate <= bound + 3.0 * row.std_error,
            "n={}, gamma={}: frequency {} above bound {bound}",
            cell(row, "n"),
            cell(row, "gamma"),
            row.estimate
        );
        assert_eq!(row.pass, Some(true));
        shown.push(format!(
            "n={} g={}: {:.4} <= {:.4}",
            cell(row, "n"),
            cell(row, "gamma"),
            row.estimate,
            bound
        ));
    }

    let secs = within_budget(start, Duration::from_secs(300), "cdf-gap study");
    println!("PASS cdf gap bound: {} ({secs:.1}s)", shown.join("; "));
}

/// 100 random partitions (both measures, n drawn from 2..=50): the
/// flat-per-region distribution gives every rank region probability exactly
/// 1/(n+1) to within 1e-10, and over 1,000 random interval events each,
/// belief <= flat-per-region probability <= plausibility.
#[test]
fn random_partitions_have_uniform_masses_and_ordered_probabilities() {
    let start = Instant::now();
    let gaussian = Generator::standard_gaussian();
    let mut worst_mass_gap = 0.0f64;
    let mut events_checked = 0usize;

    for idx in 0..100u64 {
        let mut rng = replicate_rng(SEED, "acceptance/partitions", idx);
        let n = 2 + (rng.gen::<u64>() % 49) as usize;
        let sample = Sample::new(gaussian.sample_n(n, &mut rng)).unwrap();

        let partition = if idx % 2 == 0 {
            FocalPartition::identity(&sample).unwrap()
        } else {
            // Empty ranks have two distinct causes with opposite remedies:
            // outermost ranks cut off by the truncation bounds want a wider
            // window, while the thin lowest-rank region near the bag mean
            // (width on the order of range/n^2) wants a finer grid. Escalate
            // both, keeping the grid spacing fixed as the window widens.
            let measure = NonconformityMeasure::MeanAbsDeviation;
            let range = sample.max() - sample.min();
            let base_spacing = range / 1_100f64.max(6.0 * (n as f64).powi(2));
            let mut found = None;
            'search: for factor in [1.0, 2.0, 4.0] {
                for refine in [1.0, 4.0, 16.0] {
                    let bounds =
                        (sample.min() - factor * range, sample.max() + factor * range);
                    let span = bounds.1 - bounds.0;
                    let grid = (span / (base_spacing / refine)).ceil() as usize + 1;
                    let p = FocalPartition::numeric(&sample, &measure, bounds, grid, 1e-10 * span)
                        .unwrap();
                    if p.empty_regions().is_empty() {
                        found = Some(p);
                        break 'search;
                    }
                }
            }
            found.unwrap_or_else(|| {
                panic!("partition {idx} (n={n}): empty ranks at every window and resolution")
            })
        };

        let med = MaxEntropyDistribution::from_partition(&partition).unwrap();
        let mass = 1.0 / (n + 1) as f64;
        for v in 1..=n + 1 {
            let gap = (med.probability(partition.region(v).unwrap()) - mass).abs();
            assert!(gap <= 1e-10, "partition {idx} (n={n}), rank {v}: mass off by {gap:.3e}");
            worst_mass_gap = worst_mass_gap.max(gap);
        }

        let (lo, hi) = partition.support();
        let span = hi - lo;
        for _ in 0..1_000 {
            let mut event = IntervalSet::empty();
            for _ in 0..rng.gen_range(1..=3usize) {
                let a = lo - 0.2 * span + rng.gen::<f64>() * 1.4 * span;
                let w = (0.01 + rng.gen::<f64>() * 0.6) * span;
                event = event.union(&IntervalSet::interval(a, false, a + w, false).unwrap());
            }
            let bel = belief(&partition, &event);
            let pl = plausibility(&partition, &event);
            let pi = med.probability(&event);
            assert!(
                bel <= pi + 1e-9 && pi <= pl + 1e-9,
                "partition {idx} (n={n}), event {event}: {bel} / {pi} / {pl}"
            );
            events_checked += 1;
        }
    }

    let secs = within_budget(start, Duration::from_secs(60), "random-partition suite");
    println!(
        "PASS credal ordering: 100 partitions, worst region-mass gap {worst_mass_gap:.1e}, \
         lower <= precise <= upper on {events_checked} events ({secs:.1}s)"
    );
}

/// Event study on lognormal(1,2) data with B = [0,2], 200 replicates: the
/// averaged flat-per-region probability of B settles within 0.05 of the true
/// 0.439 by n = 200, while the misspecified exponential-model baseline stays
/// below 0.25 at every n.
#[test]
fn event_probability_converges_while_misspecified_baseline_stays_biased() {
    let start = Instant::now();
    let config = ExperimentConfig {
        ns: vec![10, 50, 100, 200],
        replicates: 200,
        generator: "lognormal(1,2)".parse().unwrap(),
        event: "[0,2]".parse().unwrap(),
        seed: SEED,
        ..ExperimentConfig::default()
    };
    let report = run_longitudinal(&config).unwrap();

    let series_at = |n: usize, series: &str| -> f64 {
        report
            .rows
            .iter()
            .find(|r| cell(r, "n") == n.to_string() && cell(r, "series") == series)
            .unwrap_or_else(|| panic!("missing row n={n}, series={series}"))
            .estimate
    };

    let precise_200 = series_at(200, "precise");
    assert!(
        (precise_200 - 0.439).abs() < 0.05,
        "precise average at n=200 is {precise_200}"
    );
    let mut lomax_shown = Vec::new();
    for n in [10, 50, 100, 200] {
        let lomax = series_at(n, "lomax");
        assert!(lomax < 0.25, "baseline average at n={n} is {lomax}, expected < 0.25");
        lomax_shown.push(format!("n={n}: {lomax:.3}"));
    }

    let secs = within_budget(start, Duration::from_secs(600), "event study");
    println!(
        "PASS event study: precise(200) = {precise_200:.4} (true 0.439); baseline stuck at \
         {} ({secs:.1}s)",
        lomax_shown.join(", ")
    );
}

/// Binomial fiducial demo at (y=3, m=10): 50,000 boundary-mixture draws are
/// within KS distance 0.01 of beta(4,8), and the midpoint mapping returns
/// exact midpoints.
#[test]
fn boundary_mixture_draws_match_beta_law_and_midpoints_are_exact() {
    let start = Instant::now();
    let mut rng = replicate_rng(SEED, "acceptance/binomial", 0);
    let draws: Vec<f64> = (0..50_000)
        .map(|_| binomial_gf_sample(3, 10, DMapping::BoundaryMixture, &mut rng))
        .collect::<credal::Result<_>>()
        .unwrap();
    let beta = Beta::new(4.0, 8.0).unwrap();
    let d = ks_one_sample(&draws, |x| beta.cdf(x));
    assert!(d < 0.01, "KS distance to beta(4,8) is {d}");

    let fixed = GfInterval::new(0.2, 0.6, 3, 10).unwrap();
    assert_eq!(fixed.representative(DMapping::Midpoint, &mut rng), 0.4);
    for _ in 0..100 {
        let iv = binomial_gf_interval(3, 10, &mut rng).unwrap();
        let got = iv.representative(DMapping::Midpoint, &mut rng);
        assert_eq!(got, iv.lower + 0.5 * (iv.upper - iv.lower));
    }

    let secs = within_budget(start, Duration::from_secs(30), "binomial demo");
    println!("PASS binomial demo: KS to beta(4,8) = {d:.5} on 50,000 draws; midpoints exact ({secs:.1}s)");
}

/// Sampler fidelity. First, 50,000 two-stage draws against 50,000
/// inverse-CDF draws from the same flat-per-region distribution: two-sample
/// KS below 0.015. Second, the bimodal contrast: on a balanced n=100 sample
/// from N(-6,1) and N(6,1), the two-stage sampler leaves under 1% of its
/// draws in the between-mode window (-2,2) while the nested-union variant
/// puts over 5% there.
#[test]
fn two_stage_sampler_matches_inverse_cdf_and_separates_modes() {
    let start = Instant::now();

    let mut rng = replicate_rng(SEED, "acceptance/sampler-fidelity", 0);
    let sample = Sample::new(Generator::standard_gaussian().sample_n(100, &mut rng)).unwrap();
    let partition = FocalPartition::identity(&sample).unwrap();
    let med = MaxEntropyDistribution::from_partition(&partition).unwrap();
    let direct: Vec<f64> = (0..50_000).map(|_| med.sample(&mut rng)).collect();
    let inverse: Vec<f64> = (0..50_000)
        .map(|_| med.quantile(rng.gen()).unwrap())
        .collect();
    let d = ks_two_sample(&direct, &inverse);
    assert!(d < 0.015, "two-sample KS between samplers is {d}");

    let mut data_rng = replicate_rng(SEED, "acceptance/bimodal-data", 0);
    let left: Generator = "gaussian(-6,1)".parse().unwrap();
    let right: Generator = "gaussian(6,1)".parse().unwrap();
    let mut values = left.sample_n(50, &mut data_rng);
    values.extend(right.sample_n(50, &mut data_rng));
    let partition = FocalPartition::identity(&Sample::new(values).unwrap()).unwrap();
    let med = MaxEntropyDistribution::from_partition(&partition).unwrap();
    let cp = credal::maxent::CpAnalogueSampler::new(&partition).unwrap();
    let mut med_rng = replicate_rng(SEED, "acceptance/bimodal-med", 0);
    let mut cp_rng = replicate_rng(SEED, "acceptance/bimodal-cp", 0);
    let med_draws: Vec<f64> = (0..20_000).map(|_| med.sample(&mut med_rng)).collect();
    let cp_draws: Vec<f64> = (0..20_000).map(|_| cp.sample(&mut cp_rng)).collect();
    let med_mass = window_mass(&med_draws, -2.0, 2.0);
    let cp_mass = window_mass(&cp_draws, -2.0, 2.0);
    assert!(med_mass < 0.01, "two-stage between-mode mass {med_mass}");
    assert!(cp_mass > 0.05, "nested-union between-mode mass {cp_mass}");

    let secs = within_budget(start, Duration::from_secs(60), "sampler fidelity");
    println!(
        "PASS sampler fidelity: two-sample KS {d:.5}; between-mode mass {:.4} vs {:.4} ({secs:.1}s)",
        med_mass, cp_mass
    );
}
