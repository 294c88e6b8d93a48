//! Belief and plausibility as lower and upper probabilities of interval
//! events, including the conjugacy identity and what truncation does to it.
//!
//! Run with: cargo run --example belief_plausibility

use credal::belief::{check_conjugacy, imprecise_probability};
use credal::interval::IntervalSet;
use credal::partition::FocalPartition;
use credal::scores::{NonconformityMeasure, Sample};
use credal::stream::replicate_rng;
use credal::Generator;

fn main() -> credal::Result<()> {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();

    let mut rng = replicate_rng(2024, "examples/belief_plausibility", 0);
    let generator = Generator::standard_gaussian();
    let sample = Sample::new(generator.sample_n(40, &mut rng))?;
    let partition = FocalPartition::with_defaults(&sample, &NonconformityMeasure::Identity)?;
    let (lo, hi) = partition.support();
    println!("identity partition of n = {} points, support [{lo:.3}, {hi:.3}]\n", sample.n());

    for spec in ["[-0.5,0.5]", "(-inf,0]", "[-1,-0.2],[0.3,1.1]", "[2.5,inf)"] {
        let event: IntervalSet = spec.parse()?;
        let iv = imprecise_probability(&partition, &event);
        println!(
            "B = {spec:<22} belief = {:<22} plausibility = {:<22} width = {:.4}",
            iv.belief,
            iv.plausibility,
            iv.width()
        );
        // Lower probability of B and upper probability of its complement
        // are two views of the same counts.
        check_conjugacy(&partition, &event)?;
    }

    // Truncating away part of the line parks some mass on no region; the
    // library warns and the envelope loses that mass.
    println!("\nsame data, bounds clipped to the interquartile stretch:");
    let sorted = sample.sorted_values();
    let clipped = FocalPartition::numeric(
        &sample,
        &NonconformityMeasure::Identity,
        (sorted[10], sorted[30]),
        64 * (sample.n() + 1),
        1e-10 * (sorted[30] - sorted[10]),
    )?;
    println!("empty ranks after clipping: {:?}", clipped.empty_regions());
    let event: IntervalSet = "(-inf,inf)".parse()?;
    let iv = imprecise_probability(&clipped, &event);
    println!("belief of the whole line = {} (< 1: the clipped mass is gone)", iv.belief);
    Ok(())
}
