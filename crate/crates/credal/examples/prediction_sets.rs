//! Level-alpha prediction sets for the next observation, shown for both
//! built-in nonconformity measures on the same data.
//!
//! The set at level alpha is the union of the lowest-rank regions whose
//! plausibility still exceeds alpha; raising alpha can only shrink it.
//!
//! Run with: cargo run --example prediction_sets

use credal::partition::{prediction_set, FocalPartition};
use credal::scores::{NonconformityMeasure, Sample};
use credal::stream::replicate_rng;
use credal::Generator;

fn main() -> credal::Result<()> {
    let mut rng = replicate_rng(2024, "examples/prediction_sets", 0);
    let generator: Generator = "gaussian(10,2)".parse()?;
    let sample = Sample::new(generator.sample_n(24, &mut rng))?;
    println!(
        "n = {}, data range = [{:.3}, {:.3}]\n",
        sample.n(),
        sample.min(),
        sample.max()
    );

    for (name, measure) in [
        ("identity", NonconformityMeasure::Identity),
        ("mean deviation", NonconformityMeasure::MeanAbsDeviation),
    ] {
        let partition = FocalPartition::with_defaults(&sample, &measure)?;
        println!("{name} measure:");
        for alpha in [0.05, 0.2, 0.5] {
            let set = prediction_set(&sample, &measure, alpha, &partition)?;
            println!("  alpha = {alpha:<4} -> {set}  (length {:.3})", set.lebesgue());
        }
        println!();
    }

    // The identity-measure set at alpha is a single band between two order
    // statistics; the mean-deviation set is an interval around the mean.
    Ok(())
}
