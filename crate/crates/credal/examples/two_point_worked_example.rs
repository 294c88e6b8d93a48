//! The smallest interesting case, worked end to end: two observations
//! {4, 5} under the mean-absolute-deviation measure, truncated to (0, 9).
//!
//! Every number printed here has a closed form: the plausibility curve
//! takes the values 1, 2/3, 1/3 on bands delimited by {3, 4, 5, 6}, the
//! three rank regions are (4,5), (3,4)∪(5,6), and (0,3)∪(6,9), and the
//! flat-per-region densities are 1/3, 1/6, 1/18.
//!
//! Run with: cargo run --example two_point_worked_example

use credal::interval::IntervalSet;
use credal::maxent::MaxEntropyDistribution;
use credal::partition::FocalPartition;
use credal::scores::{transducer, NonconformityMeasure, Sample};

fn main() -> credal::Result<()> {
    let sample = Sample::new(vec![4.0, 5.0])?;
    let measure = NonconformityMeasure::MeanAbsDeviation;

    println!("plausibility f(y) of candidate next observations:");
    for y in [1.0, 3.5, 4.5, 5.5, 8.0] {
        println!("  f({y:>3}) = {}", transducer(&sample, &measure, y)?);
    }

    let partition = FocalPartition::numeric(&sample, &measure, (0.0, 9.0), 192, 1e-9)?;
    println!("\nrank regions on (0, 9), each carrying mass 1/3:");
    for v in 1..=partition.num_regions() {
        println!("  A({v}) = {}", partition.region(v)?);
    }

    let event: IntervalSet = "[3.5,4.5]".parse()?;
    let bel = credal::belief(&partition, &event);
    let pl = credal::plausibility(&partition, &event);
    println!("\nevent B = {event}:");
    println!("  belief       = {bel}   (no region fits inside B)");
    println!("  plausibility = {pl}   (B touches ranks 1 and 2)");

    let med = MaxEntropyDistribution::from_partition(&partition)?;
    println!("\nflat-per-region densities:");
    for (lo, hi, d) in med.pieces() {
        println!("  ({lo:.6}, {hi:.6}) -> {d:.6}");
    }
    println!("  P(B) = {}", med.probability(&event));
    Ok(())
}
