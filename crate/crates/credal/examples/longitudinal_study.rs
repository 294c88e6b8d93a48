//! Desk-scale run of the event-probability study: heavy-tailed positive
//! data, the event "next value falls within [0, 2]", and a deliberately
//! misspecified exponential-model Bayesian baseline.
//!
//! The belief/plausibility envelope and the flat-per-region value close in
//! on the true probability as n grows; the baseline stays biased at every
//! n because no amount of data fixes a wrong likelihood.
//!
//! Run with: cargo run --example longitudinal_study

use credal::experiments::{run_longitudinal, ExperimentConfig, MeasureKind};

fn main() -> credal::Result<()> {
    let config = ExperimentConfig {
        ns: vec![10, 50, 100, 200],
        replicates: 100,
        generator: "lognormal(1,2)".parse()?,
        measure: MeasureKind::Identity,
        event: "[0,2]".parse()?,
        seed: 2024,
        ..ExperimentConfig::default()
    };
    let report = run_longitudinal(&config)?;

    let value = |n: usize, series: &str| {
        report
            .rows
            .iter()
            .find(|r| {
                r.cell.contains(&("n".to_string(), n.to_string()))
                    && r.cell.contains(&("series".to_string(), series.to_string()))
            })
            .map(|r| r.estimate)
            .unwrap()
    };

    println!("averages over {} replicates (true P(B) = {:.4}):\n", config.replicates, value(10, "truth"));
    println!("{:>5} {:>10} {:>10} {:>13} {:>10}", "n", "belief", "precise", "plausibility", "lomax");
    for &n in &config.ns {
        println!(
            "{n:>5} {:>10.4} {:>10.4} {:>13.4} {:>10.4}",
            value(n, "belief"),
            value(n, "precise"),
            value(n, "plausibility"),
            value(n, "lomax")
        );
    }
    Ok(())
}
