//! Fiducial inference for a binomial proportion: the interval between two
//! order statistics of m uniforms, and five ways to collapse it to a point.
//!
//! The boundary-mixture collapse is special: its representative has exactly
//! the beta(y+1, m-y+1) law, which this demo verifies with a KS distance.
//!
//! Run with: cargo run --example binomial_demo

use credal::baselines::{binomial_gf_interval, binomial_gf_sample, DMapping};
use credal::stats::ks_one_sample;
use credal::stream::replicate_rng;
use statrs::distribution::{Beta, ContinuousCDF};

fn main() -> credal::Result<()> {
    let (y, m) = (3u64, 10u64);
    let mut rng = replicate_rng(2024, "examples/binomial_demo", 0);

    println!("a few fiducial intervals for y = {y} successes in m = {m} trials:");
    for _ in 0..4 {
        let iv = binomial_gf_interval(y, m, &mut rng)?;
        println!(
            "  ({:.4}, {:.4}]   midpoint representative = {:.4}",
            iv.lower,
            iv.upper,
            iv.representative(DMapping::Midpoint, &mut rng)
        );
    }

    let beta = Beta::new((y + 1) as f64, (m - y + 1) as f64).unwrap();
    println!("\nKS distance of 30,000 representatives to beta({}, {}):", y + 1, m - y + 1);
    for (idx, mapping) in [
        (1, DMapping::Uniform),
        (2, DMapping::Endpoints),
        (3, DMapping::Arcsine),
        (4, DMapping::BoundaryMixture),
        (5, DMapping::Midpoint),
    ] {
        let draws: Vec<f64> = (0..30_000)
            .map(|_| binomial_gf_sample(y, m, mapping, &mut rng))
            .collect::<credal::Result<_>>()?;
        let d = ks_one_sample(&draws, |x| beta.cdf(x));
        let note = if idx == 4 { "  <- exact beta law" } else { "" };
        println!("  mapping {idx} ({mapping:?}): {d:.4}{note}");
    }
    Ok(())
}
