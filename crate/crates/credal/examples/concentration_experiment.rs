//! Desk-scale concentration runs.
//!
//! The focal-gap study has an exact finite-sample oracle: for an interior
//! rank the region's true probability is a uniform spacing, so the chance
//! that the flat-per-region mass 1/(n+1) misses it by more than epsilon is
//! 1 - (1-b)^n + (1-c)^n in closed form. The CDF study only has an upper
//! bound, of sub-exponential shape.
//!
//! Run with: cargo run --example concentration_experiment

use credal::experiments::concentration::focal_gap_exceedance;
use credal::experiments::{
    run_concentration, ConcentrationParams, EvalPoint, ExperimentConfig,
};

fn main() -> credal::Result<()> {
    let config = ExperimentConfig {
        ns: vec![50],
        replicates: 4_000,
        seed: 2024,
        ..ExperimentConfig::default()
    };

    println!("focal-gap exceedance, n = 50, epsilon = 0.005, tau = 0:");
    let params = ConcentrationParams::Focal {
        taus: vec![0.0],
        epsilon: 0.005,
        ranks: vec![1, 10, 26, 51],
    };
    for row in run_concentration(&config, &params)?.rows {
        let rank = &row.cell.iter().find(|(k, _)| k == "rank").unwrap().1;
        println!(
            "  rank {rank:>2}: frequency = {:<8} exact = {:.6}",
            row.estimate,
            row.oracle.unwrap()
        );
    }
    println!(
        "  (closed form at rank 10: {})",
        focal_gap_exceedance(50, 10, 0.0, 0.005)?
    );

    println!("\nCDF exceedance at the median, epsilon = 0.1:");
    let config = ExperimentConfig { ns: vec![200, 800], replicates: 500, ..config };
    let params = ConcentrationParams::Cdf {
        gammas: vec![0.0, 0.25],
        epsilon: 0.1,
        at: EvalPoint::Median,
    };
    for row in run_concentration(&config, &params)?.rows {
        let cell: Vec<String> = row
            .cell
            .iter()
            .filter(|(k, _)| k != "y")
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        println!(
            "  {:<18} frequency = {:<8} bound = {:.6}  pass = {}",
            cell.join(" "),
            row.estimate,
            row.oracle.unwrap(),
            row.pass.unwrap()
        );
    }
    Ok(())
}
