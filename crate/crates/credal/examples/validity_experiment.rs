//! Desk-scale run of the type-1 validity study: the rate at which the next
//! observation's plausibility falls at or below alpha, against the exact
//! finite-sample value floor(alpha (n+1)) / (n+1).
//!
//! Run with: cargo run --example validity_experiment

use credal::experiments::{run_validity, ExperimentConfig};

fn main() -> credal::Result<()> {
    let config = ExperimentConfig {
        ns: vec![20, 100],
        replicates: 2_000,
        alphas: vec![0.05, 0.1, 0.2],
        seed: 2024,
        ..ExperimentConfig::default()
    };
    let report = run_validity(&config)?;

    // Print only the rate rows; the full report also carries the empirical
    // law of the plausibility value (101 extra rows per n).
    for row in report.rows.iter().filter(|r| r.cell.iter().any(|(k, _)| k == "alpha")) {
        let cell: Vec<String> = row.cell.iter().map(|(k, v)| format!("{k}={v}")).collect();
        println!(
            "{:<18} rate = {:<8} exact = {:.6}  pass = {}",
            cell.join(" "),
            row.estimate,
            row.oracle.unwrap(),
            row.pass.unwrap()
        );
    }
    println!("\nall cells pass: {}", report.all_pass());
    println!("(render the complete report with .to_csv() or .to_json())");
    Ok(())
}
