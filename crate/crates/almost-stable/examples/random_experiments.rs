//! The experiment pipeline: seeded random instances, the auto solver ladder
//! (stability probe, short-list route, budgeted exact search, approximation
//! fallback), and aggregate statistics. Run with
//! `cargo run --example random_experiments`.

use almost_stable::bench::{rows_to_csv, run_experiment, summarize, BenchMode, ExperimentConfig};
use almost_stable::Kind;

fn main() {
    let mut config = ExperimentConfig::new(30, 4, Kind::Sri, BenchMode::Minimax);
    config.count = 25;
    config.base_seed = 99;
    config.budget_ms = 2_000;

    let (rows, failures) = run_experiment(&config).unwrap();
    assert!(failures.is_empty());

    println!("--- first rows of the CSV ---");
    for line in rows_to_csv(&rows).lines().take(6) {
        println!("{line}");
    }

    println!();
    println!("--- summary over {} instances ---", rows.len());
    print!("{}", summarize(&rows).unwrap());

    // The same pipeline under a maximum-cardinality requirement: stability
    // gets rarer because size takes priority.
    let mut config = ExperimentConfig::new(30, 4, Kind::Sri, BenchMode::MinimaxMax);
    config.count = 25;
    config.base_seed = 99;
    config.budget_ms = 2_000;
    let (rows, _) = run_experiment(&config).unwrap();
    println!();
    println!("--- same seeds, maximum cardinality required ---");
    print!("{}", summarize(&rows).unwrap());
}
