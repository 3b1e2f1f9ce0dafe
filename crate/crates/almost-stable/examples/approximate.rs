//! Deciding whether any agent can be kept below k blocking pairs is NP-hard,
//! but a balanced-cut construction guarantees every agent at most
//! ceil(degree/2) of them in polynomial time. Run with
//! `cargo run --example approximate`.

use almost_stable::bench::{self, solve_auto, BenchMode};
use almost_stable::localsearch::approx_minimax;
use almost_stable::{blocking_report, Kind};
use std::time::Duration;

fn main() {
    // A random roommates instance big enough that brute force is hopeless.
    let inst = bench::gen_random(40, 6, Kind::Sri, 2024).unwrap();

    let approx = approx_minimax(&inst).unwrap();
    let report = blocking_report(&inst, &approx.matching).unwrap();

    println!("n = {}, list length <= 6", inst.n());
    match &approx.trace {
        Some(trace) => println!(
            "no stable matching found directly; balanced cut converged after {} flips",
            trace.flips
        ),
        None => println!("instance turned out to be stably matchable"),
    }
    println!(
        "worst agent is in {} blocking pair(s); guarantee allows {}",
        report.max_bp,
        inst.degree((0..inst.n()).max_by_key(|&i| inst.degree(i)).unwrap())
            .div_ceil(2)
    );

    // Agents that actually hit their personal ceiling:
    let tight: Vec<usize> = (0..inst.n())
        .filter(|&i| report.per_agent[i] as usize == inst.degree(i).div_ceil(2))
        .map(|i| i + 1)
        .collect();
    println!("agents at their ceil(degree/2) bound: {tight:?}");

    // The full pipeline (probe for stability, try the exact solver within a
    // budget, fall back to the approximation) usually proves the optimum.
    let (best, proven) = solve_auto(&inst, BenchMode::Minimax, Duration::from_secs(5)).unwrap();
    let best_report = blocking_report(&inst, &best).unwrap();
    println!(
        "auto pipeline: max_bp = {} ({})",
        best_report.max_bp,
        if proven {
            "proven optimal"
        } else {
            "upper bound"
        }
    );
}
