//! The branch-and-bound solver optimises three almost-stability objectives —
//! fewest blocking pairs for the worst agent (minimax), fewest blocking
//! pairs overall, fewest blocked agents — optionally restricted to
//! maximum-cardinality matchings. Run with `cargo run --example exact_search`.

use almost_stable::exact::solve_exact;
use almost_stable::{CardinalityConstraint, Instance, Objective};

fn main() {
    // Two preference triangles joined by the edge {1, 4}: a classic case
    // where the three objectives pull in different directions.
    let inst = Instance::parse(
        "kind: sri\nagents: 6\n1: 2 3 4\n2: 3 1\n3: 1 2\n4: 5 6 1\n5: 6 4\n6: 4 5\n",
    )
    .unwrap();

    println!("{:<28} {:>6}  witness", "objective", "value");
    for objective in [Objective::Minimax, Objective::MinBp, Objective::MinBa] {
        for cardinality in [CardinalityConstraint::Any, CardinalityConstraint::MaxCard] {
            let result = solve_exact(&inst, objective, cardinality).unwrap();
            let pairs: Vec<(usize, usize)> = result
                .matching
                .pairs()
                .iter()
                .map(|&(a, b)| (a + 1, b + 1))
                .collect();
            println!(
                "{:<28} {:>6}  {:?}",
                format!("{objective}/{cardinality}"),
                result.value,
                pairs
            );
        }
    }

    // The same solver answers decision questions with a wall-clock budget.
    use almost_stable::exact::{decide_k_max_budgeted, DecideOutcome};
    use std::time::Duration;
    let outcome = decide_k_max_budgeted(
        &inst,
        0,
        CardinalityConstraint::Any,
        Duration::from_millis(500),
    )
    .unwrap();
    match outcome {
        DecideOutcome::Found(_) => println!("a stable matching exists"),
        DecideOutcome::Refuted => println!("no stable matching exists (as expected here)"),
        DecideOutcome::TimedOut => println!("budget exhausted"),
    }
}
