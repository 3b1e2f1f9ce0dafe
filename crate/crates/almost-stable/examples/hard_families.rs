//! Two constructive families show the problem's difficulty is real, not an
//! artifact of the solver: nested preference cycles on 3^k agents need
//! minimax exactly k, and a hub with k spokes needs k once a maximum
//! matching is required. Run with `cargo run --example hard_families`.

use almost_stable::blocking_report;
use almost_stable::constructions::{
    nested_cycles, nested_cycles_witness, pendant_hub, pendant_hub_witness,
};
use almost_stable::exact::solve_exact;
use almost_stable::{CardinalityConstraint, Objective};

fn main() {
    println!("nested preference cycles: n = 3^k agents, minimax optimum k");
    for k in 1..=4 {
        let inst = nested_cycles(k).unwrap();
        let witness = nested_cycles_witness(k).unwrap();
        let achieved = blocking_report(&inst, &witness).unwrap().max_bp;
        // Exact confirmation is only tractable for tiny k; the witness
        // certifies the upper bound at every size.
        let exact: String = if inst.n() <= 9 {
            solve_exact(&inst, Objective::Minimax, CardinalityConstraint::Any)
                .unwrap()
                .value
                .to_string()
        } else {
            "-".into()
        };
        println!(
            "  k={k}: n={:>3}, witness achieves {achieved}, exact optimum {exact}",
            inst.n()
        );
    }

    println!();
    println!("pendant hub: unique maximum matching leaves the hub in k blocking pairs");
    for k in 0..=6 {
        let inst = pendant_hub(k);
        let witness = pendant_hub_witness(k);
        let value = solve_exact(&inst, Objective::Minimax, CardinalityConstraint::MaxCard)
            .unwrap()
            .value;
        println!(
            "  k={k}: n={:>2}, optimum {value}, witness size {} of {}",
            inst.n(),
            witness.size(),
            inst.n() / 2
        );
        // Without the cardinality constraint the instance is easy:
        let free = solve_exact(&inst, Objective::Minimax, CardinalityConstraint::Any)
            .unwrap()
            .value;
        assert_eq!(free, 0, "dropping the constraint restores stability");
    }
}
