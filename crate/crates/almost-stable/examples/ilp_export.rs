//! For instances beyond the built-in solvers, the problem exports as a 0/1
//! program in LP format: x-variables pick the matching, b-variables are
//! forced to 1 on blocking pairs, and r caps every agent's blocking count.
//! Run with `cargo run --example ilp_export`.

use std::collections::HashMap;

use almost_stable::blocking_report;
use almost_stable::exact::for_each_matching;
use almost_stable::ilp::{build_model, check_solution, IlpMode};
use almost_stable::Instance;

fn main() {
    let inst =
        Instance::parse("kind: sri\nagents: 5\n1: 2 3\n2: 3 1\n3: 1 2\n4: 5\n5: 4\n").unwrap();

    let model = build_model(&inst, IlpMode::Minimax);
    println!("--- LP text (feed to any MILP solver) ---");
    print!("{}", model.to_lp_text());

    // No solver at hand? The checker validates any proposed assignment.
    // Here we brute-force the best one to show the round trip.
    let mut best: Option<(i64, HashMap<String, i64>)> = None;
    for_each_matching(&inst, |m| {
        let report = blocking_report(&inst, m).unwrap();
        let mut assignment: HashMap<String, i64> =
            model.variables().map(|v| (v.to_string(), 0)).collect();
        for (i, j) in m.pairs() {
            assignment.insert(format!("x_{}_{}", i + 1, j + 1), 1);
        }
        for &(i, j) in &report.blocking_pairs {
            assignment.insert(format!("b_{}_{}", i + 1, j + 1), 1);
        }
        assignment.insert("r".to_string(), i64::from(report.max_bp));
        if best
            .as_ref()
            .is_none_or(|(r, _)| i64::from(report.max_bp) < *r)
        {
            best = Some((i64::from(report.max_bp), assignment));
        }
    });
    let (r, assignment) = best.unwrap();

    let (feasible, violated) = check_solution(&model, &assignment).unwrap();
    println!("--- checking the optimal assignment ---");
    println!("objective r = {r}, feasible: {feasible}, violations: {violated:?}");

    // Understating r is caught immediately.
    let mut cheat = assignment.clone();
    cheat.insert("r".to_string(), r - 1);
    let (feasible, violated) = check_solution(&model, &cheat).unwrap();
    println!(
        "with r = {} instead: feasible: {feasible}, violated rows: {violated:?}",
        r - 1
    );
}
