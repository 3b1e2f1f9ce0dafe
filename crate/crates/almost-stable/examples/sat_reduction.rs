//! The NP-hardness machinery is executable: a (2,2)-E3-SAT formula becomes a
//! matching instance whose almost-stable matchings encode satisfying
//! assignments, in both the roommates and the bipartite flavour. Run with
//! `cargo run --example sat_reduction`.

use almost_stable::blocking_report;
use almost_stable::constructions::{
    extract_assignment_sri, random_planted_formula, reduce_sat_to_smi, reduce_sat_to_sri,
    witness_from_assignment_smi, witness_from_assignment_sri, SatFormula,
};

fn main() {
    // Every variable occurs exactly twice unnegated and twice negated;
    // every clause has three literals.
    let formula = SatFormula::parse(
        "vars: 3\n\
         1 2 3\n\
         -1 -2 -3\n\
         1 -2 3\n\
         -1 2 -3\n",
    )
    .unwrap();
    let assignment = [true, false, false];
    assert!(formula.eval(&assignment));
    println!(
        "formula: {} variables, {} clauses",
        formula.num_vars,
        formula.clauses.len()
    );
    println!("satisfying assignment: {assignment:?}");

    // Roommates target: satisfiable iff some matching keeps every agent in
    // at most one blocking pair.
    let sri = reduce_sat_to_sri(&formula).unwrap();
    let witness = witness_from_assignment_sri(&sri, &assignment).unwrap();
    let report = blocking_report(&sri.instance, &witness).unwrap();
    println!(
        "roommates reduction: {} agents, witness max_bp = {}",
        sri.instance.n(),
        report.max_bp
    );
    let recovered = extract_assignment_sri(&sri, &witness).unwrap();
    println!("assignment recovered from the matching: {recovered:?}");
    assert_eq!(recovered, assignment);

    // Bipartite target: satisfiable iff some perfect matching has exactly
    // one blocking pair per gadget and no agent in two.
    let smi = reduce_sat_to_smi(&formula).unwrap();
    let witness = witness_from_assignment_smi(&smi, &assignment).unwrap();
    let report = blocking_report(&smi.instance, &witness).unwrap();
    println!(
        "bipartite reduction: {} agents, perfect witness with {} blocking pairs (max {} per agent)",
        smi.instance.n(),
        report.total_bp,
        report.max_bp
    );

    // The generator: random planted formulas for experiments at any size.
    let (random, planted) = random_planted_formula(9, 7).unwrap();
    println!(
        "random planted formula: {} variables, {} clauses, planted assignment satisfies: {}",
        random.num_vars,
        random.clauses.len(),
        random.eval(&planted)
    );
}
