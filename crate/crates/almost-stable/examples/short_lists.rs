//! When no preference list is longer than two, the acceptability graph is a
//! union of paths and cycles and the minimax problem is solvable exactly in
//! linear time. Run with `cargo run --example short_lists`.

use almost_stable::blocking_report;
use almost_stable::shortlist::{minimax_deg2_sri, minimax_maxcard_deg2_smi};
use almost_stable::Instance;

fn main() {
    // A preference triangle (1, 2, 3 chase each other) plus a happy pair.
    // No matching is stable, but one blocking pair per agent suffices.
    let inst =
        Instance::parse("kind: sri\nagents: 5\n1: 2 3\n2: 3 1\n3: 1 2\n4: 5\n5: 4\n").unwrap();
    let m = minimax_deg2_sri(&inst).unwrap();
    let report = blocking_report(&inst, &m).unwrap();
    println!("roommates triangle + pair");
    println!(
        "  matching: {:?}",
        m.pairs()
            .iter()
            .map(|(a, b)| (a + 1, b + 1))
            .collect::<Vec<_>>()
    );
    println!("  blocking pairs: {:?}", report.blocking_pairs);
    println!("  worst agent is in {} blocking pair(s)", report.max_bp);
    assert_eq!(report.max_bp, 1);

    // A two-sided path: 1 - 4 - 2 - 5 - 3. Insisting on a maximum matching
    // can force instability; the solver still keeps every agent at <= 1.
    let inst =
        Instance::parse("kind: smi\nagents: 6\n1: 4\n2: 4 5\n3: 5 6\n4: 2 1\n5: 2 3\n6: 3\n")
            .unwrap();
    let m = minimax_maxcard_deg2_smi(&inst, 0).unwrap();
    let report = blocking_report(&inst, &m).unwrap();
    println!("two-sided path, maximum cardinality required");
    println!(
        "  matching: {:?}",
        m.pairs()
            .iter()
            .map(|(a, b)| (a + 1, b + 1))
            .collect::<Vec<_>>()
    );
    println!(
        "  size {} (maximum), worst agent in {} blocking pair(s)",
        m.size(),
        report.max_bp
    );
}
