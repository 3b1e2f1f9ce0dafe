//! Property tests for the structural invariants: report bookkeeping,
//! generator validity and determinism, text round-trips, classic-algorithm
//! stability, and CSV reproducibility.

use proptest::prelude::*;

use almost_stable::bench::{self, BenchMode, ExperimentConfig, CSV_HEADER};
use almost_stable::classic::{gale_shapley, irving};
use almost_stable::constructions::SatFormula;
use almost_stable::exact::for_each_matching;
use almost_stable::{blocking_report, Instance, Kind, Matching};

/// A random instance driven entirely by a seed, so shrinking stays readable.
fn arb_sri() -> impl Strategy<Value = Instance> {
    (4usize..=12, 1usize..=3, any::<u64>())
        .prop_map(|(n, l, seed)| bench::gen_random(n, l.min(n - 1), Kind::Sri, seed).unwrap())
}

fn arb_smi() -> impl Strategy<Value = Instance> {
    (2usize..=6, 1usize..=3, any::<u64>()).prop_map(|(half, l, seed)| {
        bench::gen_random(2 * half, l.min(half), Kind::Smi, seed).unwrap()
    })
}

fn arb_instance() -> impl Strategy<Value = Instance> {
    prop_oneof![arb_sri(), arb_smi()]
}

/// Any matching of the instance, picked by index among all of them.
fn matching_of(inst: &Instance, pick: u64) -> Matching {
    let mut count = 0u64;
    for_each_matching(inst, |_| count += 1);
    let target = pick % count;
    let mut found = None;
    let mut at = 0u64;
    for_each_matching(inst, |m| {
        if at == target {
            found = Some(m.clone());
        }
        at += 1;
    });
    found.unwrap()
}

proptest! {
    /// The report's aggregate fields all agree with its pair list.
    #[test]
    fn report_bookkeeping_is_consistent(inst in arb_instance(), pick in any::<u64>()) {
        let m = matching_of(&inst, pick);
        let rep = blocking_report(&inst, &m).unwrap();

        prop_assert_eq!(rep.total_bp as usize, rep.blocking_pairs.len());
        prop_assert_eq!(rep.max_bp, rep.per_agent.iter().copied().max().unwrap_or(0));
        prop_assert_eq!(
            rep.blocking_agents as usize,
            rep.per_agent.iter().filter(|&&c| c > 0).count()
        );
        prop_assert_eq!(rep.stable, rep.total_bp == 0);
        for (i, &count) in rep.per_agent.iter().enumerate() {
            let appearances = rep
                .blocking_pairs
                .iter()
                .filter(|&&(a, b)| a == i || b == i)
                .count();
            prop_assert_eq!(count as usize, appearances);
        }

        // Re-derive the blocking pairs naively: both acceptable, and each
        // side prefers the other over its current situation.
        let prefers = |i: usize, j: usize| -> bool {
            let r = inst.rank_of(i, j);
            match (r, m.partner(i)) {
                (None, _) => false,
                (Some(_), None) => true,
                (Some(r), Some(p)) => r < inst.rank_of(i, p).unwrap(),
            }
        };
        let mut naive = Vec::new();
        for i in 0..inst.n() {
            for j in i + 1..inst.n() {
                if m.partner(i) != Some(j) && prefers(i, j) && prefers(j, i) {
                    naive.push((i, j));
                }
            }
        }
        prop_assert_eq!(&naive, &rep.blocking_pairs);
    }

    /// Generated instances are well-formed and seed-deterministic.
    #[test]
    fn generator_is_valid_and_deterministic(
        n in 4usize..=20,
        l in 1usize..=4,
        seed in any::<u64>(),
        bipartite in any::<bool>(),
    ) {
        let (kind, n, l) = if bipartite {
            let n = n & !1; // even
            (Kind::Smi, n, l.min(n / 2))
        } else {
            (Kind::Sri, n, l.min(n - 1))
        };
        let inst = bench::gen_random(n, l, kind, seed).unwrap();
        prop_assert_eq!(inst.kind(), kind);
        prop_assert_eq!(inst.n(), n);

        for i in 0..n {
            let prefs = inst.prefs(i);
            // No self-ranking, no duplicates, mutual acceptability.
            let mut seen = std::collections::HashSet::new();
            for &j in prefs {
                prop_assert!(j != i);
                prop_assert!(seen.insert(j));
                prop_assert!(inst.is_acceptable(j, i), "acceptability must be mutual");
            }
            match kind {
                // The first half submits lists of length exactly l; the
                // second half's lists are induced. Every edge crosses.
                Kind::Smi => {
                    prop_assert!(inst.side(i).is_some(), "must be two-colourable");
                    if i < n / 2 {
                        prop_assert_eq!(prefs.len(), l);
                        for &j in prefs {
                            prop_assert!(j >= n / 2);
                        }
                    } else {
                        for &j in prefs {
                            prop_assert!(j < n / 2);
                        }
                    }
                }
                // Near-regular: nobody exceeds l.
                Kind::Sri => prop_assert!(prefs.len() <= l),
            }
        }

        let again = bench::gen_random(n, l, kind, seed).unwrap();
        prop_assert_eq!(inst.to_text(), again.to_text());
    }

    /// Instance text form round-trips exactly.
    #[test]
    fn instance_text_round_trips(inst in arb_instance()) {
        let text = inst.to_text();
        let back = Instance::parse(&text).unwrap();
        prop_assert_eq!(back.kind(), inst.kind());
        prop_assert_eq!(back.n(), inst.n());
        for i in 0..inst.n() {
            prop_assert_eq!(back.prefs(i), inst.prefs(i));
        }
        prop_assert_eq!(back.to_text(), text);
    }

    /// Matching text form round-trips through parse.
    #[test]
    fn matching_text_round_trips(inst in arb_instance(), pick in any::<u64>()) {
        let m = matching_of(&inst, pick);
        let text: String = m
            .pairs()
            .iter()
            .map(|(a, b)| format!("{} {}\n", a + 1, b + 1))
            .collect();
        let back = Matching::parse(&inst, &text).unwrap();
        prop_assert_eq!(back.pairs(), m.pairs());
    }

    /// Formula text form round-trips, preserving literal order.
    #[test]
    fn formula_text_round_trips(num_vars in 1usize..=4, seed in any::<u64>()) {
        let num_vars = num_vars * 3;
        let (formula, _) =
            almost_stable::constructions::random_planted_formula(num_vars, seed).unwrap();
        let back = SatFormula::parse(&formula.to_text()).unwrap();
        prop_assert_eq!(back.num_vars, formula.num_vars);
        prop_assert_eq!(back.clauses, formula.clauses);
    }

    /// The deferred-acceptance matching is stable, from either side.
    #[test]
    fn deferred_acceptance_is_stable(inst in arb_smi(), side in 0u8..=1) {
        let m = gale_shapley(&inst, side).unwrap();
        let rep = blocking_report(&inst, &m).unwrap();
        prop_assert!(rep.stable, "{}\n{:?}", inst.to_text(), rep.blocking_pairs);
    }

    /// When the roommates algorithm returns a matching, it is stable.
    #[test]
    fn roommates_algorithm_output_is_stable(inst in arb_sri()) {
        if let Some(m) = irving(&inst) {
            let rep = blocking_report(&inst, &m).unwrap();
            prop_assert!(rep.stable, "{}\n{:?}", inst.to_text(), rep.blocking_pairs);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    /// Batch runs are reproducible: same config, same rows — except the
    /// wall-clock column, which is environment noise.
    #[test]
    fn experiment_rows_are_deterministic_modulo_timing(seed in any::<u64>()) {
        let mut cfg = ExperimentConfig::new(10, 3, Kind::Sri, BenchMode::Minimax);
        cfg.count = 4;
        cfg.base_seed = seed;
        let (mut a, fa) = bench::run_experiment(&cfg).unwrap();
        let (mut b, fb) = bench::run_experiment(&cfg).unwrap();
        prop_assert!(fa.is_empty() && fb.is_empty());
        for row in a.iter_mut().chain(b.iter_mut()) {
            row.solve_ms = 0;
        }
        prop_assert_eq!(&a, &b);
        let csv = bench::rows_to_csv(&a);
        prop_assert_eq!(csv.lines().next().unwrap(), CSV_HEADER);
        // Every row has exactly one field per header column.
        let columns = CSV_HEADER.split(',').count();
        for line in csv.lines().skip(1) {
            prop_assert_eq!(line.split(',').count(), columns);
        }
    }
}
