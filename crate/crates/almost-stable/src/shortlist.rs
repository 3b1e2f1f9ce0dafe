//! Exact minimax solvers for instances whose preference lists have at most
//! two entries.
//!
//! With degree at most two the acceptability graph is a union of paths and
//! cycles, and two structural facts make the problem easy:
//!
//! - a matched agent is in at most one blocking pair (its only other
//!   neighbour), so only *unmatched* agents can be in two;
//! - starting from a maximum-cardinality matching, an unmatched agent `i`
//!   with two blocking partners can steal the one it prefers, `r`, from `r`'s
//!   partner. `r` strictly improves, the matching stays maximum, and the
//!   process provably terminates.
//!
//! [`rematch_to_minimax_one`] is that loop. [`minimax_deg2_sri`] runs it
//! after the roommates algorithm fails (minimising over all matchings);
//! [`minimax_maxcard_deg2_smi`] after deferred acceptance comes up short of
//! maximum cardinality (minimising over maximum matchings). Both return
//! matchings where no agent is in more than one blocking pair, which is
//! optimal whenever a zero-blocking solution was ruled out.

use crate::classic::{gale_shapley, irving, max_matching_deg2};
use crate::instance::ext;
use crate::{blocking_report, Error, Instance, Kind, Matching, Result};

fn check_deg2(inst: &Instance) -> Result<()> {
    for i in 0..inst.n() {
        if inst.degree(i) > 2 {
            return Err(Error::DegreeExceeded {
                agent: ext(i),
                len: inst.degree(i),
            });
        }
    }
    Ok(())
}

/// Minimax over all matchings of a degree-≤2 one-sided instance: a stable
/// matching when one exists, otherwise a maximum matching rematched until no
/// agent is in two blocking pairs (value exactly 1).
pub fn minimax_deg2_sri(inst: &Instance) -> Result<Matching> {
    check_deg2(inst)?;
    if let Some(m) = irving(inst) {
        return Ok(m);
    }
    rematch_to_minimax_one(inst, max_matching_deg2(inst)?)
}

/// Minimax over maximum-cardinality matchings of a degree-≤2 two-sided
/// instance. When some stable matching is already maximum it is returned
/// (value 0); otherwise a maximum matching is rematched (value exactly 1).
pub fn minimax_maxcard_deg2_smi(inst: &Instance, proposer_side: u8) -> Result<Matching> {
    if inst.kind() != Kind::Smi {
        return Err(Error::NotSmi);
    }
    check_deg2(inst)?;
    let stable = gale_shapley(inst, proposer_side)?;
    let maximum = max_matching_deg2(inst)?;
    if stable.size() == maximum.size() {
        return Ok(stable);
    }
    rematch_to_minimax_one(inst, maximum)
}

/// Rematch until no agent is in two blocking pairs (degree ≤ 2 required).
///
/// Unmatched agents sit on a stack and are revalidated when popped: an agent
/// blocking with both neighbours takes the neighbour it prefers, whose old
/// partner goes back on the stack. A matching that already conforms is
/// returned unchanged.
pub fn rematch_to_minimax_one(inst: &Instance, m: Matching) -> Result<Matching> {
    check_deg2(inst)?;
    // Re-validate the starting matching against the instance.
    blocking_report(inst, &m)?;

    let n = inst.n();
    let mut partner: Vec<Option<usize>> = (0..n).map(|i| m.partner(i)).collect();
    let mut stack: Vec<usize> = (0..n).filter(|&i| partner[i].is_none()).collect();
    let situ = |partner: &Vec<Option<usize>>, v: usize| -> u32 {
        partner[v].map_or(u32::MAX, |p| inst.rank_raw(v, p))
    };

    let mut steps = 0usize;
    while let Some(i) = stack.pop() {
        if partner[i].is_some() {
            continue; // got matched since being pushed
        }
        // i is unmatched, so {i, u} blocks iff u prefers i to its situation.
        let blockers: Vec<usize> = inst
            .prefs(i)
            .iter()
            .copied()
            .filter(|&u| inst.rank_raw(u, i) < situ(&partner, u))
            .collect();
        if blockers.len() < 2 {
            continue;
        }
        // Steal the blocking partner i prefers (the earlier list entry).
        // r being unmatched can only happen on non-maximum inputs; pairing
        // two unmatched agents is then strictly an improvement.
        let r = blockers[0];
        if let Some(k) = partner[r] {
            partner[k] = None;
            stack.push(k);
        }
        partner[r] = Some(i);
        partner[i] = Some(r);

        steps += 1;
        assert!(
            steps <= 8 * n * n + 16,
            "rematch loop failed to terminate; this is a bug"
        );
    }
    Ok(Matching::from_partner_unchecked(partner))
}
