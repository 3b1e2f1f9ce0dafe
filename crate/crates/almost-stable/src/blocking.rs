//! Blocking-pair analysis.
//!
//! An acceptable pair `{i, j}` *blocks* a matching when each of the two would
//! rather have the other than what the matching gives them — where being
//! unmatched is worse than any acceptable partner. The report aggregates the
//! per-agent view: `per_agent[i]` counts the blocking pairs containing `i`,
//! and `max_bp` (the largest such count) is the quantity the minimax solvers
//! in this crate minimise.

use crate::instance::{ext, UNRANKED};
use crate::{Error, Instance, Matching, Result};

/// Full blocking-pair accounting for one matching.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockingReport {
    /// Blocking pairs as (low, high), sorted ascending.
    pub blocking_pairs: Vec<(usize, usize)>,
    /// Number of blocking pairs each agent is part of.
    pub per_agent: Vec<u32>,
    /// Largest per-agent count: the minimax objective value of the matching.
    pub max_bp: u32,
    /// Total number of blocking pairs.
    pub total_bp: u32,
    /// Number of agents in at least one blocking pair.
    pub blocking_agents: u32,
    /// `total_bp == 0`.
    pub stable: bool,
}

/// Rank of i's current situation: the rank of its partner, or worse than
/// everything on the list when unmatched.
#[inline]
pub(crate) fn situation_rank(inst: &Instance, m: &Matching, i: usize) -> u32 {
    match m.partner(i) {
        Some(p) => inst.rank_raw(i, p),
        None => UNRANKED,
    }
}

/// Compute the blocking pairs of `m` on `inst`.
///
/// The matching is re-validated against the instance (`INVALID_MATCHING` on
/// any mismatch) so that reports on hand-built or parsed matchings can be
/// trusted. Runs in O(sum of list lengths).
pub fn blocking_report(inst: &Instance, m: &Matching) -> Result<BlockingReport> {
    if m.n() != inst.n() {
        return Err(Error::InvalidMatching {
            msg: format!("matching has {} agents, instance has {}", m.n(), inst.n()),
        });
    }
    for i in 0..inst.n() {
        if let Some(p) = m.partner(i) {
            if m.partner(p) != Some(i) {
                return Err(Error::InvalidMatching {
                    msg: format!("partner array is not symmetric at agent {}", ext(i)),
                });
            }
            if !inst.is_acceptable(i, p) {
                return Err(Error::InvalidMatching {
                    msg: format!("pair ({}, {}) is not mutually acceptable", ext(i), ext(p)),
                });
            }
        }
    }

    let n = inst.n();
    let mut blocking_pairs = Vec::new();
    let mut per_agent = vec![0u32; n];
    for i in 0..n {
        let my_rank = situation_rank(inst, m, i);
        for (pos, &j) in inst.prefs(i).iter().enumerate() {
            if (pos as u32) >= my_rank {
                break; // rest of the list is worse than i's situation
            }
            // i prefers j; count the pair once, from the lower id
            if i < j && inst.rank_raw(j, i) < situation_rank(inst, m, j) {
                blocking_pairs.push((i, j));
                per_agent[i] += 1;
                per_agent[j] += 1;
            }
        }
    }
    blocking_pairs.sort_unstable();

    let max_bp = per_agent.iter().copied().max().unwrap_or(0);
    let total_bp = blocking_pairs.len() as u32;
    let blocking_agents = per_agent.iter().filter(|&&c| c > 0).count() as u32;
    Ok(BlockingReport {
        blocking_pairs,
        per_agent,
        max_bp,
        total_bp,
        blocking_agents,
        stable: total_bp == 0,
    })
}
