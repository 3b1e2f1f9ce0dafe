//! Approximation by balanced cuts: split the agents into two sides so that
//! every agent has at least half of its list on the other side, then run
//! deferred acceptance across the cut.
//!
//! The cut is found by local search. Starting from everyone on side 0,
//! any agent with more than half of its list on its own side flips sides.
//! Each flip raises the number of crossing acceptable pairs (the potential
//! [`potential`]) by at least one, so the search stops after at most
//! `pairs` flips. The crossing pairs then form a two-sided sub-instance;
//! a stable matching of it has no crossing blocking pair, leaving each
//! agent `i` at most `⌈degree(i)/2⌉` same-side pairs that can block.
//!
//! [`approx_minimax`] first tries for a fully stable matching and only
//! falls back to the cut when none exists.

use crate::classic::{gale_shapley, irving};
use crate::instance::ext;
use crate::{Error, Instance, Kind, Matching, Result};

/// A two-sided split of the agents with, for each agent, the cached number
/// of its acceptable partners on the opposite side.
#[derive(Debug, Clone)]
pub struct CutState {
    pub(crate) side: Vec<u8>,
    pub(crate) cross: Vec<u32>,
}

impl CutState {
    /// Builds a cut from explicit side assignments, computing the crossing
    /// counts from the instance.
    pub fn from_sides(inst: &Instance, side: Vec<u8>) -> Result<CutState> {
        if side.len() != inst.n() {
            return Err(Error::BadConfig {
                msg: format!(
                    "cut has {} side entries for {} agents",
                    side.len(),
                    inst.n()
                ),
            });
        }
        if let Some(i) = side.iter().position(|&s| s > 1) {
            return Err(Error::BadConfig {
                msg: format!("agent {}: side must be 0 or 1, got {}", ext(i), side[i]),
            });
        }
        let cross = (0..inst.n())
            .map(|i| {
                inst.prefs(i)
                    .iter()
                    .filter(|&&j| side[j] != side[i])
                    .count() as u32
            })
            .collect();
        Ok(CutState { side, cross })
    }

    /// Which side agent `i` is on (0 or 1).
    pub fn side(&self, i: usize) -> u8 {
        self.side[i]
    }

    /// Cached number of acceptable partners of `i` on the other side.
    pub fn cross(&self, i: usize) -> u32 {
        self.cross[i]
    }

    /// True when the acceptable pair `{i, j}` crosses the cut.
    pub fn is_crossing(&self, i: usize, j: usize) -> bool {
        self.side[i] != self.side[j]
    }

    /// True when every agent has at least half of its list on the other side.
    pub fn is_balanced(&self, inst: &Instance) -> bool {
        (0..inst.n()).all(|i| inst.degree(i) as u32 <= 2 * self.cross[i])
    }

    /// Checks the cached crossing counts against the instance.
    pub fn verify(&self, inst: &Instance) -> Result<()> {
        if self.side.len() != inst.n() || self.cross.len() != inst.n() {
            return Err(Error::BadConfig {
                msg: format!(
                    "cut has {} side / {} cross entries for {} agents",
                    self.side.len(),
                    self.cross.len(),
                    inst.n()
                ),
            });
        }
        for i in 0..inst.n() {
            let actual = inst
                .prefs(i)
                .iter()
                .filter(|&&j| self.side[j] != self.side[i])
                .count() as u32;
            if actual != self.cross[i] {
                return Err(Error::InconsistentCut {
                    agent: ext(i),
                    cached: self.cross[i],
                    actual,
                });
            }
        }
        Ok(())
    }
}

/// Number of acceptable pairs crossing the cut (each agent's crossing count
/// sums every crossing pair twice).
pub fn potential(cut: &CutState) -> u64 {
    cut.cross.iter().map(|&c| u64::from(c)).sum::<u64>() / 2
}

/// What the local search did: flip count and the potential before the first
/// flip and after each one (strictly increasing).
#[derive(Debug, Clone)]
pub struct CutTrace {
    pub flips: u32,
    pub potentials: Vec<u64>,
}

/// Local search for a balanced cut: from everyone on side 0, flip any agent
/// with more than half its list on its own side until none remains.
///
/// Agents wait on a stack (pushed in increasing id order, lazily
/// revalidated) so the procedure is deterministic. Isolated agents never
/// qualify and are left on side 0.
pub fn balanced_cut(inst: &Instance) -> (CutState, CutTrace) {
    let n = inst.n();
    let mut side = vec![0u8; n];
    let mut cross = vec![0u32; n];
    let mut in_q = vec![false; n];
    let mut stack: Vec<usize> = Vec::new();
    for i in 0..n {
        if inst.degree(i) as u32 > 2 * cross[i] {
            in_q[i] = true;
            stack.push(i);
        }
    }

    let mut phi = 0u64;
    let mut potentials = vec![phi];
    let mut flips = 0u32;
    while let Some(i) = stack.pop() {
        if !in_q[i] {
            continue; // superseded entry
        }
        in_q[i] = false;
        let d = inst.degree(i) as u32;
        if d <= 2 * cross[i] {
            continue;
        }
        let old = side[i];
        side[i] = 1 - old;
        for &j in inst.prefs(i) {
            if side[j] == old {
                // j just gained a crossing partner.
                cross[j] += 1;
                if in_q[j] && inst.degree(j) as u32 <= 2 * cross[j] {
                    in_q[j] = false;
                }
            } else {
                // j was across from i and no longer is.
                cross[j] -= 1;
                if !in_q[j] && inst.degree(j) as u32 > 2 * cross[j] {
                    in_q[j] = true;
                    stack.push(j);
                }
            }
        }
        // The flip turns i's d - cross same-side partners into crossing
        // ones and vice versa, a strict gain while d > 2 * cross.
        phi += u64::from(d - 2 * cross[i]);
        cross[i] = d - cross[i];
        flips += 1;
        potentials.push(phi);
    }
    (CutState { side, cross }, CutTrace { flips, potentials })
}

/// The two-sided instance formed by the crossing acceptable pairs, with
/// every list kept in its original order.
pub fn crossing_subinstance(inst: &Instance, cut: &CutState) -> Result<Instance> {
    if cut.side.len() != inst.n() {
        return Err(Error::BadConfig {
            msg: format!(
                "cut has {} side entries for {} agents",
                cut.side.len(),
                inst.n()
            ),
        });
    }
    let prefs = (0..inst.n())
        .map(|i| {
            inst.prefs(i)
                .iter()
                .copied()
                .filter(|&j| cut.side[j] != cut.side[i])
                .collect()
        })
        .collect();
    Instance::from_prefs(Kind::Smi, prefs)
}

/// Outcome of [`approx_minimax`]: the matching, plus the cut and flip trace
/// when the fallback ran (`None` when a stable matching was found directly).
#[derive(Debug, Clone)]
pub struct ApproxResult {
    pub matching: Matching,
    pub cut: Option<CutState>,
    pub trace: Option<CutTrace>,
}

/// Polynomial-time approximation: a stable matching when one exists,
/// otherwise a matching in which each agent `i` is in at most
/// `⌈degree(i)/2⌉` blocking pairs.
pub fn approx_minimax(inst: &Instance) -> Result<ApproxResult> {
    if let Some(matching) = irving(inst) {
        return Ok(ApproxResult {
            matching,
            cut: None,
            trace: None,
        });
    }
    let (cut, trace) = balanced_cut(inst);
    debug_assert!(cut.is_balanced(inst));
    let sub = crossing_subinstance(inst, &cut)?;
    let matching = gale_shapley(&sub, 0)?;
    Ok(ApproxResult {
        matching,
        cut: Some(cut),
        trace: Some(trace),
    })
}
