//! Exact solvers: optimal matchings under the minimax, total-blocking-pairs,
//! and blocking-agents objectives, with optional cardinality constraints.
//!
//! Two independent routes are provided on purpose:
//!
//! - [`enumerate_optimum`] walks *every* matching with no pruning and scores
//!   each one with [`blocking_report`]. It is slow and obviously correct,
//!   which makes it the reference the clever solvers are tested against.
//! - [`solve_exact`] / [`decide_k_max`] run a branch-and-bound over agents in
//!   increasing id order. At each node the lowest undecided agent is either
//!   paired with one of its still-available partners or left unmatched for
//!   good. Once both endpoints of an acceptable pair are decided, whether the
//!   pair blocks is settled forever, so certain blocking counts only grow
//!   along a branch and support sound pruning; a cardinality budget prunes
//!   branches that cannot reach the required matching size.
//!
//! Both searches branch pairs in ascending partner order with "stay
//! unmatched" last, so the first optimum they encounter is the
//! lexicographically smallest optimal witness, deterministically.
//!
//! Search size is guarded: instances above the cap (default
//! [`DEFAULT_CAP`]) are refused with `TOO_LARGE` unless a higher cap is
//! passed explicitly. [`decide_k_max_budgeted`] swaps the cap for a wall
//! clock budget, which is what the experiment harness uses at larger sizes.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use crate::classic::max_matching_size;
use crate::instance::UNRANKED;
use crate::{blocking_report, Error, Instance, Matching, Result};

/// Objectives over the blocking-pair structure of a matching.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Objective {
    /// Minimise the largest number of blocking pairs any agent is in.
    Minimax,
    /// Minimise the total number of blocking pairs.
    MinBp,
    /// Minimise the number of agents in at least one blocking pair.
    MinBa,
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Objective::Minimax => "minimax",
            Objective::MinBp => "minbp",
            Objective::MinBa => "minba",
        })
    }
}

impl FromStr for Objective {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "minimax" => Ok(Objective::Minimax),
            "minbp" => Ok(Objective::MinBp),
            "minba" => Ok(Objective::MinBa),
            other => Err(format!(
                "unknown objective {other:?} (expected minimax, minbp, or minba)"
            )),
        }
    }
}

/// Cardinality side constraint on the matchings considered.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CardinalityConstraint {
    /// Any matching.
    Any,
    /// Only maximum-cardinality matchings.
    MaxCard,
    /// Only perfect matchings (`INFEASIBLE` if none exists).
    Perfect,
}

impl fmt::Display for CardinalityConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CardinalityConstraint::Any => "any",
            CardinalityConstraint::MaxCard => "max",
            CardinalityConstraint::Perfect => "perfect",
        })
    }
}

impl FromStr for CardinalityConstraint {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "any" => Ok(CardinalityConstraint::Any),
            "max" => Ok(CardinalityConstraint::MaxCard),
            "perfect" => Ok(CardinalityConstraint::Perfect),
            other => Err(format!(
                "unknown cardinality {other:?} (expected any, max, or perfect)"
            )),
        }
    }
}

/// Default agent-count cap for the exact searches.
pub const DEFAULT_CAP: usize = 24;

/// Result of an exact optimisation.
#[derive(Debug, Clone)]
pub struct ExactResult {
    /// Optimal objective value.
    pub value: u32,
    /// Lexicographically smallest optimal witness.
    pub matching: Matching,
    /// Search nodes explored (diagnostic).
    pub nodes: u64,
}

/// Result of a budgeted decision search.
#[derive(Debug, Clone)]
pub enum DecideOutcome {
    /// A matching with per-agent blocking count at most k.
    Found(Matching),
    /// Proof that no such matching exists.
    Refuted,
    /// Budget exhausted before either answer.
    TimedOut,
}

/// Resolve the cardinality constraint to a required size (None = free).
fn required_size(inst: &Instance, card: CardinalityConstraint) -> Result<Option<usize>> {
    match card {
        CardinalityConstraint::Any => Ok(None),
        CardinalityConstraint::MaxCard => Ok(Some(max_matching_size(inst))),
        CardinalityConstraint::Perfect => {
            let n = inst.n();
            if !n.is_multiple_of(2) {
                return Err(Error::Infeasible {
                    msg: format!("no perfect matching: odd number of agents ({n})"),
                });
            }
            let mm = max_matching_size(inst);
            if mm < n / 2 {
                return Err(Error::Infeasible {
                    msg: format!(
                        "no perfect matching: maximum matching has {mm} < {} pairs",
                        n / 2
                    ),
                });
            }
            Ok(Some(n / 2))
        }
    }
}

/// Optimal value and witness under the default size cap.
pub fn solve_exact(
    inst: &Instance,
    obj: Objective,
    card: CardinalityConstraint,
) -> Result<ExactResult> {
    solve_exact_capped(inst, obj, card, DEFAULT_CAP)
}

/// Optimal value and witness; refuses instances with more than `cap` agents.
pub fn solve_exact_capped(
    inst: &Instance,
    obj: Objective,
    card: CardinalityConstraint,
    cap: usize,
) -> Result<ExactResult> {
    if inst.n() > cap {
        return Err(Error::TooLarge { n: inst.n(), cap });
    }
    let required = required_size(inst, card)?;
    let mut s = Search::new(inst, required, Mode::Optimize(obj));
    s.dfs(0);
    let partner = s
        .best
        .expect("search space always contains a feasible leaf");
    Ok(ExactResult {
        value: s.incumbent,
        matching: to_matching(partner),
        nodes: s.nodes,
    })
}

/// Does a matching with per-agent blocking count ≤ k exist (under the
/// cardinality constraint)? Returns a deterministic witness if so.
pub fn decide_k_max(
    inst: &Instance,
    k: u32,
    card: CardinalityConstraint,
) -> Result<Option<Matching>> {
    decide_k_max_capped(inst, k, card, DEFAULT_CAP)
}

/// [`decide_k_max`] with an explicit size cap.
pub fn decide_k_max_capped(
    inst: &Instance,
    k: u32,
    card: CardinalityConstraint,
    cap: usize,
) -> Result<Option<Matching>> {
    if inst.n() > cap {
        return Err(Error::TooLarge { n: inst.n(), cap });
    }
    match decide_inner(inst, k, card, None)? {
        DecideOutcome::Found(m) => Ok(Some(m)),
        DecideOutcome::Refuted => Ok(None),
        DecideOutcome::TimedOut => unreachable!("no deadline was set"),
    }
}

/// [`decide_k_max`] with a wall-clock budget instead of a size cap; used for
/// large instances where refusal is not an option but unbounded search is.
pub fn decide_k_max_budgeted(
    inst: &Instance,
    k: u32,
    card: CardinalityConstraint,
    budget: Duration,
) -> Result<DecideOutcome> {
    decide_inner(inst, k, card, Some(Instant::now() + budget))
}

fn decide_inner(
    inst: &Instance,
    k: u32,
    card: CardinalityConstraint,
    deadline: Option<Instant>,
) -> Result<DecideOutcome> {
    let required = required_size(inst, card)?;
    let mut s = Search::new(inst, required, Mode::Decide(k));
    s.deadline = deadline;
    s.dfs(0);
    if let Some(partner) = s.found.take() {
        let m = to_matching(partner);
        debug_assert!(blocking_report(inst, &m).unwrap().max_bp <= k);
        Ok(DecideOutcome::Found(m))
    } else if s.timed_out {
        Ok(DecideOutcome::TimedOut)
    } else {
        Ok(DecideOutcome::Refuted)
    }
}

const NOPART: usize = usize::MAX;

fn to_matching(partner: Vec<usize>) -> Matching {
    Matching::from_partner_unchecked(
        partner
            .iter()
            .map(|&p| if p == NOPART { None } else { Some(p) })
            .collect(),
    )
}

#[derive(Clone, Copy)]
enum Mode {
    Optimize(Objective),
    Decide(u32),
}

/// Undo-log entries for backtracking.
enum Op {
    /// A pair became certainly blocking; both endpoints were incremented.
    Block(usize, usize),
    /// threat_bound[agent] was lowered; restore the old value.
    Threat(usize, u32),
    /// avail_deg[agent] was decremented.
    Avail(usize),
    /// A dead (zero-availability) agent left the undecided set by skipping.
    SkipWasDead,
}

struct Search<'a> {
    inst: &'a Instance,
    n: usize,
    mode: Mode,
    /// Required matching size (None = unconstrained).
    required: Option<usize>,
    /// Max agents that may end up unmatched (usize::MAX when unconstrained).
    skip_budget: usize,

    partner: Vec<usize>,
    /// Certain blocking-pair count per agent (both endpoints decided).
    cert: Vec<u32>,
    cert_total: u32,
    cert_agents: u32,
    cur_max_cert: u32,
    matched: usize,
    decided: usize,
    skips: usize,
    /// Available (undecided) neighbours per undecided agent.
    avail_deg: Vec<u32>,
    /// Undecided agents with no available neighbour left: forced future skips.
    dead_undecided: usize,
    /// Decide mode: agent must end matched strictly better than this rank.
    threat_bound: Vec<u32>,

    undo: Vec<Op>,
    incumbent: u32,
    best: Option<Vec<usize>>,
    found: Option<Vec<usize>>,
    nodes: u64,
    deadline: Option<Instant>,
    timed_out: bool,
}

impl<'a> Search<'a> {
    fn new(inst: &'a Instance, required: Option<usize>, mode: Mode) -> Search<'a> {
        let n = inst.n();
        let dead = (0..n).filter(|&i| inst.degree(i) == 0).count();
        Search {
            inst,
            n,
            mode,
            required,
            skip_budget: required.map_or(usize::MAX, |r| n - 2 * r),
            partner: vec![NOPART; n],
            cert: vec![0; n],
            cert_total: 0,
            cert_agents: 0,
            cur_max_cert: 0,
            matched: 0,
            decided: 0,
            skips: 0,
            avail_deg: (0..n).map(|i| inst.degree(i) as u32).collect(),
            dead_undecided: dead,
            threat_bound: vec![UNRANKED; n],
            undo: Vec::new(),
            incumbent: u32::MAX,
            best: None,
            found: None,
            nodes: 0,
            deadline: None,
            timed_out: false,
        }
    }

    #[inline]
    fn decided_at(&self, v: usize, cur: usize) -> bool {
        v <= cur || self.partner[v] != NOPART
    }

    #[inline]
    fn situ(&self, v: usize) -> u32 {
        match self.partner[v] {
            NOPART => UNRANKED,
            p => self.inst.rank_raw(v, p),
        }
    }

    /// Record that pair {a, b} certainly blocks. Returns true if the search
    /// must prune (a bound was exceeded).
    fn add_block(&mut self, a: usize, b: usize) -> bool {
        for &e in &[a, b] {
            if self.cert[e] == 0 {
                self.cert_agents += 1;
            }
            self.cert[e] += 1;
            self.cur_max_cert = self.cur_max_cert.max(self.cert[e]);
        }
        self.cert_total += 1;
        self.undo.push(Op::Block(a, b));
        match self.mode {
            Mode::Decide(k) => self.cert[a] > k || self.cert[b] > k,
            Mode::Optimize(_) => false,
        }
    }

    /// Decide-mode propagation: once a decided agent has used up its whole
    /// blocking allowance, every undecided agent it still prefers to its
    /// partner must end up matched strictly better than it. Returns true to
    /// prune (some such agent cannot possibly comply).
    fn tighten_from(&mut self, w: usize, cur: usize) -> bool {
        let my = self.situ(w);
        let prefs: &[usize] = self.inst.prefs(w);
        for (pos, &u) in prefs.iter().enumerate() {
            if pos as u32 >= my {
                break;
            }
            if self.decided_at(u, cur) {
                continue;
            }
            let r = self.inst.rank_raw(u, w);
            if r < self.threat_bound[u] {
                self.undo.push(Op::Threat(u, self.threat_bound[u]));
                self.threat_bound[u] = r;
                // u must beat w: check a usable candidate still exists
                let has_candidate = self.inst.prefs(u)[..r as usize]
                    .iter()
                    .any(|&v| !self.decided_at(v, cur));
                if !has_candidate {
                    return true;
                }
            }
        }
        false
    }

    /// Settle all pairs between newly decided `w` and already decided agents.
    /// Returns true if the search must prune.
    fn settle(&mut self, w: usize, cur: usize) -> bool {
        let my = self.situ(w);
        for (pos, &u) in self.inst.prefs(w).iter().enumerate() {
            if (pos as u32) >= my {
                break; // w prefers its situation to the rest of its list
            }
            if !self.decided_at(u, cur) || Some(u) == self.partner_of(w) {
                continue;
            }
            // {w, u} blocks: both prefer each other to their situations.
            if self.inst.rank_raw(u, w) < self.situ(u) {
                if self.add_block(w, u) {
                    return true;
                }
                if let Mode::Decide(k) = self.mode {
                    if self.cert[u] == k && self.tighten_from(u, cur) {
                        return true;
                    }
                }
            }
        }
        if let Mode::Decide(k) = self.mode {
            if self.cert[w] == k && self.tighten_from(w, cur) {
                return true;
            }
        }
        false
    }

    #[inline]
    fn partner_of(&self, v: usize) -> Option<usize> {
        match self.partner[v] {
            NOPART => None,
            p => Some(p),
        }
    }

    /// Availability bookkeeping when `w` leaves the undecided set. `other` is
    /// the agent matched together with `w` in the same step, if any.
    fn consume(&mut self, w: usize, other: Option<usize>, cur: usize) {
        for &u in self.inst.prefs(w) {
            if Some(u) == other || self.decided_at(u, cur) {
                continue;
            }
            self.avail_deg[u] -= 1;
            if self.avail_deg[u] == 0 {
                self.dead_undecided += 1;
            }
            self.undo.push(Op::Avail(u));
        }
    }

    fn rewind(&mut self, mark: usize) {
        while self.undo.len() > mark {
            match self.undo.pop().unwrap() {
                Op::Block(a, b) => {
                    for &e in &[a, b] {
                        self.cert[e] -= 1;
                        if self.cert[e] == 0 {
                            self.cert_agents -= 1;
                        }
                    }
                    self.cert_total -= 1;
                }
                Op::Threat(u, old) => self.threat_bound[u] = old,
                Op::Avail(u) => {
                    if self.avail_deg[u] == 0 {
                        self.dead_undecided -= 1;
                    }
                    self.avail_deg[u] += 1;
                }
                Op::SkipWasDead => self.dead_undecided += 1,
            }
        }
    }

    /// Bound checks shared by both branch kinds; true = prune.
    fn bounds_exceeded(&self) -> bool {
        if let Some(req) = self.required {
            if self.skips + self.dead_undecided > self.skip_budget {
                return true;
            }
            let live = self.n - self.decided - self.dead_undecided;
            if self.matched + live / 2 < req {
                return true;
            }
        }
        if let Mode::Optimize(obj) = self.mode {
            let lb = match obj {
                Objective::Minimax => self.cur_max_cert,
                Objective::MinBp => self.cert_total,
                Objective::MinBa => self.cert_agents,
            };
            if lb >= self.incumbent {
                return true;
            }
        }
        false
    }

    /// DFS from the lowest undecided agent; returns true to stop the search.
    fn dfs(&mut self, mut cur: usize) -> bool {
        self.nodes += 1;
        if self.nodes & 1023 == 0 {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    self.timed_out = true;
                    return true;
                }
            }
        }
        while cur < self.n && self.partner[cur] != NOPART {
            cur += 1;
        }
        if cur == self.n {
            return self.leaf();
        }
        let i = cur;

        // Candidate partners for i. In optimize mode they are sorted
        // ascending so leaves arrive in lexicographic pair-list order and the
        // first optimum is the smallest witness; in decide mode preference
        // order finds low-blocking witnesses sooner, and partners either side
        // of a tight agent's allowance are filtered out up front.
        let mut ordered: Vec<usize> = match self.mode {
            Mode::Optimize(_) => {
                let mut v: Vec<usize> = self
                    .inst
                    .prefs(i)
                    .iter()
                    .copied()
                    .filter(|&j| j > i && self.partner[j] == NOPART)
                    .collect();
                v.sort_unstable();
                v
            }
            Mode::Decide(_) => self
                .inst
                .prefs(i)
                .iter()
                .copied()
                .filter(|&j| {
                    j > i
                        && self.partner[j] == NOPART
                        && self.inst.rank_raw(i, j) < self.threat_bound[i]
                        && self.inst.rank_raw(j, i) < self.threat_bound[j]
                })
                .collect(),
        };

        for j in ordered.drain(..) {
            let mark = self.undo.len();
            let save_max = self.cur_max_cert;
            self.partner[i] = j;
            self.partner[j] = i;
            self.matched += 1;
            self.decided += 2;
            let mut prune = self.settle(i, i);
            if !prune {
                prune = self.settle(j, i);
            }
            if !prune && self.required.is_some() {
                self.consume(i, Some(j), i);
                self.consume(j, Some(i), i);
            }
            if !prune {
                prune = self.bounds_exceeded();
            }
            if !prune && self.dfs(cur + 1) {
                return true;
            }
            self.rewind(mark);
            self.cur_max_cert = save_max;
            self.partner[i] = NOPART;
            self.partner[j] = NOPART;
            self.matched -= 1;
            self.decided -= 2;
        }

        // Leave i unmatched for good.
        let skip_banned = self.skips >= self.skip_budget
            || (matches!(self.mode, Mode::Decide(_)) && self.threat_bound[i] != UNRANKED);
        if !skip_banned {
            let mark = self.undo.len();
            let save_max = self.cur_max_cert;
            self.decided += 1;
            self.skips += 1;
            if self.required.is_some() && self.avail_deg[i] == 0 {
                self.dead_undecided -= 1;
                self.undo.push(Op::SkipWasDead);
            }
            let mut prune = self.settle(i, i);
            if !prune && self.required.is_some() {
                self.consume(i, None, i);
            }
            if !prune {
                prune = self.bounds_exceeded();
            }
            if !prune && self.dfs(cur + 1) {
                return true;
            }
            self.rewind(mark);
            self.cur_max_cert = save_max;
            self.decided -= 1;
            self.skips -= 1;
        }
        false
    }

    fn leaf(&mut self) -> bool {
        match self.mode {
            Mode::Decide(_) => {
                self.found = Some(self.partner.clone());
                true
            }
            Mode::Optimize(obj) => {
                let val = match obj {
                    Objective::Minimax => self.cur_max_cert,
                    Objective::MinBp => self.cert_total,
                    Objective::MinBa => self.cert_agents,
                };
                if val < self.incumbent {
                    self.incumbent = val;
                    self.best = Some(self.partner.clone());
                    if val == 0 {
                        return true; // cannot improve on stability
                    }
                }
                false
            }
        }
    }
}

/// Result of the naive enumeration.
#[derive(Debug, Clone)]
pub struct NaiveOptimum {
    pub value: u32,
    /// Lexicographically smallest optimal witness.
    pub matching: Matching,
    /// Matchings scored (diagnostic).
    pub matchings_seen: u64,
}

/// Visit every matching of the instance exactly once, in lexicographic
/// pair-list order. Exposed so tests and verification code can do their own
/// brute-force accounting.
pub fn for_each_matching<F: FnMut(&Matching)>(inst: &Instance, mut f: F) {
    let mut partner: Vec<Option<usize>> = vec![None; inst.n()];
    fn rec<F: FnMut(&Matching)>(
        inst: &Instance,
        mut cur: usize,
        partner: &mut Vec<Option<usize>>,
        f: &mut F,
    ) {
        let n = inst.n();
        while cur < n && partner[cur].is_some() {
            cur += 1;
        }
        if cur == n {
            f(&Matching::from_partner_unchecked(partner.clone()));
            return;
        }
        let mut cands: Vec<usize> = inst
            .prefs(cur)
            .iter()
            .copied()
            .filter(|&j| j > cur && partner[j].is_none())
            .collect();
        cands.sort_unstable();
        for j in cands {
            partner[cur] = Some(j);
            partner[j] = Some(cur);
            rec(inst, cur + 1, partner, f);
            partner[cur] = None;
            partner[j] = None;
        }
        rec(inst, cur + 1, partner, f);
    }
    rec(inst, 0, &mut partner, &mut f);
}

/// Reference solver: score every matching with [`blocking_report`] and keep
/// the best. No pruning, and nothing shared with the branch-and-bound path
/// beyond the instance itself. `TOO_LARGE` above the cap ([`DEFAULT_CAP`]).
pub fn enumerate_optimum(
    inst: &Instance,
    obj: Objective,
    card: CardinalityConstraint,
) -> Result<NaiveOptimum> {
    enumerate_optimum_capped(inst, obj, card, DEFAULT_CAP)
}

/// [`enumerate_optimum`] with an explicit cap.
pub fn enumerate_optimum_capped(
    inst: &Instance,
    obj: Objective,
    card: CardinalityConstraint,
    cap: usize,
) -> Result<NaiveOptimum> {
    if inst.n() > cap {
        return Err(Error::TooLarge { n: inst.n(), cap });
    }
    let min_size = match card {
        CardinalityConstraint::Any => 0,
        // For MaxCard the enumeration itself discovers the maximum size.
        CardinalityConstraint::MaxCard => 0,
        CardinalityConstraint::Perfect => {
            if !inst.n().is_multiple_of(2) {
                return Err(Error::Infeasible {
                    msg: format!("no perfect matching: odd number of agents ({})", inst.n()),
                });
            }
            inst.n() / 2
        }
    };
    let maximise_size = card != CardinalityConstraint::Any;

    let mut best: Option<(usize, u32, Matching)> = None;
    let mut seen = 0u64;
    for_each_matching(inst, |m| {
        seen += 1;
        let size = m.size();
        if size < min_size {
            return;
        }
        let report = blocking_report(inst, m).expect("enumerated matchings are valid");
        let value = match obj {
            Objective::Minimax => report.max_bp,
            Objective::MinBp => report.total_bp,
            Objective::MinBa => report.blocking_agents,
        };
        let better = match &best {
            None => true,
            Some((bsize, bval, _)) => {
                if maximise_size && size != *bsize {
                    size > *bsize
                } else {
                    value < *bval
                }
            }
        };
        if better {
            best = Some((size, value, m.clone()));
        }
    });
    match best {
        Some((_, value, matching)) => Ok(NaiveOptimum {
            value,
            matching,
            matchings_seen: seen,
        }),
        None => Err(Error::Infeasible {
            msg: "no matching satisfies the cardinality constraint".into(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Instance {
        Instance::parse(text).unwrap()
    }

    /// Unsolvable 5-agent instance: a preference triangle plus a happy pair.
    fn triangle_plus_pair() -> Instance {
        parse("kind: sri\nagents: 5\n1: 2 3\n2: 3 1\n3: 1 2\n4: 5\n5: 4\n")
    }

    fn twin_triangles() -> Instance {
        parse("kind: sri\nagents: 6\n1: 2 3 4\n2: 3 1\n3: 1 2\n4: 5 6 1\n5: 6 4\n6: 4 5\n")
    }

    #[test]
    fn minimax_of_the_unsolvable_triangle_is_one() {
        let inst = triangle_plus_pair();
        let r = solve_exact(&inst, Objective::Minimax, CardinalityConstraint::Any).unwrap();
        assert_eq!(r.value, 1);
        let naive =
            enumerate_optimum(&inst, Objective::Minimax, CardinalityConstraint::Any).unwrap();
        assert_eq!(naive.value, 1);
        assert_eq!(r.matching.pairs(), naive.matching.pairs());
    }

    #[test]
    fn twin_triangles_objectives() {
        // Derived by full enumeration: blocking-agents optimum 4, total
        // blocking pairs optimum 2, minimax optimum 1.
        let inst = twin_triangles();
        let ba = solve_exact(&inst, Objective::MinBa, CardinalityConstraint::Any).unwrap();
        assert_eq!(ba.value, 4);
        let bp = solve_exact(&inst, Objective::MinBp, CardinalityConstraint::Any).unwrap();
        assert_eq!(bp.value, 2);
        let mm = solve_exact(&inst, Objective::Minimax, CardinalityConstraint::Any).unwrap();
        assert_eq!(mm.value, 1);
    }

    #[test]
    fn stable_instance_solves_to_zero() {
        let inst = parse("kind: sri\nagents: 4\n1: 2\n2: 1 3\n3: 2 4\n4: 3\n");
        let r = solve_exact(&inst, Objective::Minimax, CardinalityConstraint::Any).unwrap();
        assert_eq!(r.value, 0);
        // {1,2} alone would leave 3 and 4 blocking each other.
        assert_eq!(r.matching.pairs(), vec![(0, 1), (2, 3)]);
    }

    #[test]
    fn max_card_can_cost_stability() {
        // The stable matching is {1,3} alone; the unique maximum matching
        // {1,2},{3,4} makes agents 1 and 3 block each other.
        let inst = parse("kind: smi\nagents: 4\n1: 3 2\n2: 1\n3: 1 4\n4: 3\n");
        let any = solve_exact(&inst, Objective::Minimax, CardinalityConstraint::Any).unwrap();
        let maxc = solve_exact(&inst, Objective::Minimax, CardinalityConstraint::MaxCard).unwrap();
        assert_eq!(any.value, 0);
        assert_eq!(any.matching.pairs(), vec![(0, 2)]);
        assert_eq!(maxc.matching.size(), 2);
        assert_eq!(maxc.value, 1);
    }

    #[test]
    fn perfect_infeasible_is_reported() {
        let inst = triangle_plus_pair();
        assert!(matches!(
            solve_exact(&inst, Objective::Minimax, CardinalityConstraint::Perfect),
            Err(Error::Infeasible { .. })
        ));
    }

    #[test]
    fn too_large_is_refused_but_cap_can_be_raised() {
        let prefs: Vec<Vec<usize>> = (0..26)
            .map(|i| (0..26).filter(|&j| j != i).collect())
            .collect();
        let inst = Instance::from_prefs(crate::Kind::Sri, prefs).unwrap();
        assert!(matches!(
            solve_exact(&inst, Objective::Minimax, CardinalityConstraint::Any),
            Err(Error::TooLarge { n: 26, cap: 24 })
        ));
    }

    #[test]
    fn decide_matches_solve() {
        let inst = twin_triangles();
        assert!(decide_k_max(&inst, 0, CardinalityConstraint::Any)
            .unwrap()
            .is_none());
        let w = decide_k_max(&inst, 1, CardinalityConstraint::Any)
            .unwrap()
            .expect("minimax is 1, so a witness must exist");
        assert!(blocking_report(&inst, &w).unwrap().max_bp <= 1);
    }

    #[test]
    fn decide_with_huge_k_accepts_the_empty_matching() {
        let inst = triangle_plus_pair();
        let w = decide_k_max(&inst, 10, CardinalityConstraint::Any)
            .unwrap()
            .unwrap();
        // k=10 allows anything; the lexicographic-first branch matches 1-2.
        assert!(blocking_report(&inst, &w).unwrap().max_bp <= 10);
    }

    #[test]
    fn budgeted_decide_terminates() {
        let inst = twin_triangles();
        match decide_k_max_budgeted(&inst, 1, CardinalityConstraint::Any, Duration::from_secs(5))
            .unwrap()
        {
            DecideOutcome::Found(m) => {
                assert!(blocking_report(&inst, &m).unwrap().max_bp <= 1)
            }
            other => panic!("expected Found, got {other:?}"),
        }
    }

    #[test]
    fn witness_is_lexicographically_smallest() {
        // Complete 4-agent instance with uniform preferences: several stable
        // matchings exist; the smallest pair list must be returned.
        let inst = parse("kind: sri\nagents: 4\n1: 2 3 4\n2: 1 3 4\n3: 1 2 4\n4: 1 2 3\n");
        let r = solve_exact(&inst, Objective::Minimax, CardinalityConstraint::Any).unwrap();
        let naive =
            enumerate_optimum(&inst, Objective::Minimax, CardinalityConstraint::Any).unwrap();
        assert_eq!(r.value, 0);
        assert_eq!(r.matching.pairs(), naive.matching.pairs());
        assert_eq!(r.matching.pairs()[0], (0, 1));
    }

    #[test]
    fn enumerator_counts_matchings() {
        // Complete graph on 4 vertices has 10 matchings (1 empty + 6 single
        // + 3 perfect).
        let inst = parse("kind: sri\nagents: 4\n1: 2 3 4\n2: 1 3 4\n3: 1 2 4\n4: 1 2 3\n");
        let naive = enumerate_optimum(&inst, Objective::MinBp, CardinalityConstraint::Any).unwrap();
        assert_eq!(naive.matchings_seen, 10);
    }
}
