//! Classical stable-matching and maximum-matching algorithms.
//!
//! These are the building blocks the rest of the crate leans on:
//!
//! - [`gale_shapley`]: deferred acceptance on two-sided instances. All stable
//!   matchings of a two-sided instance match the same agents, so its size is
//!   canonical.
//! - [`irving`]: the proposal/rotation algorithm for one-sided (roommates)
//!   instances, which either returns a stable matching or reports that none
//!   exists. Agents whose lists empty during the proposal phase are simply
//!   unmatched in every stable matching; an *engaged* agent losing its whole
//!   list means the instance is unsolvable.
//! - [`max_matching_deg2`]: maximum-cardinality matching when every list has
//!   length at most two (the graph is a disjoint union of paths and cycles).
//! - [`max_matching`]: maximum-cardinality matching on arbitrary instances
//!   via augmenting paths with blossom contraction.

use std::collections::VecDeque;

use crate::instance::ext;
use crate::{Error, Instance, Kind, Matching, Result};

/// Deferred acceptance. Agents on `proposer_side` propose down their lists;
/// receivers hold the best proposal seen so far. Returns the proposer-optimal
/// stable matching. Errors with `NOT_SMI` on one-sided instances.
pub fn gale_shapley(inst: &Instance, proposer_side: u8) -> Result<Matching> {
    if inst.kind() != Kind::Smi {
        return Err(Error::NotSmi);
    }
    let n = inst.n();
    let mut partner: Vec<Option<usize>> = vec![None; n];
    let mut next = vec![0usize; n]; // next list position to propose to
    let mut free: VecDeque<usize> = (0..n)
        .filter(|&i| inst.side(i) == Some(proposer_side) && inst.degree(i) > 0)
        .collect();

    while let Some(x) = free.pop_front() {
        if next[x] >= inst.degree(x) {
            continue; // exhausted: stays unmatched
        }
        let y = inst.prefs(x)[next[x]];
        next[x] += 1;
        match partner[y] {
            None => {
                partner[y] = Some(x);
                partner[x] = Some(y);
            }
            Some(z) if inst.rank_raw(y, x) < inst.rank_raw(y, z) => {
                partner[z] = None;
                free.push_back(z);
                partner[y] = Some(x);
                partner[x] = Some(y);
            }
            Some(_) => free.push_back(x),
        }
    }
    Ok(Matching::from_partner_unchecked(partner))
}

/// Reduced preference table used by [`irving`]: the original lists with
/// per-pair deletions, plus head/tail bookkeeping. Deleting is always
/// reciprocal, matching the algorithm's invariant that acceptability stays
/// mutual throughout.
struct Table<'a> {
    inst: &'a Instance,
    alive: Vec<Vec<bool>>,
    len: Vec<usize>,
}

impl<'a> Table<'a> {
    fn new(inst: &'a Instance) -> Table<'a> {
        Table {
            inst,
            alive: (0..inst.n()).map(|i| vec![true; inst.degree(i)]).collect(),
            len: (0..inst.n()).map(|i| inst.degree(i)).collect(),
        }
    }

    fn delete(&mut self, i: usize, j: usize) {
        let pi = self.inst.rank_raw(i, j) as usize;
        let pj = self.inst.rank_raw(j, i) as usize;
        debug_assert!(self.alive[i][pi] && self.alive[j][pj]);
        self.alive[i][pi] = false;
        self.alive[j][pj] = false;
        self.len[i] -= 1;
        self.len[j] -= 1;
    }

    fn head(&self, i: usize) -> Option<usize> {
        self.alive[i]
            .iter()
            .position(|&a| a)
            .map(|p| self.inst.prefs(i)[p])
    }

    fn second(&self, i: usize) -> Option<usize> {
        self.alive[i]
            .iter()
            .enumerate()
            .filter(|&(_, &a)| a)
            .nth(1)
            .map(|(p, _)| self.inst.prefs(i)[p])
    }

    fn tail(&self, i: usize) -> Option<usize> {
        self.alive[i]
            .iter()
            .rposition(|&a| a)
            .map(|p| self.inst.prefs(i)[p])
    }

    /// Delete every entry of y's list strictly worse than x (reciprocally).
    fn reject_worse_than(&mut self, y: usize, x: usize) -> Vec<usize> {
        let cut = self.inst.rank_raw(y, x) as usize;
        let mut gone = Vec::new();
        for pos in (cut + 1)..self.inst.degree(y) {
            if self.alive[y][pos] {
                let z = self.inst.prefs(y)[pos];
                self.delete(y, z);
                gone.push(z);
            }
        }
        gone
    }
}

/// Stable matching on a one-sided instance, or `None` when the instance has
/// no stable matching.
pub fn irving(inst: &Instance) -> Option<Matching> {
    let n = inst.n();
    let mut t = Table::new(inst);

    // Proposal phase. hold[y] is the proposer y currently holds.
    let mut hold: Vec<Option<usize>> = vec![None; n];
    let mut free: VecDeque<usize> = (0..n).filter(|&i| inst.degree(i) > 0).collect();
    while let Some(x) = free.pop_front() {
        // Propose down the list; falling off the end means x is rejected
        // everywhere and stays unmatched in any stable matching.
        while let Some(y) = t.head(x) {
            let accept = match hold[y] {
                None => true,
                Some(z) => inst.rank_raw(y, x) < inst.rank_raw(y, z),
            };
            if accept {
                let old = hold[y];
                hold[y] = Some(x);
                t.reject_worse_than(y, x);
                if let Some(z) = old {
                    free.push_back(z); // displaced: proposes again
                }
                break;
            } else {
                t.delete(x, y); // y rejects x outright
            }
        }
    }

    // Agents engaged at the end of the proposal phase must stay engaged;
    // their lists emptying later proves unsolvability.
    let engaged: Vec<bool> = (0..n).map(|i| t.len[i] > 0).collect();
    debug_assert!((0..n).all(|y| match hold[y] {
        Some(x) => t.head(x) == Some(y) && t.tail(y) == Some(x),
        None => true,
    }));

    // Rotation phase: repeatedly find and eliminate a rotation until every
    // list is a singleton (matching) or an engaged list empties (unsolvable).
    loop {
        if (0..n).any(|i| engaged[i] && t.len[i] == 0) {
            return None;
        }
        let start = match (0..n).find(|&i| t.len[i] >= 2) {
            None => break,
            Some(s) => s,
        };
        // Discover a rotation: p -> tail(second(p)) until a repeat.
        let mut seen_at = vec![usize::MAX; n];
        let mut chain = Vec::new();
        let mut p = start;
        let cycle_from = loop {
            if seen_at[p] != usize::MAX {
                break seen_at[p];
            }
            seen_at[p] = chain.len();
            chain.push(p);
            let q = t.second(p).expect("chain agents have >= 2 entries");
            p = t
                .tail(q)
                .expect("q holds a proposal, so its list is nonempty");
        };
        // Eliminate: each y_{i+1} = second(p_i) accepts p_i's proposal and
        // rejects everyone worse. This also cuts each {p_{i+1}, y_{i+1}}.
        let cycle = &chain[cycle_from..];
        let accepts: Vec<(usize, usize)> = cycle
            .iter()
            .map(|&pi| (t.second(pi).unwrap(), pi))
            .collect();
        for &(y, pi) in &accepts {
            t.reject_worse_than(y, pi);
        }
    }

    // Every list is now empty or a singleton; singletons pair up mutually.
    let mut partner: Vec<Option<usize>> = vec![None; n];
    for i in 0..n {
        if let Some(j) = t.head(i) {
            debug_assert_eq!(t.head(j), Some(i), "final table must be symmetric");
            partner[i] = Some(j);
        }
    }
    Some(Matching::from_partner_unchecked(partner))
}

/// Maximum-cardinality matching when every preference list has at most two
/// entries: the acceptability graph is a union of paths and cycles, and
/// taking alternate edges of each is optimal. Paths are walked from their
/// endpoint, cycles from their lowest-id vertex. `DEGREE_EXCEEDED` otherwise.
pub fn max_matching_deg2(inst: &Instance) -> Result<Matching> {
    let n = inst.n();
    for i in 0..n {
        if inst.degree(i) > 2 {
            return Err(Error::DegreeExceeded {
                agent: ext(i),
                len: inst.degree(i),
            });
        }
    }
    let mut partner: Vec<Option<usize>> = vec![None; n];
    let mut visited = vec![false; n];
    let take_walk = |start: usize, visited: &mut Vec<bool>, partner: &mut Vec<Option<usize>>| {
        // Walk the component from `start`, matching alternate edges.
        let mut prev = usize::MAX;
        let mut cur = start;
        let mut take = true;
        visited[cur] = true;
        loop {
            let next = inst.prefs(cur).iter().copied().find(|&w| w != prev);
            let next = match next {
                Some(w) if !visited[w] => w,
                _ => break,
            };
            visited[next] = true;
            if take {
                partner[cur] = Some(next);
                partner[next] = Some(cur);
            }
            take = !take;
            prev = cur;
            cur = next;
        }
    };
    // Paths first (endpoints have degree 1); the scan hits the lower-id
    // endpoint of each path first, which fixes the orientation.
    for v in 0..n {
        if !visited[v] && inst.degree(v) == 1 {
            take_walk(v, &mut visited, &mut partner);
        }
    }
    // Remaining unvisited non-isolated vertices lie on cycles.
    for v in 0..n {
        if !visited[v] && inst.degree(v) == 2 {
            take_walk(v, &mut visited, &mut partner);
        }
    }
    Ok(Matching::from_partner_unchecked(partner))
}

const NONE: usize = usize::MAX;

/// Maximum-cardinality matching on an arbitrary instance (augmenting paths
/// with blossom contraction, O(n·m) per augmentation).
pub fn max_matching(inst: &Instance) -> Matching {
    let n = inst.n();
    let mut mate = vec![NONE; n];
    // Greedy warm start cuts the number of augmentation rounds.
    for v in 0..n {
        if mate[v] == NONE {
            if let Some(&w) = inst.prefs(v).iter().find(|&&w| mate[w] == NONE) {
                mate[v] = w;
                mate[w] = v;
            }
        }
    }
    for root in 0..n {
        if mate[root] == NONE && inst.degree(root) > 0 {
            augment(inst, root, &mut mate);
        }
    }
    let partner = mate
        .iter()
        .map(|&w| if w == NONE { None } else { Some(w) })
        .collect();
    Matching::from_partner_unchecked(partner)
}

/// Size of a maximum-cardinality matching.
pub fn max_matching_size(inst: &Instance) -> usize {
    max_matching(inst).size()
}

/// One BFS phase of the blossom algorithm: grow an alternating tree from
/// `root`, contracting odd cycles, and flip the augmenting path if an exposed
/// vertex is reached.
fn augment(inst: &Instance, root: usize, mate: &mut [usize]) -> bool {
    let n = inst.n();
    let mut parent = vec![NONE; n];
    let mut base: Vec<usize> = (0..n).collect();
    let mut used = vec![false; n];
    let mut queue = VecDeque::new();
    used[root] = true;
    queue.push_back(root);

    let lca = |v: usize, w: usize, base: &[usize], parent: &[usize], mate: &[usize]| {
        let mut marked = vec![false; n];
        let mut a = base[v];
        loop {
            marked[a] = true;
            if mate[a] == NONE {
                break;
            }
            a = base[parent[mate[a]]];
        }
        let mut b = base[w];
        while !marked[b] {
            b = base[parent[mate[b]]];
        }
        b
    };

    let mark_path = |mut v: usize,
                     b: usize,
                     mut child: usize,
                     blossom: &mut [bool],
                     base: &[usize],
                     parent: &mut [usize],
                     mate: &[usize]| {
        while base[v] != b {
            blossom[base[v]] = true;
            blossom[base[mate[v]]] = true;
            parent[v] = child;
            child = mate[v];
            v = parent[mate[v]];
        }
    };

    while let Some(v) = queue.pop_front() {
        for &to in inst.prefs(v) {
            if base[v] == base[to] || mate[v] == to {
                continue;
            }
            if to == root || (mate[to] != NONE && parent[mate[to]] != NONE) {
                // Odd cycle: contract the blossom rooted at the LCA.
                let cur_base = lca(v, to, &base, &parent, mate);
                let mut blossom = vec![false; n];
                mark_path(v, cur_base, to, &mut blossom, &base, &mut parent, mate);
                mark_path(to, cur_base, v, &mut blossom, &base, &mut parent, mate);
                for u in 0..n {
                    if blossom[base[u]] {
                        base[u] = cur_base;
                        if !used[u] {
                            used[u] = true;
                            queue.push_back(u);
                        }
                    }
                }
            } else if parent[to] == NONE {
                parent[to] = v;
                if mate[to] == NONE {
                    // Exposed vertex: flip matched/unmatched along the path.
                    let mut u = to;
                    while u != NONE {
                        let pv = parent[u];
                        let ppv = mate[pv];
                        mate[u] = pv;
                        mate[pv] = u;
                        u = ppv;
                    }
                    return true;
                } else {
                    used[mate[to]] = true;
                    queue.push_back(mate[to]);
                }
            }
        }
    }
    false
}
