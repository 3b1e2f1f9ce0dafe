//! Instance model and text format.
//!
//! An instance is a set of `n` agents, each with a strict, possibly empty
//! preference list over other agents. Acceptability is mutual: if `a` ranks
//! `b` then `b` ranks `a` (anything else is rejected as `ASYMMETRIC`). The
//! undirected graph whose edges are the acceptable pairs is the
//! *acceptability graph*; its maximum degree and per-agent degrees drive
//! which solvers apply.
//!
//! Two kinds are supported: `sri` (one-sided, "roommates") and `smi`
//! (two-sided, "marriage"), the latter requiring the acceptability graph to
//! be bipartite. Side 0 is the side containing the lowest-id agent of each
//! connected component; isolated agents land on side 0.
//!
//! The text format is line-oriented:
//!
//! ```text
//! # optional comments anywhere
//! kind: sri
//! agents: 6
//! 1: 2 3 4
//! 2: 3 1
//! ```
//!
//! Ids are 1-based, lists are most-preferred-first, a missing line means an
//! empty list, and at most one line per agent is allowed. The API is 0-based
//! throughout; conversion happens only here.

use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

/// Rank sentinel meaning "not acceptable" (and the implicit rank of being
/// unmatched: every agent prefers each acceptable partner to itself).
pub const UNRANKED: u32 = u32::MAX;

/// One-sided (`Sri`) or two-sided (`Smi`) instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    Sri,
    Smi,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Sri => "sri",
            Kind::Smi => "smi",
        })
    }
}

impl FromStr for Kind {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "sri" => Ok(Kind::Sri),
            "smi" => Ok(Kind::Smi),
            other => Err(format!("unknown kind {other:?} (expected sri or smi)")),
        }
    }
}

/// A validated matching instance.
#[derive(Debug, Clone)]
pub struct Instance {
    kind: Kind,
    /// `prefs[i]` lists i's acceptable partners, most preferred first.
    prefs: Vec<Vec<usize>>,
    /// Flattened n×n rank table: `rank[i*n + j]` is j's position on i's list,
    /// or [`UNRANKED`]. Θ(n²) memory buys O(1) lookups in every inner loop.
    rank: Vec<u32>,
    /// 2-colouring of the acceptability graph; only present for `Smi`.
    side: Option<Vec<u8>>,
}

impl Instance {
    /// Build and validate an instance from 0-based preference lists.
    pub fn from_prefs(kind: Kind, prefs: Vec<Vec<usize>>) -> Result<Instance> {
        let n = prefs.len();
        let mut rank = vec![UNRANKED; n * n];
        for (i, list) in prefs.iter().enumerate() {
            for (pos, &j) in list.iter().enumerate() {
                if j >= n {
                    return Err(Error::BadId {
                        line: 0,
                        id: j as i64 + 1,
                        n,
                    });
                }
                if j == i {
                    return Err(Error::SelfRanked { agent: ext(i) });
                }
                if rank[i * n + j] != UNRANKED {
                    return Err(Error::DuplicateEntry {
                        agent: ext(i),
                        partner: ext(j),
                    });
                }
                rank[i * n + j] = pos as u32;
            }
        }
        // Mutual acceptability.
        for (i, list) in prefs.iter().enumerate() {
            for &j in list {
                if rank[j * n + i] == UNRANKED {
                    return Err(Error::Asymmetric {
                        lister: ext(i),
                        listed: ext(j),
                    });
                }
            }
        }
        let side = match kind {
            Kind::Sri => None,
            Kind::Smi => Some(two_colour(&prefs)?),
        };
        Ok(Instance {
            kind,
            prefs,
            rank,
            side,
        })
    }

    /// Parse the line-oriented text format (1-based ids).
    pub fn parse(text: &str) -> Result<Instance> {
        let mut kind: Option<Kind> = None;
        let mut n: Option<usize> = None;
        let mut prefs: Vec<Vec<usize>> = Vec::new();
        let mut seen: Vec<Option<usize>> = Vec::new(); // line that defined agent i

        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = match raw.find('#') {
                Some(p) => &raw[..p],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            if kind.is_none() {
                let rest = line.strip_prefix("kind:").ok_or_else(|| Error::Malformed {
                    line: lineno,
                    msg: format!("expected `kind: sri|smi`, got {line:?}"),
                })?;
                kind = Some(
                    rest.trim()
                        .parse()
                        .map_err(|msg| Error::Malformed { line: lineno, msg })?,
                );
                continue;
            }
            if n.is_none() {
                let rest = line
                    .strip_prefix("agents:")
                    .ok_or_else(|| Error::Malformed {
                        line: lineno,
                        msg: format!("expected `agents: N`, got {line:?}"),
                    })?;
                let count: usize = rest.trim().parse().map_err(|_| Error::Malformed {
                    line: lineno,
                    msg: format!("agent count {:?} is not a number", rest.trim()),
                })?;
                n = Some(count);
                prefs = vec![Vec::new(); count];
                seen = vec![None; count];
                continue;
            }
            let count = n.unwrap();
            let (head, tail) = line.split_once(':').ok_or_else(|| Error::Malformed {
                line: lineno,
                msg: format!("expected `I: J K ...`, got {line:?}"),
            })?;
            let agent = parse_id(head.trim(), lineno, count)?;
            if let Some(first) = seen[agent] {
                return Err(Error::Malformed {
                    line: lineno,
                    msg: format!("agent {} already defined on line {first}", ext(agent)),
                });
            }
            seen[agent] = Some(lineno);
            let mut list = Vec::new();
            for tok in tail.split_whitespace() {
                list.push(parse_id(tok, lineno, count)?);
            }
            prefs[agent] = list;
        }

        let kind = kind.ok_or(Error::Empty {
            msg: "no `kind:` line".into(),
        })?;
        if n.is_none() {
            return Err(Error::Empty {
                msg: "no `agents:` line".into(),
            });
        }
        Instance::from_prefs(kind, prefs)
    }

    /// Canonical text form; parses back to an identical instance.
    pub fn to_text(&self) -> String {
        self.render(None)
    }

    /// Canonical text form with an `# id = name` comment block (one line per
    /// agent), used when instances are generated from named constructions.
    pub fn to_text_with_names(&self, names: &[String]) -> String {
        self.render(Some(names))
    }

    fn render(&self, names: Option<&[String]>) -> String {
        use std::fmt::Write;
        let mut out = String::new();
        let _ = writeln!(out, "kind: {}", self.kind);
        let _ = writeln!(out, "agents: {}", self.n());
        if let Some(names) = names {
            for (i, name) in names.iter().enumerate() {
                let _ = writeln!(out, "# {} = {}", ext(i), name);
            }
        }
        for (i, list) in self.prefs.iter().enumerate() {
            if list.is_empty() {
                continue;
            }
            let _ = write!(out, "{}:", ext(i));
            for &j in list {
                let _ = write!(out, " {}", ext(j));
            }
            out.push('\n');
        }
        out
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    /// Number of agents.
    pub fn n(&self) -> usize {
        self.prefs.len()
    }

    /// i's preference list, most preferred first.
    pub fn prefs(&self, i: usize) -> &[usize] {
        &self.prefs[i]
    }

    /// j's position on i's list (0 = most preferred), if acceptable.
    pub fn rank_of(&self, i: usize, j: usize) -> Option<u32> {
        match self.rank[i * self.n() + j] {
            UNRANKED => None,
            r => Some(r),
        }
    }

    /// Raw rank with [`UNRANKED`] sentinel; the comparison-friendly form used
    /// in solver inner loops (lower is better, unmatched compares worst).
    #[inline]
    pub fn rank_raw(&self, i: usize, j: usize) -> u32 {
        self.rank[i * self.n() + j]
    }

    pub fn is_acceptable(&self, i: usize, j: usize) -> bool {
        i != j && self.rank[i * self.n() + j] != UNRANKED
    }

    /// Degree of i in the acceptability graph (= list length).
    pub fn degree(&self, i: usize) -> usize {
        self.prefs[i].len()
    }

    pub fn max_degree(&self) -> usize {
        self.prefs.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Number of acceptable (unordered) pairs.
    pub fn pair_count(&self) -> usize {
        self.prefs.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Side of an agent (0 or 1) in a two-sided instance.
    pub fn side(&self, i: usize) -> Option<u8> {
        self.side.as_ref().map(|s| s[i])
    }

    /// All agents on the given side of a two-sided instance.
    pub fn side_agents(&self, which: u8) -> Result<Vec<usize>> {
        let side = self.side.as_ref().ok_or(Error::NotSmi)?;
        Ok((0..self.n()).filter(|&i| side[i] == which).collect())
    }
}

/// BFS 2-colouring; lowest-id agent of every component gets colour 0.
fn two_colour(prefs: &[Vec<usize>]) -> Result<Vec<u8>> {
    let n = prefs.len();
    let mut colour = vec![u8::MAX; n];
    let mut queue = std::collections::VecDeque::new();
    for start in 0..n {
        if colour[start] != u8::MAX {
            continue;
        }
        colour[start] = 0;
        queue.push_back(start);
        while let Some(v) = queue.pop_front() {
            for &w in &prefs[v] {
                if colour[w] == u8::MAX {
                    colour[w] = 1 - colour[v];
                    queue.push_back(w);
                } else if colour[w] == colour[v] {
                    return Err(Error::NotBipartite { agent: ext(w) });
                }
            }
        }
    }
    Ok(colour)
}

fn parse_id(tok: &str, line: usize, n: usize) -> Result<usize> {
    let id: i64 = tok.parse().map_err(|_| Error::Malformed {
        line,
        msg: format!("{tok:?} is not an agent id"),
    })?;
    if id < 1 || id as usize > n {
        return Err(Error::BadId { line, id, n });
    }
    Ok(id as usize - 1)
}

/// 0-based internal id to 1-based external id.
#[inline]
pub(crate) fn ext(i: usize) -> u32 {
    i as u32 + 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sri(text: &str) -> Result<Instance> {
        Instance::parse(text)
    }

    #[test]
    fn parses_minimal_pair() {
        let inst = sri("kind: sri\nagents: 2\n1: 2\n2: 1\n").unwrap();
        assert_eq!(inst.n(), 2);
        assert_eq!(inst.prefs(0), &[1]);
        assert_eq!(inst.rank_of(1, 0), Some(0));
        assert_eq!(inst.max_degree(), 1);
    }

    #[test]
    fn missing_line_means_empty_list() {
        let inst = sri("kind: sri\nagents: 3\n1: 2\n2: 1\n").unwrap();
        assert_eq!(inst.degree(2), 0);
        assert_eq!(inst.pair_count(), 1);
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let inst = sri("# header\n\nkind: sri\n# mid\nagents: 2\n1: 2 # trailing\n2: 1\n").unwrap();
        assert_eq!(inst.pair_count(), 1);
    }

    #[test]
    fn rejects_asymmetric_lists() {
        let err = sri("kind: sri\nagents: 3\n1: 2 3\n2: 1\n3:\n").unwrap_err();
        assert!(matches!(
            err,
            Error::Asymmetric {
                lister: 1,
                listed: 3
            }
        ));
    }

    #[test]
    fn rejects_duplicate_entry() {
        let err = sri("kind: sri\nagents: 3\n1: 2 2\n2: 1\n").unwrap_err();
        assert!(matches!(err, Error::DuplicateEntry { agent: 1, .. }));
    }

    #[test]
    fn rejects_self_rank() {
        let err = sri("kind: sri\nagents: 2\n1: 1\n").unwrap_err();
        assert!(matches!(err, Error::SelfRanked { agent: 1 }));
    }

    #[test]
    fn rejects_bad_ids() {
        let err = sri("kind: sri\nagents: 2\n1: 3\n").unwrap_err();
        assert!(matches!(err, Error::BadId { id: 3, .. }));
        let err = sri("kind: sri\nagents: 2\n1: 0\n").unwrap_err();
        assert!(matches!(err, Error::BadId { id: 0, .. }));
    }

    #[test]
    fn rejects_repeated_agent_line() {
        let err = sri("kind: sri\nagents: 2\n1: 2\n2: 1\n1: 2\n").unwrap_err();
        assert!(matches!(err, Error::Malformed { line: 5, .. }));
    }

    #[test]
    fn rejects_odd_cycle_for_smi() {
        let err = Instance::parse("kind: smi\nagents: 3\n1: 2 3\n2: 3 1\n3: 1 2\n").unwrap_err();
        assert!(matches!(err, Error::NotBipartite { .. }));
    }

    #[test]
    fn sides_are_stable_and_zero_based_on_lowest_id() {
        let inst = Instance::parse("kind: smi\nagents: 4\n1: 3\n3: 1\n2: 4\n4: 2\n").unwrap();
        assert_eq!(inst.side(0), Some(0));
        assert_eq!(inst.side(2), Some(1));
        // second component: its lowest agent (2) is side 0
        assert_eq!(inst.side(1), Some(0));
        assert_eq!(inst.side(3), Some(1));
    }

    #[test]
    fn text_round_trip_is_exact() {
        let text = "kind: sri\nagents: 4\n1: 2 3\n2: 1\n3: 1 4\n4: 3\n";
        let inst = sri(text).unwrap();
        assert_eq!(inst.to_text(), text);
    }
}
