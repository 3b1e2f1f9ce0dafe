//! Matchings: validated pairings of agents, unmatched allowed.

use crate::instance::ext;
use crate::{Error, Instance, Result};

/// A matching on some instance: each agent has at most one partner, every
/// matched pair is mutually acceptable. Being unmatched is represented by an
/// absent partner, never by a self-loop.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    partner: Vec<Option<usize>>,
}

impl Matching {
    /// The empty matching on `n` agents.
    pub fn empty(n: usize) -> Matching {
        Matching {
            partner: vec![None; n],
        }
    }

    /// Build a matching from unordered pairs, validating against `inst`:
    /// every pair must be mutually acceptable and no agent may appear twice.
    pub fn from_pairs(inst: &Instance, pairs: &[(usize, usize)]) -> Result<Matching> {
        let mut m = Matching::empty(inst.n());
        for &(a, b) in pairs {
            if a >= inst.n() || b >= inst.n() {
                return Err(Error::InvalidMatching {
                    msg: format!("pair ({}, {}) names a nonexistent agent", ext(a), ext(b)),
                });
            }
            if a == b {
                return Err(Error::InvalidMatching {
                    msg: format!("agent {} paired with itself", ext(a)),
                });
            }
            if !inst.is_acceptable(a, b) || !inst.is_acceptable(b, a) {
                return Err(Error::InvalidMatching {
                    msg: format!("pair ({}, {}) is not mutually acceptable", ext(a), ext(b)),
                });
            }
            if m.partner[a].is_some() || m.partner[b].is_some() {
                let busy = if m.partner[a].is_some() { a } else { b };
                return Err(Error::InvalidMatching {
                    msg: format!("agent {} appears in more than one pair", ext(busy)),
                });
            }
            m.partner[a] = Some(b);
            m.partner[b] = Some(a);
        }
        Ok(m)
    }

    /// Build from a raw partner array (must already be symmetric); used by
    /// solvers that maintain the array invariant themselves.
    pub(crate) fn from_partner_unchecked(partner: Vec<Option<usize>>) -> Matching {
        debug_assert!(partner
            .iter()
            .enumerate()
            .all(|(i, p)| p.is_none_or(|j| partner[j] == Some(i))));
        Matching { partner }
    }

    /// Parse a matching file: one `i j` pair per line, 1-based, `#` comments.
    pub fn parse(inst: &Instance, text: &str) -> Result<Matching> {
        let mut pairs = Vec::new();
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
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() != 2 {
                return Err(Error::Malformed {
                    line: lineno,
                    msg: format!("expected `I J`, got {line:?}"),
                });
            }
            let mut ids = [0usize; 2];
            for (k, tok) in toks.iter().enumerate() {
                let id: i64 = tok.parse().map_err(|_| Error::Malformed {
                    line: lineno,
                    msg: format!("{tok:?} is not an agent id"),
                })?;
                if id < 1 || id as usize > inst.n() {
                    return Err(Error::BadId {
                        line: lineno,
                        id,
                        n: inst.n(),
                    });
                }
                ids[k] = id as usize - 1;
            }
            pairs.push((ids[0], ids[1]));
        }
        Matching::from_pairs(inst, &pairs)
    }

    pub fn n(&self) -> usize {
        self.partner.len()
    }

    /// Partner of `i`, if matched.
    pub fn partner(&self, i: usize) -> Option<usize> {
        self.partner[i]
    }

    pub fn is_matched(&self, i: usize) -> bool {
        self.partner[i].is_some()
    }

    /// Number of matched pairs.
    pub fn size(&self) -> usize {
        self.partner.iter().flatten().count() / 2
    }

    /// Canonical pair list: each pair as (low, high), sorted ascending.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self
            .partner
            .iter()
            .enumerate()
            .filter_map(|(i, &p)| p.filter(|&j| i < j).map(|j| (i, j)))
            .collect();
        out.sort_unstable();
        out
    }

    /// Agents with no partner, ascending.
    pub fn unmatched(&self) -> Vec<usize> {
        self.partner
            .iter()
            .enumerate()
            .filter_map(|(i, p)| p.is_none().then_some(i))
            .collect()
    }

    /// `self` is a sub-matching of `other` (every pair of `self` is in `other`).
    pub fn is_subset_of(&self, other: &Matching) -> bool {
        self.partner
            .iter()
            .enumerate()
            .all(|(i, &p)| p.is_none_or(|j| other.partner[i] == Some(j)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Kind;

    fn path4() -> Instance {
        Instance::parse("kind: sri\nagents: 4\n1: 2\n2: 1 3\n3: 2 4\n4: 3\n").unwrap()
    }

    #[test]
    fn builds_and_reads_back() {
        let inst = path4();
        let m = Matching::from_pairs(&inst, &[(2, 3), (0, 1)]).unwrap();
        assert_eq!(m.size(), 2);
        assert_eq!(m.pairs(), vec![(0, 1), (2, 3)]);
        assert_eq!(m.partner(1), Some(0));
        assert!(m.unmatched().is_empty());
    }

    #[test]
    fn rejects_unacceptable_pair() {
        let inst = path4();
        let err = Matching::from_pairs(&inst, &[(0, 3)]).unwrap_err();
        assert!(matches!(err, Error::InvalidMatching { .. }));
    }

    #[test]
    fn rejects_reused_agent() {
        let inst = path4();
        let err = Matching::from_pairs(&inst, &[(0, 1), (1, 2)]).unwrap_err();
        assert!(matches!(err, Error::InvalidMatching { .. }));
    }

    #[test]
    fn empty_matching_is_fine() {
        let inst = Instance::from_prefs(Kind::Sri, vec![vec![1], vec![0]]).unwrap();
        let m = Matching::empty(inst.n());
        assert_eq!(m.size(), 0);
        assert_eq!(m.unmatched(), vec![0, 1]);
    }

    #[test]
    fn parses_pair_lines() {
        let inst = path4();
        let m = Matching::parse(&inst, "# witness\n2 3\n").unwrap();
        assert_eq!(m.pairs(), vec![(1, 2)]);
    }
}
