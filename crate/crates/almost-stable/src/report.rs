//! Serialisable result records.
//!
//! Every solver invocation (CLI or library) can be summarised as one JSON
//! object carrying the matching, its blocking-pair accounting, and the
//! objective it was solved under. Records round-trip exactly: parsing a
//! serialised record reproduces the pairs and counts bit for bit, and the
//! matching can be rebuilt against the originating instance.

use serde::{Deserialize, Serialize};

use crate::instance::ext;
use crate::{BlockingReport, Error, Instance, Matching, Result};

/// One solve, as a stable external record. All ids are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultRecord {
    /// Matched pairs as `[low, high]`, sorted ascending.
    pub pairs: Vec<[u32; 2]>,
    /// Unmatched agents, ascending.
    pub unmatched: Vec<u32>,
    /// Number of matched pairs.
    pub size: usize,
    /// Total number of blocking pairs.
    pub total_bp: u32,
    /// Largest number of blocking pairs any single agent is in.
    pub max_bp: u32,
    /// Number of agents in at least one blocking pair.
    pub blocking_agents: u32,
    /// The blocking pairs themselves, `[low, high]`, sorted ascending.
    pub blocking_pairs: Vec<[u32; 2]>,
    pub stable: bool,
    /// Objective the solve ran under (e.g. "minimax", "minimax-max", "check").
    pub objective: String,
    /// Achieved objective value.
    pub value: i64,
}

impl ResultRecord {
    pub fn new(m: &Matching, report: &BlockingReport, objective: &str, value: i64) -> ResultRecord {
        ResultRecord {
            pairs: m.pairs().iter().map(|&(a, b)| [ext(a), ext(b)]).collect(),
            unmatched: m.unmatched().iter().map(|&a| ext(a)).collect(),
            size: m.size(),
            total_bp: report.total_bp,
            max_bp: report.max_bp,
            blocking_agents: report.blocking_agents,
            blocking_pairs: report
                .blocking_pairs
                .iter()
                .map(|&(a, b)| [ext(a), ext(b)])
                .collect(),
            stable: report.stable,
            objective: objective.to_string(),
            value,
        }
    }

    /// Pretty JSON, field order fixed by the struct.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("record serialisation cannot fail")
    }

    pub fn parse(text: &str) -> Result<ResultRecord> {
        serde_json::from_str(text).map_err(|e| Error::Malformed {
            line: e.line(),
            msg: format!("bad result record: {e}"),
        })
    }

    /// Rebuild the matching on its instance (validates acceptability).
    pub fn matching(&self, inst: &Instance) -> Result<Matching> {
        let pairs: Vec<(usize, usize)> = self
            .pairs
            .iter()
            .map(|&[a, b]| (a as usize - 1, b as usize - 1))
            .collect();
        Matching::from_pairs(inst, &pairs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blocking_report;

    #[test]
    fn round_trip_is_exact() {
        let inst = Instance::parse(
            "kind: sri\nagents: 6\n1: 2 3 4\n2: 3 1\n3: 1 2\n4: 5 6 1\n5: 6 4\n6: 4 5\n",
        )
        .unwrap();
        let m = Matching::from_pairs(&inst, &[(1, 2), (4, 5)]).unwrap();
        let r = blocking_report(&inst, &m).unwrap();
        let rec = ResultRecord::new(&m, &r, "minimax", r.max_bp as i64);
        let back = ResultRecord::parse(&rec.to_json()).unwrap();
        assert_eq!(back, rec);
        assert_eq!(back.pairs, vec![[2, 3], [5, 6]]);
        assert_eq!(back.unmatched, vec![1, 4]);
        assert_eq!(back.blocking_pairs, vec![[1, 3], [1, 4], [4, 6]]);
        let m2 = back.matching(&inst).unwrap();
        assert_eq!(m2.pairs(), m.pairs());
    }

    #[test]
    fn empty_matching_record() {
        let inst = Instance::parse("kind: sri\nagents: 2\n1: 2\n2: 1\n").unwrap();
        let m = Matching::empty(2);
        let r = blocking_report(&inst, &m).unwrap();
        let rec = ResultRecord::new(&m, &r, "check", 1);
        let back = ResultRecord::parse(&rec.to_json()).unwrap();
        assert!(back.pairs.is_empty());
        assert_eq!(back.unmatched, vec![1, 2]);
        assert!(!back.stable);
    }
}
