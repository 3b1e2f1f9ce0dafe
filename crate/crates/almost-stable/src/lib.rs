//! Almost-stable matching under the minimax objective.
//!
//! A matching instance is a set of agents, each with a strict preference list
//! over some of the others (acceptability is mutual). A pair that both agents
//! prefer to their current situation is a *blocking pair*; a matching with no
//! blocking pair is *stable*. Not every roommates instance admits a stable
//! matching, and demanding maximum cardinality can destroy stability even when
//! plain stability is achievable. This crate is about the next best thing:
//! matchings that minimise the number of blocking pairs **any single agent is
//! involved in** (the minimax objective), optionally subject to a cardinality
//! constraint.
//!
//! What's here:
//!
//! - [`instance`]: the instance model, text format parsing and writing.
//! - [`matching`] / [`blocking`] / [`report`]: matchings, blocking-pair
//!   analysis, and a serialisable result record.
//! - [`classic`]: stable-matching building blocks — Gale–Shapley, the
//!   roommates proposal/rotation algorithm, and maximum-cardinality matching.
//! - [`shortlist`]: exact linear-time solvers for instances whose preference
//!   lists have length at most two.
//! - [`localsearch`]: a balanced-cut local search giving a per-agent
//!   ceil(d_i/2) guarantee on general roommates instances.
//! - [`exact`]: branch-and-bound and naive-enumeration optimal solvers for
//!   the minimax / total / blocking-agents objectives.
//! - [`ilp`]: an integer-programming formulation with a deterministic LP-file
//!   exporter (bring your own MILP solver).
//! - [`constructions`]: hard-instance families with known optima, and
//!   satisfiability reductions producing instances whose almost-stable
//!   matchings encode satisfying assignments.
//! - [`bench`]: seeded random instance generation and an experiment harness.
//!
//! Agent ids are 1-based in every text format and 0-based in the API; the
//! conversion happens only at the I/O boundary.

// Agent ids double as indices into parallel arrays (prefs, ranks, partners);
// index loops keep that correspondence visible.
#![allow(clippy::needless_range_loop)]

pub mod bench;
pub mod blocking;
pub mod classic;
pub mod constructions;
mod error;
pub mod exact;
pub mod ilp;
pub mod instance;
pub mod localsearch;
pub mod matching;
pub mod report;
pub mod shortlist;

pub use blocking::{blocking_report, BlockingReport};
pub use error::Error;
pub use exact::{CardinalityConstraint, Objective};
pub use instance::{Instance, Kind};
pub use matching::Matching;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
