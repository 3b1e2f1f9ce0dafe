//! Random-instance generation and batch experiments.
//!
//! [`gen_random`] draws reproducible random instances from the standard
//! sparse models (each agent submits a bounded-length random list).
//! [`run_experiment`] solves a seeded batch in parallel and reports one
//! [`RunRow`] per instance, with a CSV export and a [`summarize`] step for
//! eyeballing aggregate behaviour.
//!
//! The default [`BenchSolver::Auto`] pipeline proves optimality where it can
//! within a wall-clock budget: stability check, then the exact short-list
//! routines when no list is longer than 2, then the balanced-cut
//! approximation as an upper bound, then an iterative-deepening run of the
//! exact decision search. Rows it could not prove are flagged via the
//! `optimal` column rather than silently reported as exact.

use crate::blocking::blocking_report;
use crate::classic::{gale_shapley, irving, max_matching, max_matching_deg2, max_matching_size};
use crate::error::Error;
use crate::exact::{
    decide_k_max_budgeted, solve_exact, CardinalityConstraint, DecideOutcome, Objective,
};
use crate::ilp::{build_model, IlpMode};
use crate::instance::{Instance, Kind};
use crate::localsearch::approx_minimax;
use crate::matching::Matching;
use crate::shortlist::{minimax_deg2_sri, minimax_maxcard_deg2_smi, rematch_to_minimax_one};
use crate::Result;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::{Duration, Instant};

// ---------------------------------------------------------------------------
// Random instances
// ---------------------------------------------------------------------------

/// Draws a random instance with `n` agents and preference lists of length
/// (close to) `l`. Deterministic in `seed`.
///
/// Bipartite (`smi`): `n` must be even; agents `1..=n/2` form the proposing
/// side and each ranks a uniform random `l`-subset of the other side in
/// uniform random order (`1 <= l <= n/2`); the other side ranks whoever
/// listed it, again in uniform random order, so its list lengths vary
/// around `l`.
///
/// Roommates (`sri`): a random near-`l`-regular acceptability graph via stub
/// pairing (`1 <= l <= n-1`): every agent contributes `l` stubs, stubs are
/// paired uniformly at random, and a stub whose remaining partners would all
/// repeat an existing pair or form a self-loop is dropped — so a few lists
/// may come up slightly short of `l`. Each agent then ranks its neighbours
/// in uniform random order.
pub fn gen_random(n: usize, l: usize, kind: Kind, seed: u64) -> Result<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match kind {
        Kind::Smi => {
            if n < 2 || !n.is_multiple_of(2) {
                return Err(Error::BadConfig {
                    msg: format!("bipartite generation needs an even agent count, got {n}"),
                });
            }
            let half = n / 2;
            if l < 1 || l > half {
                return Err(Error::BadConfig {
                    msg: format!("list length must be between 1 and n/2 = {half}, got {l}"),
                });
            }
            let mut prefs = vec![Vec::new(); n];
            for a in 0..half {
                let mut list = rand::seq::index::sample(&mut rng, half, l).into_vec();
                list.shuffle(&mut rng);
                prefs[a] = list.into_iter().map(|b| b + half).collect();
            }
            let mut incoming = vec![Vec::new(); half];
            for a in 0..half {
                for &b in &prefs[a] {
                    incoming[b - half].push(a);
                }
            }
            for (b, mut list) in incoming.into_iter().enumerate() {
                list.shuffle(&mut rng);
                prefs[half + b] = list;
            }
            Instance::from_prefs(Kind::Smi, prefs)
        }
        Kind::Sri => {
            if n < 2 {
                return Err(Error::BadConfig {
                    msg: format!("roommates generation needs at least 2 agents, got {n}"),
                });
            }
            if l < 1 || l > n - 1 {
                return Err(Error::BadConfig {
                    msg: format!("list length must be between 1 and n-1 = {}, got {l}", n - 1),
                });
            }
            let mut stubs: Vec<usize> = (0..n).flat_map(|i| std::iter::repeat_n(i, l)).collect();
            stubs.shuffle(&mut rng);
            let mut neighbours: Vec<Vec<usize>> = vec![Vec::new(); n];
            let mut acceptable = vec![false; n * n];
            while let Some(a) = stubs.pop() {
                let legal = (0..stubs.len())
                    .rev()
                    .find(|&idx| stubs[idx] != a && !acceptable[a * n + stubs[idx]]);
                if let Some(idx) = legal {
                    let b = stubs.remove(idx);
                    acceptable[a * n + b] = true;
                    acceptable[b * n + a] = true;
                    neighbours[a].push(b);
                    neighbours[b].push(a);
                }
            }
            for list in &mut neighbours {
                list.shuffle(&mut rng);
            }
            Instance::from_prefs(Kind::Sri, neighbours)
        }
    }
}

// ---------------------------------------------------------------------------
// Experiment configuration
// ---------------------------------------------------------------------------

/// Which objective a batch optimises.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BenchMode {
    /// Minimise the largest per-agent blocking count over all matchings.
    Minimax,
    /// The same, restricted to maximum-cardinality matchings.
    MinimaxMax,
}

impl BenchMode {
    /// The cardinality constraint the mode imposes on the exact solvers.
    pub fn cardinality(self) -> CardinalityConstraint {
        match self {
            BenchMode::Minimax => CardinalityConstraint::Any,
            BenchMode::MinimaxMax => CardinalityConstraint::MaxCard,
        }
    }

    /// The matching 0/1-program flavour.
    pub fn ilp_mode(self) -> IlpMode {
        match self {
            BenchMode::Minimax => IlpMode::Minimax,
            BenchMode::MinimaxMax => IlpMode::MinimaxMax,
        }
    }
}

impl fmt::Display for BenchMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BenchMode::Minimax => "minimax",
            BenchMode::MinimaxMax => "minimax-max",
        })
    }
}

impl FromStr for BenchMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<BenchMode> {
        match s {
            "minimax" => Ok(BenchMode::Minimax),
            "minimax-max" | "minimax_max" => Ok(BenchMode::MinimaxMax),
            other => Err(Error::BadConfig {
                msg: format!("unknown mode `{other}` (expected minimax or minimax-max)"),
            }),
        }
    }
}

/// Which solving pipeline a batch uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BenchSolver {
    /// Staged pipeline; proves optimality within the budget where possible.
    Auto,
    /// Plain exact search; refuses instances above the exact-size cap.
    Exact,
    /// Balanced-cut approximation only; rows are rarely marked optimal.
    Approx,
    /// [`BenchSolver::Auto`], plus one exported `.lp`/`.vars.json` model per
    /// instance next to the CSV.
    IlpExport,
}

impl fmt::Display for BenchSolver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BenchSolver::Auto => "auto",
            BenchSolver::Exact => "exact",
            BenchSolver::Approx => "approx",
            BenchSolver::IlpExport => "ilp-export",
        })
    }
}

impl FromStr for BenchSolver {
    type Err = Error;

    fn from_str(s: &str) -> Result<BenchSolver> {
        match s {
            "auto" => Ok(BenchSolver::Auto),
            "exact" => Ok(BenchSolver::Exact),
            "approx" => Ok(BenchSolver::Approx),
            "ilp-export" | "ilp_export" => Ok(BenchSolver::IlpExport),
            other => Err(Error::BadConfig {
                msg: format!(
                    "unknown solver `{other}` (expected auto, exact, approx or ilp-export)"
                ),
            }),
        }
    }
}

/// A seeded batch of random instances to solve.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub n: usize,
    pub l: usize,
    pub kind: Kind,
    pub mode: BenchMode,
    pub count: usize,
    pub base_seed: u64,
    pub solver: BenchSolver,
    /// CSV output path; per-instance `.lp` exports land next to it.
    pub out: Option<PathBuf>,
    /// Wall-clock budget per instance for the proving stages.
    pub budget_ms: u64,
}

impl ExperimentConfig {
    /// A batch with the default solver pipeline and a 10s per-instance budget.
    pub fn new(n: usize, l: usize, kind: Kind, mode: BenchMode) -> ExperimentConfig {
        ExperimentConfig {
            n,
            l,
            kind,
            mode,
            count: 1,
            base_seed: 0,
            solver: BenchSolver::Auto,
            out: None,
            budget_ms: 10_000,
        }
    }
}

/// Per-instance outcome of a batch run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunRow {
    pub index: usize,
    pub seed: u64,
    pub n: usize,
    pub l: usize,
    pub kind: Kind,
    pub mode: BenchMode,
    /// Pairs in the reported matching.
    pub size: usize,
    /// Pairs in a maximum matching of the instance.
    pub max_size: usize,
    /// The reported matching has no blocking pair at all.
    pub stable: bool,
    /// Largest per-agent blocking count in the reported matching.
    pub max_bp: u32,
    pub total_bp: u32,
    pub blocking_agents: u32,
    pub solve_ms: u64,
    /// The reported matching is provably optimal for the batch mode.
    pub optimal: bool,
}

/// An instance the batch could not solve (generation or solver error).
#[derive(Debug, Clone)]
pub struct RunFailure {
    pub index: usize,
    pub seed: u64,
    pub message: String,
}

/// CSV column order for [`RunRow`].
pub const CSV_HEADER: &str =
    "index,seed,n,l,kind,mode,size,max_size,stable,max_bp,total_bp,blocking_agents,solve_ms,optimal";

impl RunRow {
    /// One CSV line, no terminator.
    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.index,
            self.seed,
            self.n,
            self.l,
            self.kind,
            self.mode,
            self.size,
            self.max_size,
            u8::from(self.stable),
            self.max_bp,
            self.total_bp,
            self.blocking_agents,
            self.solve_ms,
            u8::from(self.optimal),
        )
    }
}

/// Renders rows as a CSV document (header, LF line endings).
pub fn rows_to_csv(rows: &[RunRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&row.to_csv());
        out.push('\n');
    }
    out
}

// ---------------------------------------------------------------------------
// Solving pipeline
// ---------------------------------------------------------------------------

/// All stable matchings of an instance match the same set of agents, so one
/// stability probe settles whether value 0 is attainable for the mode.
fn stable_matching(inst: &Instance) -> Result<Option<Matching>> {
    match inst.kind() {
        Kind::Smi => gale_shapley(inst, 0).map(Some),
        Kind::Sri => Ok(irving(inst)),
    }
}

/// Exact short-list solve for the mode; only valid when no list exceeds 2.
pub fn solve_shortlist(inst: &Instance, mode: BenchMode) -> Result<Matching> {
    match mode {
        BenchMode::Minimax => minimax_deg2_sri(inst),
        BenchMode::MinimaxMax => match inst.kind() {
            Kind::Smi => minimax_maxcard_deg2_smi(inst, 0),
            Kind::Sri => rematch_to_minimax_one(inst, max_matching_deg2(inst)?),
        },
    }
}

/// The staged pipeline behind [`BenchSolver::Auto`]. Returns the reported
/// matching and whether its value is proven optimal for the mode.
pub fn solve_auto(inst: &Instance, mode: BenchMode, budget: Duration) -> Result<(Matching, bool)> {
    let deadline = Instant::now() + budget;
    let max_size = max_matching_size(inst);

    // Value 0 is attainable exactly when a stable matching exists (and, for
    // the maximum-cardinality mode, is itself maximum).
    if let Some(m) = stable_matching(inst)? {
        if mode == BenchMode::Minimax || m.size() == max_size {
            return Ok((m, true));
        }
    }

    if inst.max_degree() <= 2 {
        return Ok((solve_shortlist(inst, mode)?, true));
    }

    // The balanced-cut matching bounds the optimum from above; under the
    // maximum-cardinality constraint only when it happens to be maximum.
    let approx = approx_minimax(inst)?;
    let approx_value = blocking_report(inst, &approx.matching)?.max_bp;
    let upper =
        (mode == BenchMode::Minimax || approx.matching.size() == max_size).then_some(approx_value);

    let mut k = 1;
    loop {
        if upper == Some(k) {
            return Ok((approx.matching, true));
        }
        let left = deadline.saturating_duration_since(Instant::now());
        if left.is_zero() {
            break;
        }
        match decide_k_max_budgeted(inst, k, mode.cardinality(), left)? {
            DecideOutcome::Found(m) => return Ok((m, true)),
            DecideOutcome::Refuted => k += 1,
            DecideOutcome::TimedOut => break,
        }
    }

    // Budget exhausted: report the best unproven matching available.
    match mode {
        BenchMode::Minimax => Ok((approx.matching, false)),
        BenchMode::MinimaxMax => {
            let m = if approx.matching.size() == max_size {
                approx.matching
            } else {
                max_matching(inst)
            };
            Ok((m, false))
        }
    }
}

fn lp_export_paths(out: &Path, index: usize) -> (PathBuf, PathBuf) {
    let stem = out
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "bench".to_string());
    let dir = out.parent().map(Path::to_path_buf).unwrap_or_default();
    (
        dir.join(format!("{stem}_{index:04}.lp")),
        dir.join(format!("{stem}_{index:04}.vars.json")),
    )
}

fn run_one(config: &ExperimentConfig, index: usize) -> std::result::Result<RunRow, RunFailure> {
    let seed = config.base_seed.wrapping_add(index as u64);
    let fail = |message: String| RunFailure {
        index,
        seed,
        message,
    };
    let inst =
        gen_random(config.n, config.l, config.kind, seed).map_err(|e| fail(e.to_string()))?;

    if config.solver == BenchSolver::IlpExport {
        let out = config.out.as_ref().expect("checked in run_experiment");
        let model = build_model(&inst, config.mode.ilp_mode());
        let (lp, vars) = lp_export_paths(out, index);
        std::fs::write(&lp, model.to_lp_text())
            .map_err(|e| fail(format!("{}: {e}", lp.display())))?;
        std::fs::write(&vars, model.vars_json())
            .map_err(|e| fail(format!("{}: {e}", vars.display())))?;
    }

    let started = Instant::now();
    let budget = Duration::from_millis(config.budget_ms);
    let solved = match config.solver {
        BenchSolver::Auto | BenchSolver::IlpExport => solve_auto(&inst, config.mode, budget),
        BenchSolver::Exact => solve_exact(&inst, Objective::Minimax, config.mode.cardinality())
            .map(|r| (r.matching, true)),
        BenchSolver::Approx => approx_minimax(&inst).map(|r| (r.matching, false)),
    };
    let (matching, mut optimal) = solved.map_err(|e| fail(e.to_string()))?;
    let solve_ms = started.elapsed().as_millis() as u64;

    let max_size = max_matching_size(&inst);
    let report = blocking_report(&inst, &matching).map_err(|e| fail(e.to_string()))?;
    if config.solver == BenchSolver::Approx
        && report.stable
        && (config.mode == BenchMode::Minimax || matching.size() == max_size)
    {
        optimal = true;
    }
    Ok(RunRow {
        index,
        seed,
        n: config.n,
        l: config.l,
        kind: config.kind,
        mode: config.mode,
        size: matching.size(),
        max_size,
        stable: report.stable,
        max_bp: report.max_bp,
        total_bp: report.total_bp,
        blocking_agents: report.blocking_agents,
        solve_ms,
        optimal,
    })
}

/// Runs a seeded batch in parallel: instance `i` uses seed `base_seed + i`.
///
/// Returns the successful rows in index order plus the failed indices;
/// failures do not abort the batch and are not written to the CSV. When
/// `config.out` is set the CSV is written there (and the model-export solver
/// drops its `.lp` files next to it).
pub fn run_experiment(config: &ExperimentConfig) -> Result<(Vec<RunRow>, Vec<RunFailure>)> {
    if config.solver == BenchSolver::IlpExport && config.out.is_none() {
        return Err(Error::BadConfig {
            msg: "model export needs an output path to name the .lp files after".into(),
        });
    }
    if config.budget_ms == 0 {
        return Err(Error::BadConfig {
            msg: "per-instance budget must be positive".into(),
        });
    }
    let outcomes: Vec<std::result::Result<RunRow, RunFailure>> = (0..config.count)
        .into_par_iter()
        .map(|i| run_one(config, i))
        .collect();
    let mut rows = Vec::with_capacity(config.count);
    let mut failures = Vec::new();
    for outcome in outcomes {
        match outcome {
            Ok(row) => rows.push(row),
            Err(failure) => failures.push(failure),
        }
    }
    if let Some(out) = &config.out {
        std::fs::write(out, rows_to_csv(&rows))?;
    }
    Ok((rows, failures))
}

// ---------------------------------------------------------------------------
// Aggregation
// ---------------------------------------------------------------------------

/// Aggregate view of a batch. Quality statistics (`stable_pct`,
/// `mean_max_bp`, `max_max_bp`, `mean_total_bp`) are computed over the proven
/// rows only, since an unproven row reports an upper bound, not the optimum;
/// `mean_solve_ms` and `mean_size` cover every row.
#[derive(Debug, Clone, PartialEq)]
pub struct Summary {
    pub rows: usize,
    pub proven: usize,
    pub stable_pct: f64,
    pub mean_max_bp: f64,
    pub max_max_bp: u32,
    pub mean_total_bp: f64,
    pub mean_size: f64,
    pub mean_solve_ms: f64,
}

impl Summary {
    /// Share of rows the pipeline failed to prove optimal.
    pub fn unproven_fraction(&self) -> f64 {
        (self.rows - self.proven) as f64 / self.rows as f64
    }
}

/// Aggregates a batch; errors on an empty one.
pub fn summarize(rows: &[RunRow]) -> Result<Summary> {
    if rows.is_empty() {
        return Err(Error::Empty {
            msg: "cannot summarise an empty batch".into(),
        });
    }
    let proven: Vec<&RunRow> = rows.iter().filter(|r| r.optimal).collect();
    let pf = |num: usize, den: usize| {
        if den == 0 {
            0.0
        } else {
            num as f64 / den as f64
        }
    };
    Ok(Summary {
        rows: rows.len(),
        proven: proven.len(),
        stable_pct: 100.0 * pf(proven.iter().filter(|r| r.stable).count(), proven.len()),
        mean_max_bp: pf(proven.iter().map(|r| r.max_bp as usize).sum(), proven.len()),
        max_max_bp: proven.iter().map(|r| r.max_bp).max().unwrap_or(0),
        mean_total_bp: pf(
            proven.iter().map(|r| r.total_bp as usize).sum(),
            proven.len(),
        ),
        mean_size: pf(rows.iter().map(|r| r.size).sum(), rows.len()),
        mean_solve_ms: pf(rows.iter().map(|r| r.solve_ms as usize).sum(), rows.len()),
    })
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:<22} {:>10}", "rows", self.rows)?;
        writeln!(f, "{:<22} {:>10}", "proven optimal", self.proven)?;
        writeln!(f, "{:<22} {:>10.2}", "stable %", self.stable_pct)?;
        writeln!(f, "{:<22} {:>10.3}", "mean max_bp", self.mean_max_bp)?;
        writeln!(f, "{:<22} {:>10}", "max max_bp", self.max_max_bp)?;
        writeln!(f, "{:<22} {:>10.3}", "mean total_bp", self.mean_total_bp)?;
        writeln!(f, "{:<22} {:>10.2}", "mean size", self.mean_size)?;
        write!(f, "{:<22} {:>10.2}", "mean solve ms", self.mean_solve_ms)
    }
}
