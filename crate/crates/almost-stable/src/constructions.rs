//! Hand-built instance families with known optima, and reductions from
//! bounded-occurrence satisfiability.
//!
//! Three families live here:
//!
//! * [`nested_cycles`]: solvable-free instances on `3^k` agents whose best
//!   matching still leaves one agent in `k` blocking pairs. The witness
//!   matching from [`nested_cycles_witness`] attains that bound.
//! * [`pendant_hub`]: bipartite instances on `2(k+1)` agents whose unique
//!   maximum matching forces `k` blocking pairs onto the hub agent, while a
//!   smaller stable matching exists. They separate the plain minimax
//!   objective from its maximum-cardinality variant.
//! * [`reduce_sat_to_sri`] / [`reduce_sat_to_smi`]: gadget reductions from
//!   (2,2)-E3-SAT showing that deciding "is there a matching where nobody is
//!   in more than one blocking pair?" is hard even on short lists. Satisfying
//!   assignments convert to witness matchings and back.
//!
//! [`attach_forcing_gadget`] exposes the building block the reductions use to
//! pin an agent into a matching: a nested-cycles block grafted onto an
//! existing agent so that leaving that agent unmatched costs some agent at
//! least two blocking pairs.

use crate::blocking::blocking_report;
use crate::error::Error;
use crate::instance::{Instance, Kind};
use crate::matching::Matching;
use crate::Result;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt;
use std::ops::Range;

/// Largest supported nesting depth. `3^7 = 2187` agents with complete lists
/// is already past what the exact solver or a text file can usefully hold.
pub const MAX_NESTING: u32 = 7;

// ---------------------------------------------------------------------------
// Nested preference cycles
// ---------------------------------------------------------------------------

/// Preference lists of the nested-cycle construction over `3^k` positions,
/// 0-based. Position lists reference positions; callers map positions to
/// agent ids.
///
/// Level 1 splits the positions into consecutive triples; each position ranks
/// its successor inside the triple first and its predecessor second. Every
/// higher level `j` groups `3^j` consecutive positions into a block of three
/// sub-blocks; each position appends the whole successor sub-block and then
/// the whole predecessor sub-block, members in increasing order. Lists end up
/// complete within the block of `3^k` positions.
fn nested_positions(k: u32) -> Vec<Vec<usize>> {
    let n = 3usize.pow(k);
    let mut prefs = vec![Vec::with_capacity(n - 1); n];
    for level in 1..=k {
        let block = 3usize.pow(level);
        let sub = block / 3;
        for (p, list) in prefs.iter_mut().enumerate() {
            let block_start = p / block * block;
            let t = (p - block_start) / sub;
            let succ = block_start + (t + 1) % 3 * sub;
            let pred = block_start + (t + 2) % 3 * sub;
            list.extend(succ..succ + sub);
            list.extend(pred..pred + sub);
        }
    }
    prefs
}

/// Builds the nested-cycle instance on `n = 3^k` agents, `1 <= k <= 7`.
///
/// The instance admits no stable matching, and no matching at all keeps every
/// agent below `k` blocking pairs; [`nested_cycles_witness`] attains `k`.
pub fn nested_cycles(k: u32) -> Result<Instance> {
    if !(1..=MAX_NESTING).contains(&k) {
        return Err(Error::BadK {
            msg: format!("nesting depth must be between 1 and {MAX_NESTING}, got {k}"),
        });
    }
    Instance::from_prefs(Kind::Sri, nested_positions(k))
}

/// Witness matching for [`nested_cycles`]: consecutive agents paired up,
/// `{1,2}, {3,4}, ...`, with the last agent left unmatched. No agent is in
/// more than `k` blocking pairs.
pub fn nested_cycles_witness(k: u32) -> Result<Matching> {
    if !(1..=MAX_NESTING).contains(&k) {
        return Err(Error::BadK {
            msg: format!("nesting depth must be between 1 and {MAX_NESTING}, got {k}"),
        });
    }
    let n = 3usize.pow(k);
    let mut partner = vec![None; n];
    let mut i = 0;
    while i + 1 < n {
        partner[i] = Some(i + 1);
        partner[i + 1] = Some(i);
        i += 2;
    }
    Ok(Matching::from_partner_unchecked(partner))
}

// ---------------------------------------------------------------------------
// Pendant hub family
// ---------------------------------------------------------------------------

/// Builds the pendant-hub instance on `n = 2(k+1)` agents, any `k >= 0`.
///
/// One hub agent ranks `k` spoke agents and then its own pendant; every spoke
/// ranks the hub first and its own pendant second; pendants rank only their
/// owner. The unique maximum matching pairs every agent with its pendant and
/// puts the hub in `k` blocking pairs, while the stable matching obtained by
/// proposals is smaller. Instances are bipartite: spokes and the hub's
/// pendant on one side, the hub and spoke pendants on the other.
pub fn pendant_hub(k: u32) -> Instance {
    let k = k as usize;
    let n = 2 * (k + 1);
    let spoke = |j: usize| 2 * j; // 0-based id of spoke j (0-based j < k)
    let pendant = |j: usize| 2 * j + 1;
    let hub = 2 * k;
    let hub_pendant = 2 * k + 1;
    let mut prefs = vec![Vec::new(); n];
    for j in 0..k {
        prefs[spoke(j)] = vec![hub, pendant(j)];
        prefs[pendant(j)] = vec![spoke(j)];
    }
    prefs[hub] = (0..k).map(spoke).chain([hub_pendant]).collect();
    prefs[hub_pendant] = vec![hub];
    Instance::from_prefs(Kind::Smi, prefs).expect("pendant hub construction is always valid")
}

/// The unique maximum matching of [`pendant_hub`]: every agent paired with
/// its pendant. The hub ends up in `k` blocking pairs, each spoke in one.
pub fn pendant_hub_witness(k: u32) -> Matching {
    let n = 2 * (k as usize + 1);
    let mut partner = vec![None; n];
    for i in (0..n).step_by(2) {
        partner[i] = Some(i + 1);
        partner[i + 1] = Some(i);
    }
    Matching::from_partner_unchecked(partner)
}

// ---------------------------------------------------------------------------
// Forcing gadget
// ---------------------------------------------------------------------------

/// Grafts a forcing gadget of `3^omega - 1` fresh agents onto `target`,
/// `2 <= omega <= 7`.
///
/// The fresh agents plus `target` form a nested-cycle block with `target` in
/// the first position: the fresh lists are complete within the block, and
/// `target` appends the block's first-position list after its existing
/// preferences. In any matching where some agent of the block is in at most
/// one blocking pair overall, `target` must be matched (inside or outside the
/// gadget); leaving it unmatched forces two blocking pairs onto a fresh
/// agent. Returns the id range of the fresh agents.
pub fn attach_forcing_gadget(
    prefs: &mut Vec<Vec<usize>>,
    target: usize,
    omega: u32,
) -> Result<Range<usize>> {
    if !(2..=MAX_NESTING).contains(&omega) {
        return Err(Error::BadOmega {
            msg: format!("gadget depth must be between 2 and {MAX_NESTING}, got {omega}"),
        });
    }
    if target >= prefs.len() {
        return Err(Error::BadConfig {
            msg: format!(
                "gadget target {} out of range for {} agents",
                target + 1,
                prefs.len()
            ),
        });
    }
    let base = prefs.len();
    let map = |pos: usize| if pos == 0 { target } else { base + pos - 1 };
    let positions = nested_positions(omega);
    for list in positions.iter().skip(1) {
        prefs.push(list.iter().map(|&p| map(p)).collect());
    }
    prefs[target].extend(positions[0].iter().map(|&p| map(p)));
    Ok(base..base + positions.len() - 1)
}

// ---------------------------------------------------------------------------
// Bounded-occurrence 3-SAT formulas
// ---------------------------------------------------------------------------

/// A literal: a 0-based variable index, possibly negated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Lit {
    pub var: usize,
    pub negated: bool,
}

impl Lit {
    /// True under the given assignment.
    pub fn satisfied_by(self, assignment: &[bool]) -> bool {
        assignment[self.var] != self.negated
    }
}

/// A CNF formula with exactly three literals per clause.
///
/// The reductions additionally require (2,2)-occurrence form — every variable
/// appearing exactly twice unnegated and twice negated — which
/// [`validate_22e3sat`] checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SatFormula {
    pub num_vars: usize,
    pub clauses: Vec<[Lit; 3]>,
}

impl SatFormula {
    /// Parses the text format: a `vars: N` header, then one clause per line
    /// as three signed integers (`-3` is the negation of variable 3; ids are
    /// 1-based). Blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<SatFormula> {
        let mut num_vars: Option<usize> = None;
        let mut clauses = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let Some(n) = num_vars else {
                let Some(rest) = body.strip_prefix("vars:") else {
                    return Err(Error::Malformed {
                        line,
                        msg: format!("expected `vars: N` header, got `{body}`"),
                    });
                };
                num_vars = Some(rest.trim().parse().map_err(|_| Error::Malformed {
                    line,
                    msg: format!("bad variable count `{}`", rest.trim()),
                })?);
                continue;
            };
            let mut lits = Vec::with_capacity(3);
            for tok in body.split_whitespace() {
                let v: i64 = tok.parse().map_err(|_| Error::Malformed {
                    line,
                    msg: format!("bad literal `{tok}`"),
                })?;
                if v == 0 || v.unsigned_abs() as usize > n {
                    return Err(Error::Malformed {
                        line,
                        msg: format!("literal {v} out of range for {n} variables"),
                    });
                }
                lits.push(Lit {
                    var: v.unsigned_abs() as usize - 1,
                    negated: v < 0,
                });
            }
            let arr: [Lit; 3] = lits.try_into().map_err(|bad: Vec<Lit>| Error::Malformed {
                line,
                msg: format!("clause must have exactly 3 literals, got {}", bad.len()),
            })?;
            clauses.push(arr);
        }
        let Some(num_vars) = num_vars else {
            return Err(Error::Malformed {
                line: text.lines().count() + 1,
                msg: "missing `vars: N` header".into(),
            });
        };
        Ok(SatFormula { num_vars, clauses })
    }

    /// Inverse of [`SatFormula::parse`].
    pub fn to_text(&self) -> String {
        let mut out = format!("vars: {}\n", self.num_vars);
        for clause in &self.clauses {
            let line: Vec<String> = clause
                .iter()
                .map(|l| {
                    let v = l.var as i64 + 1;
                    (if l.negated { -v } else { v }).to_string()
                })
                .collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    /// Whether every clause has a true literal under `assignment`.
    pub fn eval(&self, assignment: &[bool]) -> bool {
        self.satisfied_clauses(assignment) == self.clauses.len()
    }

    fn satisfied_clauses(&self, assignment: &[bool]) -> usize {
        self.clauses
            .iter()
            .filter(|c| c.iter().any(|l| l.satisfied_by(assignment)))
            .count()
    }

    /// Index of the first clause with no true literal, if any.
    fn first_unsatisfied(&self, assignment: &[bool]) -> Option<usize> {
        self.clauses
            .iter()
            .position(|c| !c.iter().any(|l| l.satisfied_by(assignment)))
    }
}

impl fmt::Display for SatFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Checks the (2,2)-occurrence invariants: every variable occurs exactly
/// twice unnegated and twice negated. Returns human-readable violations;
/// empty means the formula is valid (an empty formula vacuously is).
pub fn validate_22e3sat(formula: &SatFormula) -> Vec<String> {
    let mut pos = vec![0u32; formula.num_vars];
    let mut neg = vec![0u32; formula.num_vars];
    for clause in &formula.clauses {
        for lit in clause {
            if lit.negated {
                neg[lit.var] += 1;
            } else {
                pos[lit.var] += 1;
            }
        }
    }
    let mut violations = Vec::new();
    for v in 0..formula.num_vars {
        if pos[v] != 2 {
            violations.push(format!(
                "variable {} occurs {} times unnegated, expected 2",
                v + 1,
                pos[v]
            ));
        }
        if neg[v] != 2 {
            violations.push(format!(
                "variable {} occurs {} times negated, expected 2",
                v + 1,
                neg[v]
            ));
        }
    }
    violations
}

/// Generates a random satisfiable (2,2)-E3-SAT formula together with a
/// planted satisfying assignment. `num_vars` must be a positive multiple of
/// 3 (so that the forced clause count `4n/3` is integral). Deterministic in
/// `seed`.
pub fn random_planted_formula(num_vars: usize, seed: u64) -> Result<(SatFormula, Vec<bool>)> {
    if num_vars == 0 || !num_vars.is_multiple_of(3) {
        return Err(Error::BadConfig {
            msg: format!("variable count must be a positive multiple of 3, got {num_vars}"),
        });
    }
    let num_clauses = num_vars * 4 / 3;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let assignment: Vec<bool> = (0..num_vars).map(|_| rng.gen()).collect();

    'attempt: for _ in 0..10_000 {
        let mut tokens: Vec<Lit> = (0..num_vars)
            .flat_map(|var| {
                [false, false, true, true]
                    .into_iter()
                    .map(move |negated| Lit { var, negated })
            })
            .collect();
        tokens.shuffle(&mut rng);
        let mut clauses: Vec<Vec<Lit>> = tokens.chunks(3).map(<[Lit]>::to_vec).collect();

        // A clause repeating a variable is malformed for our purposes; swap
        // one of the duplicates into another clause that can absorb it.
        let dup_at = |c: &[Lit]| -> Option<usize> {
            (0..3).find(|&i| {
                c.iter()
                    .enumerate()
                    .any(|(j, l)| j != i && l.var == c[i].var)
            })
        };
        for a in 0..num_clauses {
            while let Some(ia) = dup_at(&clauses[a]) {
                let va = clauses[a][ia].var;
                let mut swapped = false;
                'scan: for b in 0..num_clauses {
                    if b == a {
                        continue;
                    }
                    for ib in 0..3 {
                        let vb = clauses[b][ib].var;
                        let a_ok = !clauses[a]
                            .iter()
                            .enumerate()
                            .any(|(j, l)| j != ia && l.var == vb);
                        let b_ok = !clauses[b]
                            .iter()
                            .enumerate()
                            .any(|(j, l)| j != ib && l.var == va);
                        if a_ok && b_ok {
                            let tmp = clauses[a][ia];
                            clauses[a][ia] = clauses[b][ib];
                            clauses[b][ib] = tmp;
                            swapped = true;
                            break 'scan;
                        }
                    }
                }
                if !swapped {
                    continue 'attempt;
                }
            }
        }

        // Make the planted assignment satisfying: move a surplus true token
        // into each all-false clause, keeping clauses duplicate-free.
        let is_true = |l: Lit| l.satisfied_by(&assignment);
        while let Some(a) = clauses.iter().position(|c| !c.iter().copied().any(is_true)) {
            let mut swapped = false;
            'donor: for b in 0..num_clauses {
                if b == a || clauses[b].iter().copied().filter(|&l| is_true(l)).count() < 2 {
                    continue;
                }
                for ib in (0..3).filter(|&ib| is_true(clauses[b][ib])) {
                    for ia in 0..3 {
                        let va = clauses[a][ia].var;
                        let vb = clauses[b][ib].var;
                        let a_ok = !clauses[a]
                            .iter()
                            .enumerate()
                            .any(|(j, l)| j != ia && l.var == vb);
                        let b_ok = !clauses[b]
                            .iter()
                            .enumerate()
                            .any(|(j, l)| j != ib && l.var == va);
                        if a_ok && b_ok {
                            let tmp = clauses[a][ia];
                            clauses[a][ia] = clauses[b][ib];
                            clauses[b][ib] = tmp;
                            swapped = true;
                            break 'donor;
                        }
                    }
                }
            }
            if !swapped {
                continue 'attempt;
            }
        }

        let formula = SatFormula {
            num_vars,
            clauses: clauses
                .into_iter()
                .map(|c| <[Lit; 3]>::try_from(c).expect("clauses hold exactly 3 literals"))
                .collect(),
        };
        debug_assert!(validate_22e3sat(&formula).is_empty());
        debug_assert!(formula.eval(&assignment));
        return Ok((formula, assignment));
    }
    Err(Error::BadConfig {
        msg: format!("failed to generate a planted formula on {num_vars} variables"),
    })
}

// ---------------------------------------------------------------------------
// Reductions from (2,2)-E3-SAT
// ---------------------------------------------------------------------------

/// Result of reducing a formula to a matching instance.
///
/// `agent_names[i]` is a structured name for agent `i+1` (variable-gadget and
/// clause-gadget roles); [`Instance::to_text_with_names`] embeds them as
/// comments. `literal_links[j][s]` is the 1-based id of the variable-gadget
/// agent wired to slot `s` of clause `j`.
#[derive(Debug, Clone)]
pub struct ReductionOutput {
    pub instance: Instance,
    pub kind: Kind,
    pub formula: SatFormula,
    pub agent_names: Vec<String>,
    pub literal_links: Vec<[u32; 3]>,
}

impl ReductionOutput {
    /// Instance text with agent-name comments.
    pub fn to_text(&self) -> String {
        self.instance.to_text_with_names(&self.agent_names)
    }
}

/// Occurrence bookkeeping: for each variable, the `(clause, slot)` positions
/// of its unnegated and negated occurrences, in formula order.
struct Occurrences {
    pos: Vec<Vec<(usize, usize)>>,
    neg: Vec<Vec<(usize, usize)>>,
}

fn collect_occurrences(formula: &SatFormula) -> Result<Occurrences> {
    let violations = validate_22e3sat(formula);
    if !violations.is_empty() {
        return Err(Error::InvalidFormula { violations });
    }
    let mut occ = Occurrences {
        pos: vec![Vec::new(); formula.num_vars],
        neg: vec![Vec::new(); formula.num_vars],
    };
    for (j, clause) in formula.clauses.iter().enumerate() {
        for (s, lit) in clause.iter().enumerate() {
            if lit.negated {
                occ.neg[lit.var].push((j, s));
            } else {
                occ.pos[lit.var].push((j, s));
            }
        }
    }
    Ok(occ)
}

/// Reduces a (2,2)-E3-SAT formula to a roommates instance on `20n + 3m`
/// agents (`n` variables, `m` clauses) such that the formula is satisfiable
/// exactly when some matching keeps every agent in at most one blocking pair.
///
/// Each variable contributes a true agent, a false agent and two selector
/// agents, with a forcing gadget of depth 2 grafted onto each selector; each
/// clause contributes a triangle of slot agents wired to the true/false agent
/// of its literal's variable. Lists have length at most 10.
pub fn reduce_sat_to_sri(formula: &SatFormula) -> Result<ReductionOutput> {
    let occ = collect_occurrences(formula)?;
    let n = formula.num_vars;
    let m = formula.clauses.len();

    let v_true = |i: usize| 20 * i;
    let v_false = |i: usize| 20 * i + 1;
    let sel1 = |i: usize| 20 * i + 2;
    let sel2 = |i: usize| 20 * i + 3;
    let slot = |j: usize, s: usize| 20 * n + 3 * j + s;

    let mut prefs: Vec<Vec<usize>> = Vec::with_capacity(20 * n + 3 * m);
    let mut names: Vec<String> = Vec::with_capacity(20 * n + 3 * m);
    for i in 0..n {
        let v = i + 1;
        prefs.push(vec![
            sel1(i),
            slot(occ.pos[i][0].0, occ.pos[i][0].1),
            slot(occ.pos[i][1].0, occ.pos[i][1].1),
            sel2(i),
        ]);
        prefs.push(vec![
            sel1(i),
            slot(occ.neg[i][0].0, occ.neg[i][0].1),
            slot(occ.neg[i][1].0, occ.neg[i][1].1),
            sel2(i),
        ]);
        prefs.push(vec![v_true(i), v_false(i)]);
        prefs.push(vec![v_true(i), v_false(i)]);
        names.extend([
            format!("vT_{v}"),
            format!("vF_{v}"),
            format!("v1_{v}"),
            format!("v2_{v}"),
        ]);
        for sel in [sel1(i), sel2(i)] {
            let fresh = attach_forcing_gadget(&mut prefs, sel, 2)?;
            let z = if sel == sel1(i) { 1 } else { 2 };
            names.extend(
                fresh
                    .clone()
                    .map(|id| format!("f_{v}_{}_{z}", id - fresh.start + 1)),
            );
        }
    }
    let mut literal_links = Vec::with_capacity(m);
    for (j, clause) in formula.clauses.iter().enumerate() {
        let mut links = [0u32; 3];
        for (s, lit) in clause.iter().enumerate() {
            let v = if lit.negated {
                v_false(lit.var)
            } else {
                v_true(lit.var)
            };
            prefs.push(vec![slot(j, (s + 1) % 3), slot(j, (s + 2) % 3), v]);
            names.push(format!("x_{}_{}", j + 1, s + 1));
            links[s] = v as u32 + 1;
        }
        literal_links.push(links);
    }

    Ok(ReductionOutput {
        instance: Instance::from_prefs(Kind::Sri, prefs)?,
        kind: Kind::Sri,
        formula: formula.clone(),
        agent_names: names,
        literal_links,
    })
}

/// Converts a satisfying assignment into a witness matching for
/// [`reduce_sat_to_sri`] output: every agent is in at most one blocking pair.
pub fn witness_from_assignment_sri(
    reduction: &ReductionOutput,
    assignment: &[bool],
) -> Result<Matching> {
    check_assignment(reduction, assignment, Kind::Sri)?;
    let n = reduction.formula.num_vars;
    let mut pairs = Vec::new();
    for i in 0..n {
        let base = 20 * i;
        let (v_true, v_false, sel1, sel2) = (base, base + 1, base + 2, base + 3);
        if assignment[i] {
            pairs.push((v_true, sel1));
            pairs.push((v_false, sel2));
        } else {
            pairs.push((v_true, sel2));
            pairs.push((v_false, sel1));
        }
        for gadget in [base + 4, base + 12] {
            for f in (0..8).step_by(2) {
                pairs.push((gadget + f, gadget + f + 1));
            }
        }
    }
    for (j, clause) in reduction.formula.clauses.iter().enumerate() {
        let s = clause
            .iter()
            .position(|l| l.satisfied_by(assignment))
            .expect("checked satisfying");
        let other = [(s + 1) % 3, (s + 2) % 3];
        pairs.push((
            20 * n + 3 * j + other[0].min(other[1]),
            20 * n + 3 * j + other[0].max(other[1]),
        ));
    }
    Matching::from_pairs(&reduction.instance, &pairs)
}

/// Reads a variable assignment back out of a matching in which no agent is in
/// more than one blocking pair: variable `i` is true exactly when its first
/// selector is matched to its true agent. Errors with `MALFORMED_WITNESS` if
/// the matching exceeds the blocking bound, leaves a selector unattached to a
/// truth agent, or yields a non-satisfying assignment.
pub fn extract_assignment_sri(
    reduction: &ReductionOutput,
    matching: &Matching,
) -> Result<Vec<bool>> {
    if reduction.kind != Kind::Sri {
        return Err(Error::MalformedWitness {
            msg: "reduction output is not a roommates reduction".into(),
        });
    }
    let report = blocking_report(&reduction.instance, matching)?;
    if report.max_bp > 1 {
        return Err(Error::MalformedWitness {
            msg: format!(
                "some agent is in {} blocking pairs; extraction needs at most 1",
                report.max_bp
            ),
        });
    }
    let n = reduction.formula.num_vars;
    let mut assignment = Vec::with_capacity(n);
    for i in 0..n {
        let base = 20 * i;
        match matching.partner(base + 2) {
            Some(p) if p == base => assignment.push(true),
            Some(p) if p == base + 1 => assignment.push(false),
            _ => {
                return Err(Error::MalformedWitness {
                    msg: format!(
                        "selector of variable {} is not matched to a truth agent",
                        i + 1
                    ),
                })
            }
        }
    }
    if !reduction.formula.eval(&assignment) {
        return Err(Error::MalformedWitness {
            msg: "extracted assignment does not satisfy the formula".into(),
        });
    }
    Ok(assignment)
}

/// Reduces a (2,2)-E3-SAT formula to a bipartite instance on `8(n + m)`
/// agents such that the formula is satisfiable exactly when some matching
/// keeps every agent in at most one blocking pair. All lists have length at
/// most 3.
///
/// Each variable contributes a cycle of four left agents and four right
/// agents with exactly two perfect matchings (true and false); each clause
/// contributes three slot agents, three guards, a collector and a sink, wired
/// so that a clause can only relax when one of its literals is true.
pub fn reduce_sat_to_smi(formula: &SatFormula) -> Result<ReductionOutput> {
    let occ = collect_occurrences(formula)?;
    let n = formula.num_vars;
    let m = formula.clauses.len();

    let x = |i: usize, r: usize| 8 * i + r - 1; // r in 1..=4
    let y = |i: usize, r: usize| 8 * i + 4 + r - 1;
    let c = |j: usize, s: usize| 8 * n + 8 * j + s; // s in 0..=2
    let p = |j: usize, s: usize| 8 * n + 8 * j + 3 + s;
    let q = |j: usize| 8 * n + 8 * j + 6;
    let z = |j: usize| 8 * n + 8 * j + 7;

    // x-agent wired to each clause slot, and clause slot wired from each
    // x-agent: first/second unnegated occurrence -> x1/x2, first/second
    // negated -> x3/x4.
    let mut clause_of_x = vec![[usize::MAX; 4]; n];
    let mut x_of_slot = vec![[usize::MAX; 3]; m];
    for i in 0..n {
        for (which, &(j, s)) in occ.pos[i].iter().enumerate() {
            clause_of_x[i][which] = c(j, s);
            x_of_slot[j][s] = x(i, which + 1);
        }
        for (which, &(j, s)) in occ.neg[i].iter().enumerate() {
            clause_of_x[i][2 + which] = c(j, s);
            x_of_slot[j][s] = x(i, which + 3);
        }
    }

    let mut prefs: Vec<Vec<usize>> = vec![Vec::new(); 8 * (n + m)];
    let mut names: Vec<String> = vec![String::new(); 8 * (n + m)];
    for i in 0..n {
        let v = i + 1;
        prefs[x(i, 1)] = vec![y(i, 1), clause_of_x[i][0], y(i, 2)];
        prefs[x(i, 2)] = vec![y(i, 2), clause_of_x[i][1], y(i, 3)];
        prefs[x(i, 3)] = vec![y(i, 4), clause_of_x[i][2], y(i, 3)];
        prefs[x(i, 4)] = vec![y(i, 1), clause_of_x[i][3], y(i, 4)];
        prefs[y(i, 1)] = vec![x(i, 1), x(i, 4)];
        prefs[y(i, 2)] = vec![x(i, 1), x(i, 2)];
        prefs[y(i, 3)] = vec![x(i, 2), x(i, 3)];
        prefs[y(i, 4)] = vec![x(i, 3), x(i, 4)];
        for r in 1..=4 {
            names[x(i, r)] = format!("vx_{v}_{r}");
            names[y(i, r)] = format!("vy_{v}_{r}");
        }
    }
    let mut literal_links = Vec::with_capacity(m);
    for j in 0..m {
        let mut links = [0u32; 3];
        for s in 0..3 {
            prefs[c(j, s)] = vec![p(j, s), x_of_slot[j][s], q(j)];
            prefs[p(j, s)] = vec![c(j, s), z(j)];
            names[c(j, s)] = format!("c_{}_{}", j + 1, s + 1);
            names[p(j, s)] = format!("p_{}_{}", j + 1, s + 1);
            links[s] = x_of_slot[j][s] as u32 + 1;
        }
        prefs[q(j)] = vec![c(j, 0), c(j, 1), c(j, 2)];
        prefs[z(j)] = vec![p(j, 0), p(j, 1), p(j, 2)];
        names[q(j)] = format!("q_{}", j + 1);
        names[z(j)] = format!("z_{}", j + 1);
        literal_links.push(links);
    }

    Ok(ReductionOutput {
        instance: Instance::from_prefs(Kind::Smi, prefs)?,
        kind: Kind::Smi,
        formula: formula.clone(),
        agent_names: names,
        literal_links,
    })
}

/// Converts a satisfying assignment into a perfect witness matching for
/// [`reduce_sat_to_smi`] output: exactly `n + m` blocking pairs in total and
/// no agent in more than one.
pub fn witness_from_assignment_smi(
    reduction: &ReductionOutput,
    assignment: &[bool],
) -> Result<Matching> {
    check_assignment(reduction, assignment, Kind::Smi)?;
    let n = reduction.formula.num_vars;
    let mut pairs = Vec::new();
    for i in 0..n {
        let x = |r: usize| 8 * i + r - 1;
        let y = |r: usize| 8 * i + 4 + r - 1;
        if assignment[i] {
            pairs.extend((1..=4).map(|r| (x(r), y(r))));
        } else {
            pairs.extend((1..=4).map(|r| (x(r), y(r % 4 + 1))));
        }
    }
    for (j, clause) in reduction.formula.clauses.iter().enumerate() {
        let base = 8 * n + 8 * j;
        let s = clause
            .iter()
            .position(|l| l.satisfied_by(assignment))
            .expect("checked satisfying");
        pairs.push((base + s, base + 6)); // satisfied slot takes the collector
        pairs.push((base + 3 + s, base + 7)); // its guard takes the sink
        for other in (0..3).filter(|&t| t != s) {
            pairs.push((base + other, base + 3 + other));
        }
    }
    Matching::from_pairs(&reduction.instance, &pairs)
}

/// Reads a variable assignment back out of a matching in which no agent is in
/// more than one blocking pair, for [`reduce_sat_to_smi`] output.
pub fn extract_assignment_smi(
    reduction: &ReductionOutput,
    matching: &Matching,
) -> Result<Vec<bool>> {
    if reduction.kind != Kind::Smi {
        return Err(Error::MalformedWitness {
            msg: "reduction output is not a bipartite reduction".into(),
        });
    }
    let report = blocking_report(&reduction.instance, matching)?;
    if report.max_bp > 1 {
        return Err(Error::MalformedWitness {
            msg: format!(
                "some agent is in {} blocking pairs; extraction needs at most 1",
                report.max_bp
            ),
        });
    }
    let n = reduction.formula.num_vars;
    let mut assignment = Vec::with_capacity(n);
    for i in 0..n {
        match matching.partner(8 * i) {
            Some(p) if p == 8 * i + 4 => assignment.push(true),
            Some(p) if p == 8 * i + 5 => assignment.push(false),
            _ => {
                return Err(Error::MalformedWitness {
                    msg: format!(
                        "left agent of variable {} is not matched within its gadget",
                        i + 1
                    ),
                })
            }
        }
    }
    if !reduction.formula.eval(&assignment) {
        return Err(Error::MalformedWitness {
            msg: "extracted assignment does not satisfy the formula".into(),
        });
    }
    Ok(assignment)
}

fn check_assignment(reduction: &ReductionOutput, assignment: &[bool], kind: Kind) -> Result<()> {
    if reduction.kind != kind {
        return Err(Error::BadConfig {
            msg: format!(
                "reduction output is a {} reduction, not {}",
                reduction.kind, kind
            ),
        });
    }
    if assignment.len() != reduction.formula.num_vars {
        return Err(Error::BadConfig {
            msg: format!(
                "assignment has {} values for {} variables",
                assignment.len(),
                reduction.formula.num_vars
            ),
        });
    }
    if let Some(j) = reduction.formula.first_unsatisfied(assignment) {
        return Err(Error::UnsatisfyingAssignment { clause: j + 1 });
    }
    Ok(())
}
