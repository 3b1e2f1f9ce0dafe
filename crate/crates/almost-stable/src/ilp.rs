//! Integer-programming formulation of the minimax problem, exported as LP
//! text for external solvers. No solver is embedded; [`check_solution`]
//! verifies an assignment produced elsewhere.
//!
//! Variables, one per mutually acceptable pair `{i, j}` with `i < j`:
//!
//! - `x_i_j`: the pair is in the matching;
//! - `b_i_j`: the pair is allowed to block;
//! - `r`: the cap on how many blocking pairs any one agent is in.
//!
//! Rows: each agent is in at most one pair (`m_i`); for each pair, either
//! one side is matched at least as well as the other, or `b_i_j` is forced
//! to 1 (`s_i_j` — the `x_i_j` term arises once from each side, hence
//! coefficient 2); each agent's `b` variables sum to at most `r` (`c_i`).
//!
//! Modes: `MINIMAX` minimises `r` over all matchings; `MINIMAX_MAX`
//! maximises `W·Σx − r` with `W` larger than any possible `r`, so
//! cardinality dominates and `r` breaks ties — the minimax value over
//! maximum-cardinality matchings.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::instance::ext;
use crate::{Error, Instance, Kind, Result};

/// Which objective the model encodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IlpMode {
    /// Minimise `r` over all matchings.
    Minimax,
    /// Restrict to maximum-cardinality matchings, then minimise `r`.
    MinimaxMax,
}

impl fmt::Display for IlpMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IlpMode::Minimax => "MINIMAX",
            IlpMode::MinimaxMax => "MINIMAX_MAX",
        })
    }
}

impl FromStr for IlpMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "minimax" => Ok(IlpMode::Minimax),
            "minimax-max" | "minimax_max" => Ok(IlpMode::MinimaxMax),
            other => Err(Error::BadConfig {
                msg: format!("unknown ilp mode '{other}' (expected minimax or minimax-max)"),
            }),
        }
    }
}

/// One linear row: `terms (<=|>=) rhs`.
#[derive(Debug, Clone)]
pub struct IlpRow {
    pub name: String,
    /// Terms in emission order; coefficients already merged per variable.
    pub terms: Vec<(String, i64)>,
    /// `true` for `<=`, `false` for `>=`.
    pub is_le: bool,
    pub rhs: i64,
}

impl IlpRow {
    fn holds(&self, value_of: impl Fn(&str) -> i64) -> bool {
        let lhs: i64 = self.terms.iter().map(|(v, c)| c * value_of(v)).sum();
        if self.is_le {
            lhs <= self.rhs
        } else {
            lhs >= self.rhs
        }
    }
}

/// A fully built model, ready for deterministic text export.
#[derive(Debug, Clone)]
pub struct IlpModel {
    pub mode: IlpMode,
    pub kind: Kind,
    pub n: usize,
    /// `true` when the objective is maximised.
    pub maximize: bool,
    pub objective: Vec<(String, i64)>,
    pub rows: Vec<IlpRow>,
    /// `x_i_j` names in ascending pair order.
    pub x_vars: Vec<String>,
    /// `b_i_j` names in ascending pair order.
    pub b_vars: Vec<String>,
    /// Upper bound on `r` (the largest list length).
    pub r_upper: i64,
}

fn x_name(i: usize, j: usize) -> String {
    format!("x_{}_{}", ext(i.min(j)), ext(i.max(j)))
}

fn b_name(i: usize, j: usize) -> String {
    format!("b_{}_{}", ext(i.min(j)), ext(i.max(j)))
}

fn add_term(terms: &mut Vec<(String, i64)>, name: String, coeff: i64) {
    if let Some(t) = terms.iter_mut().find(|(v, _)| *v == name) {
        t.1 += coeff;
    } else {
        terms.push((name, coeff));
    }
}

/// Build the model for an instance in the given mode.
pub fn build_model(inst: &Instance, mode: IlpMode) -> IlpModel {
    let n = inst.n();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for i in 0..n {
        let mut with_i: Vec<usize> = inst.prefs(i).iter().copied().filter(|&j| j > i).collect();
        with_i.sort_unstable();
        pairs.extend(with_i.into_iter().map(|j| (i, j)));
    }

    let x_vars: Vec<String> = pairs.iter().map(|&(i, j)| x_name(i, j)).collect();
    let b_vars: Vec<String> = pairs.iter().map(|&(i, j)| b_name(i, j)).collect();
    let d_max = inst.max_degree() as i64;

    let mut rows = Vec::new();
    // Matching rows: every agent, vacuous "0 r" row for empty lists so each
    // agent appears in the export.
    for i in 0..n {
        let mut terms = Vec::new();
        for &k in inst.prefs(i) {
            add_term(&mut terms, x_name(i, k), 1);
        }
        if terms.is_empty() {
            terms.push(("r".to_string(), 0));
        }
        rows.push(IlpRow {
            name: format!("m_{}", ext(i)),
            terms,
            is_le: true,
            rhs: 1,
        });
    }
    // Stability rows: one per pair; x_i_j collects 1 from each endpoint.
    for &(i, j) in &pairs {
        let mut terms = Vec::new();
        for &k in inst.prefs(i) {
            add_term(&mut terms, x_name(i, k), 1);
            if k == j {
                break;
            }
        }
        for &k in inst.prefs(j) {
            add_term(&mut terms, x_name(j, k), 1);
            if k == i {
                break;
            }
        }
        add_term(&mut terms, b_name(i, j), 1);
        rows.push(IlpRow {
            name: format!("s_{}_{}", ext(i), ext(j)),
            terms,
            is_le: false,
            rhs: 1,
        });
    }
    // Cap rows: each agent's blocking involvement stays under r.
    for i in 0..n {
        let mut terms = Vec::new();
        for &k in inst.prefs(i) {
            add_term(&mut terms, b_name(i, k), 1);
        }
        terms.push(("r".to_string(), -1));
        rows.push(IlpRow {
            name: format!("c_{}", ext(i)),
            terms,
            is_le: true,
            rhs: 0,
        });
    }

    let (maximize, objective) = match mode {
        IlpMode::Minimax => (false, vec![("r".to_string(), 1)]),
        IlpMode::MinimaxMax => {
            // W = n + 1 strictly exceeds the r bound, so cardinality wins.
            let w = n as i64 + 1;
            let mut obj: Vec<(String, i64)> = x_vars.iter().map(|v| (v.clone(), w)).collect();
            obj.push(("r".to_string(), -1));
            (true, obj)
        }
    };

    IlpModel {
        mode,
        kind: inst.kind(),
        n,
        maximize,
        objective,
        rows,
        x_vars,
        b_vars,
        r_upper: d_max,
    }
}

fn fmt_terms(terms: &[(String, i64)]) -> String {
    let mut s = String::new();
    for (idx, (name, coeff)) in terms.iter().enumerate() {
        if idx == 0 {
            if *coeff < 0 {
                s.push_str("- ");
            }
        } else if *coeff < 0 {
            s.push_str(" - ");
        } else {
            s.push_str(" + ");
        }
        let mag = coeff.abs();
        if mag != 1 {
            s.push_str(&mag.to_string());
            s.push(' ');
        }
        s.push_str(name);
    }
    s
}

impl IlpModel {
    /// Render the model as LP text. The output is fully deterministic:
    /// byte-identical across rebuilds of the same instance and mode.
    pub fn to_lp_text(&self) -> String {
        let mut out = String::new();
        out.push_str("\\ almost-stable linear program\n");
        out.push_str(&format!(
            "\\ kind: {}  agents: {}  mode: {}\n",
            self.kind, self.n, self.mode
        ));
        out.push_str(if self.maximize {
            "Maximize\n"
        } else {
            "Minimize\n"
        });
        out.push_str(&format!(" obj: {}\n", fmt_terms(&self.objective)));
        out.push_str("Subject To\n");
        for row in &self.rows {
            out.push_str(&format!(
                " {}: {} {} {}\n",
                row.name,
                fmt_terms(&row.terms),
                if row.is_le { "<=" } else { ">=" },
                row.rhs
            ));
        }
        out.push_str("Bounds\n");
        out.push_str(&format!(" 0 <= r <= {}\n", self.r_upper));
        out.push_str("Generals\n r\n");
        out.push_str("Binaries\n");
        for v in self.x_vars.iter().chain(self.b_vars.iter()) {
            out.push(' ');
            out.push_str(v);
            out.push('\n');
        }
        out.push_str("End\n");
        out
    }

    /// Sidecar JSON describing every variable, keyed by name.
    pub fn vars_json(&self) -> String {
        #[derive(Serialize)]
        struct VarInfo {
            role: &'static str,
            #[serde(skip_serializing_if = "Option::is_none")]
            agents: Option<[u32; 2]>,
        }
        let mut map: BTreeMap<&str, VarInfo> = BTreeMap::new();
        map.insert(
            "r",
            VarInfo {
                role: "max_blocking_cap",
                agents: None,
            },
        );
        let pair_of = |name: &str| -> [u32; 2] {
            let mut it = name[2..].split('_');
            let a: u32 = it.next().unwrap().parse().unwrap();
            let b: u32 = it.next().unwrap().parse().unwrap();
            [a, b]
        };
        for v in &self.x_vars {
            map.insert(
                v,
                VarInfo {
                    role: "matched",
                    agents: Some(pair_of(v)),
                },
            );
        }
        for v in &self.b_vars {
            map.insert(
                v,
                VarInfo {
                    role: "blocking",
                    agents: Some(pair_of(v)),
                },
            );
        }
        let mut text = serde_json::to_string_pretty(&map).expect("map serializes");
        text.push('\n');
        text
    }

    /// All variable names the model uses.
    pub fn variables(&self) -> impl Iterator<Item = &str> {
        self.x_vars
            .iter()
            .map(String::as_str)
            .chain(self.b_vars.iter().map(String::as_str))
            .chain(std::iter::once("r"))
    }
}

/// Check an external solver's assignment against the model.
///
/// Every model variable must be present (`MISSING_VARIABLE` otherwise;
/// extra keys are ignored). Returns whether the assignment is feasible and
/// the names of the violated rows and domain constraints.
pub fn check_solution(
    model: &IlpModel,
    assignment: &HashMap<String, i64>,
) -> Result<(bool, Vec<String>)> {
    for v in model.variables() {
        if !assignment.contains_key(v) {
            return Err(Error::MissingVariable {
                name: v.to_string(),
            });
        }
    }
    let value_of = |name: &str| assignment[name];

    let mut violated = Vec::new();
    for v in model.x_vars.iter().chain(model.b_vars.iter()) {
        let val = value_of(v);
        if val != 0 && val != 1 {
            violated.push(format!("binary({v})"));
        }
    }
    let r = value_of("r");
    if r < 0 || r > model.r_upper {
        violated.push("bounds(r)".to_string());
    }
    for row in &model.rows {
        if !row.holds(value_of) {
            violated.push(row.name.clone());
        }
    }
    Ok((violated.is_empty(), violated))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Instance {
        Instance::parse(text).unwrap()
    }

    fn assign(model: &IlpModel, x: &[i64], b: &[i64], r: i64) -> HashMap<String, i64> {
        let mut a = HashMap::new();
        for (v, &val) in model.x_vars.iter().zip(x) {
            a.insert(v.clone(), val);
        }
        for (v, &val) in model.b_vars.iter().zip(b) {
            a.insert(v.clone(), val);
        }
        a.insert("r".to_string(), r);
        a
    }

    #[test]
    fn single_edge_lp_text_is_exact() {
        let inst = parse("kind: sri\nagents: 2\n1: 2\n2: 1\n");
        let model = build_model(&inst, IlpMode::Minimax);
        let expected = "\\ almost-stable linear program\n\
                        \\ kind: sri  agents: 2  mode: MINIMAX\n\
                        Minimize\n obj: r\n\
                        Subject To\n\
                        \x20m_1: x_1_2 <= 1\n\
                        \x20m_2: x_1_2 <= 1\n\
                        \x20s_1_2: 2 x_1_2 + b_1_2 >= 1\n\
                        \x20c_1: b_1_2 - r <= 0\n\
                        \x20c_2: b_1_2 - r <= 0\n\
                        Bounds\n 0 <= r <= 1\nGenerals\n r\nBinaries\n x_1_2\n b_1_2\nEnd\n";
        assert_eq!(model.to_lp_text(), expected);
        // Deterministic across rebuilds.
        assert_eq!(build_model(&inst, IlpMode::Minimax).to_lp_text(), expected);
    }

    #[test]
    fn model_counts_follow_instance_shape() {
        let inst =
            parse("kind: sri\nagents: 6\n1: 2 3 4\n2: 3 1\n3: 1 2\n4: 5 6 1\n5: 6 4\n6: 4 5\n");
        let model = build_model(&inst, IlpMode::Minimax);
        assert_eq!(model.x_vars.len(), 7);
        assert_eq!(model.b_vars.len(), 7);
        assert_eq!(model.rows.len(), 6 + 7 + 6);
        assert_eq!(model.r_upper, 3);
    }

    #[test]
    fn empty_lists_get_vacuous_rows() {
        let inst = parse("kind: sri\nagents: 3\n1: 2\n2: 1\n");
        let model = build_model(&inst, IlpMode::Minimax);
        let text = model.to_lp_text();
        assert!(text.contains(" m_3: 0 r <= 1\n"));
        assert!(text.contains(" c_3: - r <= 0\n"));
    }

    #[test]
    fn maxcard_weight_exceeds_cap_bound() {
        let inst = parse("kind: smi\nagents: 4\n1: 3 4\n2: 3\n3: 1 2\n4: 1\n");
        let model = build_model(&inst, IlpMode::MinimaxMax);
        assert!(model.maximize);
        let (first, w) = &model.objective[0];
        assert_eq!(first, "x_1_3");
        assert_eq!(*w, 5);
        assert_eq!(model.objective.last().unwrap(), &("r".to_string(), -1));
    }

    #[test]
    fn check_solution_accepts_and_rejects() {
        let inst = parse("kind: sri\nagents: 2\n1: 2\n2: 1\n");
        let model = build_model(&inst, IlpMode::Minimax);
        // Matched pair, nothing blocks.
        let (ok, bad) = check_solution(&model, &assign(&model, &[1], &[0], 0)).unwrap();
        assert!(ok, "violations: {bad:?}");
        // Unmatched and not flagged as blocking: stability row fails.
        let (ok, bad) = check_solution(&model, &assign(&model, &[0], &[0], 0)).unwrap();
        assert!(!ok);
        assert_eq!(bad, vec!["s_1_2".to_string()]);
        // Flagged as blocking but r = 0: both cap rows fail.
        let (ok, bad) = check_solution(&model, &assign(&model, &[0], &[1], 0)).unwrap();
        assert!(!ok);
        assert_eq!(bad, vec!["c_1".to_string(), "c_2".to_string()]);
        // r = 1 pays for the blocking pair.
        let (ok, _) = check_solution(&model, &assign(&model, &[0], &[1], 1)).unwrap();
        assert!(ok);
    }

    #[test]
    fn check_solution_requires_every_variable() {
        let inst = parse("kind: sri\nagents: 2\n1: 2\n2: 1\n");
        let model = build_model(&inst, IlpMode::Minimax);
        let mut a = assign(&model, &[1], &[0], 0);
        a.remove("b_1_2");
        assert!(matches!(
            check_solution(&model, &a),
            Err(Error::MissingVariable { name }) if name == "b_1_2"
        ));
    }

    #[test]
    fn domain_violations_are_reported() {
        let inst = parse("kind: sri\nagents: 2\n1: 2\n2: 1\n");
        let model = build_model(&inst, IlpMode::Minimax);
        let (ok, bad) = check_solution(&model, &assign(&model, &[2], &[0], 9)).unwrap();
        assert!(!ok);
        assert!(bad.contains(&"binary(x_1_2)".to_string()));
        assert!(bad.contains(&"bounds(r)".to_string()));
    }

    #[test]
    fn mode_round_trips_through_strings() {
        assert_eq!("minimax".parse::<IlpMode>().unwrap(), IlpMode::Minimax);
        assert_eq!(
            "minimax-max".parse::<IlpMode>().unwrap(),
            IlpMode::MinimaxMax
        );
        assert_eq!(IlpMode::MinimaxMax.to_string(), "MINIMAX_MAX");
        assert!("best".parse::<IlpMode>().is_err());
    }
}
