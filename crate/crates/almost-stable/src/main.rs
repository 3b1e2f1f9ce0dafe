//! Command-line front end: every library capability as a subcommand.
//!
//! Subcommands read instances in the crate's text format and print a JSON
//! result record to standard output; files are written only when `--out` is
//! given. Exit codes: 0 on success, 2 on any validation error, 3 when the
//! exact search refuses an instance as too large or the cardinality
//! constraint is infeasible.

use almost_stable::bench::{self, BenchMode, BenchSolver, ExperimentConfig, RunFailure};
use almost_stable::constructions::{
    nested_cycles, nested_cycles_witness, pendant_hub, pendant_hub_witness, reduce_sat_to_smi,
    reduce_sat_to_sri, SatFormula,
};
use almost_stable::exact::{solve_exact_capped, DEFAULT_CAP};
use almost_stable::ilp::{build_model, IlpMode};
use almost_stable::localsearch::approx_minimax;
use almost_stable::report::ResultRecord;
use almost_stable::{
    blocking_report, BlockingReport, CardinalityConstraint, Error, Instance, Kind, Matching,
    Objective, Result,
};
use clap::{Parser, Subcommand};
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

#[derive(Parser)]
#[command(
    name = "almost-stable",
    version,
    about = "Matchings that minimise the most blocking pairs any agent is in"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance, routing by shape: exact short-list algorithms when
    /// no list is longer than 2, otherwise the chosen solver.
    Solve {
        /// Instance file.
        #[arg(long)]
        instance: PathBuf,
        /// Objective flavour: minimax, or minimax-max over maximum matchings.
        #[arg(long, default_value = "minimax")]
        mode: BenchMode,
        /// Fallback solver for longer lists: auto, exact or approx.
        #[arg(long, default_value = "auto")]
        solver: BenchSolver,
        /// Wall-clock budget for the auto solver's proving stages.
        #[arg(long, default_value_t = 10_000)]
        budget_ms: u64,
        /// Also write the result record here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Balanced-cut approximation; reports each agent's blocking count next
    /// to its ceil(d_i/2) guarantee.
    Approx {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact branch-and-bound optimum for a chosen objective.
    Exact {
        #[arg(long)]
        instance: PathBuf,
        /// minimax, minbp or minba.
        #[arg(long, default_value = "minimax")]
        objective: Objective,
        /// any, max or perfect.
        #[arg(long, default_value = "any")]
        cardinality: CardinalityConstraint,
        /// Agent-count cap; instances above it are refused (exit 3).
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit a hard-family instance (with its witness matching as comments).
    Gen {
        /// Family: prop34 (nested cycles) or prop36 (pendant hub).
        #[arg(long)]
        family: String,
        /// Family size parameter.
        #[arg(long)]
        k: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reduce a (2,2)-E3-SAT formula to an instance whose almost-stable
    /// matchings encode satisfying assignments.
    Reduce {
        /// Instance family to produce: sri or smi.
        #[arg(long)]
        target: Kind,
        /// Formula file (`vars: N` header, one clause of three signed
        /// integers per line).
        #[arg(long)]
        formula: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Export the 0/1 program for an instance: an LP file plus a sidecar
    /// variable map.
    IlpExport {
        #[arg(long)]
        instance: PathBuf,
        /// minimax or minimax-max.
        #[arg(long, default_value = "minimax")]
        mode: IlpMode,
        /// LP file path; the variable map lands next to it as .vars.json.
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a seeded batch of random instances and print summary statistics.
    Bench {
        /// Agents per instance.
        #[arg(long)]
        n: usize,
        /// Submitted list length.
        #[arg(long)]
        l: usize,
        /// sri or smi.
        #[arg(long, default_value = "sri")]
        kind: Kind,
        #[arg(long, default_value = "minimax")]
        mode: BenchMode,
        /// Instances in the batch.
        #[arg(long, default_value_t = 100)]
        count: usize,
        /// Base seed; instance i uses seed + i.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// CSV output path.
        #[arg(long)]
        out: Option<PathBuf>,
        /// auto, exact, approx or ilp-export.
        #[arg(long, default_value = "auto")]
        solver: BenchSolver,
        /// Wall-clock budget per instance.
        #[arg(long, default_value_t = 10_000)]
        budget_ms: u64,
    },
    /// Recompute the blocking-pair report of a matching against an instance.
    Check {
        #[arg(long)]
        instance: PathBuf,
        /// Matching file: one `I J` pair per line, 1-based ids.
        #[arg(long)]
        matching: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}

fn read_instance(path: &Path) -> Result<Instance> {
    Instance::parse(&fs::read_to_string(path)?)
}

/// Print the record, and also write it to `out` when given.
fn emit_record(record: &ResultRecord, out: Option<&Path>) -> Result<()> {
    let json = record.to_json();
    println!("{json}");
    if let Some(path) = out {
        fs::write(path, format!("{json}\n"))?;
    }
    Ok(())
}

fn emit_text(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

/// Record whose reported value is the matching's own minimax count.
fn achieved_record(
    inst: &Instance,
    matching: &Matching,
    objective: &str,
) -> Result<(ResultRecord, BlockingReport)> {
    let report = blocking_report(inst, matching)?;
    let record = ResultRecord::new(matching, &report, objective, i64::from(report.max_bp));
    Ok((record, report))
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Solve {
            instance,
            mode,
            solver,
            budget_ms,
            out,
        } => {
            let inst = read_instance(&instance)?;
            let matching = if inst.max_degree() <= 2 {
                bench::solve_shortlist(&inst, mode)?
            } else {
                match solver {
                    BenchSolver::Auto => {
                        bench::solve_auto(&inst, mode, Duration::from_millis(budget_ms))?.0
                    }
                    BenchSolver::Exact => {
                        solve_exact_capped(
                            &inst,
                            Objective::Minimax,
                            mode.cardinality(),
                            DEFAULT_CAP,
                        )?
                        .matching
                    }
                    BenchSolver::Approx => approx_minimax(&inst)?.matching,
                    BenchSolver::IlpExport => {
                        return Err(Error::BadConfig {
                            msg: "solver ilp-export only applies to bench".into(),
                        })
                    }
                }
            };
            let (record, _) = achieved_record(&inst, &matching, &mode.to_string())?;
            emit_record(&record, out.as_deref())
        }
        Command::Approx { instance, out } => {
            let inst = read_instance(&instance)?;
            let matching = approx_minimax(&inst)?.matching;
            let (record, report) = achieved_record(&inst, &matching, "approx")?;
            emit_record(&record, out.as_deref())?;
            for i in 0..inst.n() {
                println!(
                    "# agent {}: blocking {} bound {}",
                    i + 1,
                    report.per_agent[i],
                    inst.degree(i).div_ceil(2)
                );
            }
            Ok(())
        }
        Command::Exact {
            instance,
            objective,
            cardinality,
            cap,
            out,
        } => {
            let inst = read_instance(&instance)?;
            let result = solve_exact_capped(&inst, objective, cardinality, cap)?;
            let label = format!("{objective}/{cardinality}");
            let report = blocking_report(&inst, &result.matching)?;
            let record =
                ResultRecord::new(&result.matching, &report, &label, i64::from(result.value));
            emit_record(&record, out.as_deref())
        }
        Command::Gen { family, k, out } => {
            let (inst, witness) = match family.as_str() {
                "prop34" => (nested_cycles(k)?, nested_cycles_witness(k)?),
                "prop36" => (pendant_hub(k), pendant_hub_witness(k)),
                other => {
                    return Err(Error::BadConfig {
                        msg: format!("unknown family `{other}` (expected prop34 or prop36)"),
                    })
                }
            };
            let mut text = inst.to_text();
            text.push_str("# witness matching:\n");
            for (a, b) in witness.pairs() {
                text.push_str(&format!("#   {} {}\n", a + 1, b + 1));
            }
            emit_text(&text, out.as_deref())
        }
        Command::Reduce {
            target,
            formula,
            out,
        } => {
            let formula = SatFormula::parse(&fs::read_to_string(&formula)?)?;
            let reduction = match target {
                Kind::Sri => reduce_sat_to_sri(&formula)?,
                Kind::Smi => reduce_sat_to_smi(&formula)?,
            };
            emit_text(&reduction.to_text(), out.as_deref())
        }
        Command::IlpExport {
            instance,
            mode,
            out,
        } => {
            let inst = read_instance(&instance)?;
            let model = build_model(&inst, mode);
            fs::write(&out, model.to_lp_text())?;
            let sidecar = out.with_extension("vars.json");
            fs::write(&sidecar, model.vars_json())?;
            eprintln!("wrote {} and {}", out.display(), sidecar.display());
            Ok(())
        }
        Command::Bench {
            n,
            l,
            kind,
            mode,
            count,
            seed,
            out,
            solver,
            budget_ms,
        } => {
            let config = ExperimentConfig {
                n,
                l,
                kind,
                mode,
                count,
                base_seed: seed,
                solver,
                out,
                budget_ms,
            };
            let (rows, failures) = bench::run_experiment(&config)?;
            for RunFailure {
                index,
                seed,
                message,
            } in &failures
            {
                eprintln!("# instance {index} (seed {seed}) failed: {message}");
            }
            let summary = bench::summarize(&rows)?;
            println!("{summary}");
            Ok(())
        }
        Command::Check {
            instance,
            matching,
            out,
        } => {
            let inst = read_instance(&instance)?;
            let matching = Matching::parse(&inst, &fs::read_to_string(&matching)?)?;
            let (record, _) = achieved_record(&inst, &matching, "check")?;
            emit_record(&record, out.as_deref())
        }
    }
}
