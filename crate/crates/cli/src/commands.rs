use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;

use racsim_core::advantage::{r_max, scan as scan_rows, ValueSource};
use racsim_core::classical::{
    closed_form_classical, evaluate_strategy, exact_average, majority_identity_strategy,
    optimal_classical_bruteforce, ClassicalTask, DeterministicStrategy, OracleBudget, StrategyTable,
};
use racsim_core::quantum::{closed_form_restricted, exact_success, GatingVariant, ProtocolSpec};
use racsim_core::shots::{self, Protocol, TrialConfig};
use racsim_core::{Rational, SuccessReport};

use crate::render::{self, sig7, KeyValues, Provenance};
use crate::{Format, OracleArgs, ProtocolArgs, ScanArgs, SimulateArgs, Task, UsageError, Variant};

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

fn reject_csv(format: Format, command: &str) -> Result<()> {
    if format == Format::Csv {
        return Err(usage(format!("`{command}` supports --format text or json")));
    }
    Ok(())
}

impl Variant {
    fn gating(self) -> GatingVariant {
        match self {
            Variant::Canonical | Variant::Independent => GatingVariant::IndependentGating,
            Variant::Literal => GatingVariant::LiteralBothOrNothing,
        }
    }
}

/// A fully resolved protocol together with its exact evaluation.
struct Resolved {
    protocol: Protocol,
    report: SuccessReport<f64>,
    exact_fraction: Option<Rational>,
    closed_form: Option<f64>,
    params: Params,
}

#[derive(Debug, Clone, Serialize)]
struct Params {
    task: &'static str,
    n: usize,
    d: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    dprime: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    r: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    variant: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    strategy: Option<String>,
}

fn read_table(path: &Path) -> Result<StrategyTable> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    Ok(text.parse::<StrategyTable>()?)
}

fn resolve(args: &ProtocolArgs) -> Result<Resolved> {
    let need_d = || args.d.ok_or_else(|| usage("--d is required"));
    match args.task {
        Task::Full | Task::Restricted => {
            let d = need_d()?;
            if d < 1 {
                return Err(usage("--d must be at least 1"));
            }
            let dprime = match (args.task, args.dprime) {
                (Task::Full, None) => d,
                (Task::Full, Some(_)) => return Err(usage("--dprime only applies to --task restricted")),
                (_, Some(dp)) => dp,
                (_, None) => d - r_max(d.max(2)).min(d - 1),
            };
            let spec = ProtocolSpec::new(d, dprime, args.variant.gating())?;
            let report = exact_success::<f64>(&spec);
            let closed_form = match spec.variant() {
                GatingVariant::IndependentGating => Some(closed_form_restricted::<f64>(d, spec.r())?),
                GatingVariant::LiteralBothOrNothing if spec.r() == 0 => {
                    Some(closed_form_restricted::<f64>(d, 0)?)
                }
                GatingVariant::LiteralBothOrNothing => None,
            };
            let params = Params {
                task: if args.task == Task::Full { "full" } else { "restricted" },
                n: 2,
                d,
                dprime: Some(dprime),
                r: Some(spec.r()),
                variant: Some(spec.variant().label()),
                strategy: None,
            };
            Ok(Resolved {
                protocol: Protocol::Quantum(spec),
                report,
                exact_fraction: None,
                closed_form,
                params,
            })
        }
        Task::Classical => {
            let (task, strategy, source) = match &args.strategy {
                Some(path) => {
                    let table = read_table(path)?;
                    (table.task, table.strategy, path.display().to_string())
                }
                None => {
                    let task = ClassicalTask::new(args.n, need_d()?)?;
                    (task, majority_identity_strategy(&task), "majority-identity".to_string())
                }
            };
            let report = evaluate_strategy::<f64>(&task, &strategy)?;
            let exact = exact_average(&task, &strategy)?;
            let closed_form = match (&args.strategy, task.n()) {
                (None, 2 | 3) => Some(closed_form_classical::<f64>(task.n(), task.d())?),
                _ => None,
            };
            Ok(Resolved {
                protocol: Protocol::classical(task, strategy)?,
                report,
                exact_fraction: Some(exact),
                closed_form,
                params: Params {
                    task: "classical",
                    n: task.n(),
                    d: task.d(),
                    dprime: None,
                    r: None,
                    variant: None,
                    strategy: Some(source),
                },
            })
        }
    }
}

fn describe(kv: &mut KeyValues, p: &Params) {
    kv.push("task", p.task).push("n", p.n).push("d", p.d);
    if let Some(dp) = p.dprime {
        kv.push("dprime", dp);
    }
    if let Some(r) = p.r {
        kv.push("r", r);
    }
    if let Some(v) = p.variant {
        kv.push("variant", v);
    }
    if let Some(s) = &p.strategy {
        kv.push("strategy", s);
    }
}

#[derive(Serialize)]
struct ExactResult<'a> {
    average: f64,
    worst_case: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    exact_average: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    closed_form: Option<f64>,
    questions: usize,
    /// one row per input string, one column per question
    per_input: Vec<&'a [f64]>,
}

pub fn exact(args: &ProtocolArgs) -> Result<()> {
    reject_csv(args.format, "exact")?;
    let r = resolve(args)?;
    let text = match args.format {
        Format::Json => {
            let mut prov = Provenance::new("exact", r.params.clone())
                .source("average", if r.exact_fraction.is_some() { "counted" } else { "enumerated" })
                .source("worst_case", if r.exact_fraction.is_some() { "counted" } else { "enumerated" });
            if r.closed_form.is_some() {
                prov = prov.source("closed_form", "closed-form");
            }
            render::json(
                prov,
                ExactResult {
                    average: r.report.average,
                    worst_case: r.report.worst_case,
                    exact_average: r.exact_fraction.map(|q| q.to_string()),
                    closed_form: r.closed_form,
                    questions: r.report.questions,
                    per_input: r.report.per_input.chunks(r.report.questions).collect(),
                },
            )?
        }
        _ => {
            let mut kv = KeyValues::default();
            describe(&mut kv, &r.params);
            kv.prob("average", r.report.average);
            if let Some(q) = r.exact_fraction {
                kv.push("average_exact", q);
            }
            kv.prob("worst_case", r.report.worst_case);
            if let Some(c) = r.closed_form {
                kv.prob("closed_form", c);
            }
            kv.render()
        }
    };
    render::emit(&text, args.output.as_deref())
}

#[derive(Serialize)]
struct ScanParams {
    dmin: usize,
    dmax: usize,
}

const SCAN_HEADER: [&str; 7] = [
    "d",
    "dprime",
    "r_max",
    "p_classical",
    "p_quantum_full",
    "p_quantum_restricted",
    "ratio",
];

pub fn scan(args: &ScanArgs) -> Result<()> {
    if args.dmin < 2 || args.dmin > args.dmax {
        return Err(usage(format!(
            "need 2 <= --dmin <= --dmax, got {}..{}",
            args.dmin, args.dmax
        )));
    }
    let rows = scan_rows::<f64>(args.dmin, args.dmax)?;
    let text = match args.format {
        Format::Json => {
            let enumerated = rows.iter().all(|r| r.restricted_source == ValueSource::Enumerated);
            let prov = Provenance::new("scan", ScanParams { dmin: args.dmin, dmax: args.dmax })
                .source("r_max", "integer search on d > r^2 + 3r + 1")
                .source("p_classical", "closed-form")
                .source("p_quantum_full", "closed-form")
                .source(
                    "p_quantum_restricted",
                    if enumerated { "enumerated" } else { "per-row restricted_source" },
                );
            render::json(prov, &rows)?
        }
        Format::Csv | Format::Text => {
            let mut w = csv::WriterBuilder::new()
                .terminator(csv::Terminator::Any(b'\n'))
                .from_writer(Vec::new());
            w.write_record(SCAN_HEADER)?;
            for r in &rows {
                w.write_record([
                    r.d.to_string(),
                    r.dprime.to_string(),
                    r.r_max.to_string(),
                    sig7(r.p_classical),
                    sig7(r.p_quantum_full),
                    sig7(r.p_quantum_restricted),
                    sig7(r.ratio),
                ])?;
            }
            String::from_utf8(w.into_inner()?)?
        }
    };
    render::emit(&text, args.output.as_deref())
}

#[derive(Serialize)]
struct OracleParams {
    n: usize,
    d: usize,
    symmetry_reduction: bool,
    max_tuples: u128,
}

#[derive(Serialize)]
struct OracleOut {
    optimum: f64,
    optimum_exact: String,
    strategies_examined: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    closed_form: Option<f64>,
    witness: DeterministicStrategy,
    witness_table: String,
}

pub fn oracle(args: &OracleArgs) -> Result<()> {
    reject_csv(args.format, "oracle")?;
    if let Some(path) = &args.evaluate {
        let table = read_table(path)?;
        let protocol = ProtocolArgs {
            task: Task::Classical,
            d: Some(table.task.d()),
            dprime: None,
            variant: Variant::Canonical,
            n: table.task.n(),
            strategy: Some(path.clone()),
            format: args.format,
            output: args.output.clone(),
        };
        return exact(&protocol);
    }
    let d = args.d.ok_or_else(|| usage("--d is required unless --evaluate is given"))?;
    let task = ClassicalTask::new(args.n, d)?;
    let budget = if args.allow_large {
        OracleBudget::large()
    } else {
        OracleBudget {
            symmetry_reduction: args.symmetry,
            ..OracleBudget::default()
        }
    };
    let result = optimal_classical_bruteforce::<f64>(&task, budget)?;
    let table = StrategyTable::new(task, result.witness.clone())?;
    let table_text = table.to_text();
    if let Some(path) = &args.export {
        render::emit(&table_text, Some(path))?;
    }
    let closed_form = closed_form_classical::<f64>(task.n(), d).ok();
    let text = match args.format {
        Format::Json => {
            let prov = Provenance::new(
                "oracle",
                OracleParams {
                    n: task.n(),
                    d,
                    symmetry_reduction: budget.symmetry_reduction,
                    max_tuples: budget.max_tuples,
                },
            )
            .source("optimum", "exhaustive search");
            render::json(
                prov,
                OracleOut {
                    optimum: result.optimum,
                    optimum_exact: result.exact.to_string(),
                    strategies_examined: result.strategies_examined.to_string(),
                    closed_form,
                    witness: result.witness,
                    witness_table: table_text,
                },
            )?
        }
        _ => {
            let mut kv = KeyValues::default();
            kv.push("n", task.n())
                .push("d", d)
                .push("symmetry_reduction", budget.symmetry_reduction)
                .prob("optimum", result.optimum)
                .push("optimum_exact", result.exact)
                .push("strategies_examined", result.strategies_examined);
            if let Some(c) = closed_form {
                kv.prob("closed_form", c);
            }
            format!("{}\nwitness\n{table_text}", kv.render())
        }
    };
    render::emit(&text, args.output.as_deref())
}

#[derive(Serialize)]
struct SimParams {
    #[serde(flatten)]
    protocol: Params,
    trials: u64,
    seed: u64,
    shard_size: u64,
    generator: &'static str,
}

#[derive(Serialize)]
struct SimOut {
    mean: f64,
    stderr: f64,
    trials: u64,
    successes: u64,
    exact: f64,
    z_score: f64,
}

pub fn simulate(args: &SimulateArgs) -> Result<()> {
    reject_csv(args.protocol.format, "simulate")?;
    if args.trials == 0 {
        return Err(usage("--trials must be at least 1"));
    }
    let r = resolve(&args.protocol)?;
    let config = TrialConfig::new(args.trials, args.seed)?;
    let est = shots::simulate(&r.protocol, config)?;
    let exact = r.report.average;
    let text = match args.protocol.format {
        Format::Json => {
            let prov = Provenance::new(
                "simulate",
                SimParams {
                    protocol: r.params.clone(),
                    trials: args.trials,
                    seed: args.seed,
                    shard_size: shots::SHARD_SIZE,
                    generator: "ChaCha20, stream = shard index",
                },
            )
            .source("mean", "sampled")
            .source("exact", "enumerated");
            render::json(
                prov,
                SimOut {
                    mean: est.mean,
                    stderr: est.stderr,
                    trials: est.trials,
                    successes: est.successes,
                    exact,
                    z_score: est.z_score(exact),
                },
            )?
        }
        _ => {
            let mut kv = KeyValues::default();
            describe(&mut kv, &r.params);
            kv.push("trials", est.trials)
                .push("seed", args.seed)
                .push("successes", est.successes)
                .prob("mean", est.mean)
                .prob("stderr", est.stderr)
                .prob("exact", exact)
                .push("z_score", format!("{:.3}", est.z_score(exact)));
            kv.render()
        }
    };
    render::emit(&text, args.protocol.output.as_deref())
}
