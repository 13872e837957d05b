//! Closed-form versus enumeration cross-checks.

use anyhow::Result;
use serde::Serialize;

use racsim_core::advantage::{advantage_holds, best_ratio_d, r_max};
use racsim_core::classical::{
    closed_form_classical_exact, exact_average, majority_identity_strategy,
    optimal_classical_bruteforce, ClassicalTask, OracleBudget,
};
use racsim_core::quantum::{
    closed_form_full, closed_form_restricted, closed_form_restricted_exact, exact_success,
    GatingVariant, ProtocolSpec,
};

use crate::render::{self, Provenance};
use crate::{Format, UsageError, VerifyArgs, VerifyFailed};

const TOL: f64 = 1e-12;

#[derive(Debug, Serialize)]
struct Check {
    name: String,
    passed: bool,
    detail: String,
}

fn full_protocol(dmax: usize) -> Check {
    let worst = (2..=dmax)
        .map(|d| {
            let r = exact_success::<f64>(&ProtocolSpec::full(d).unwrap());
            (r.average - closed_form_full::<f64>(d))
                .abs()
                .max((r.worst_case - r.average).abs())
        })
        .fold(0.0, f64::max);
    Check {
        name: format!("full protocol, d = 2..{dmax}"),
        passed: worst < TOL,
        detail: format!("max deviation {worst:.2e}"),
    }
}

fn restricted_protocol(dmax: usize) -> Check {
    let mut worst: f64 = 0.0;
    for d in 2..=dmax {
        for r in 0..d - 1 {
            let spec = ProtocolSpec::new(d, d - r, GatingVariant::IndependentGating).unwrap();
            let got = exact_success::<f64>(&spec).average;
            worst = worst.max((got - closed_form_restricted::<f64>(d, r).unwrap()).abs());
        }
    }
    Check {
        name: format!("restricted protocol, independent gating, d = 2..{dmax}"),
        passed: worst < TOL,
        detail: format!("max deviation {worst:.2e}"),
    }
}

fn literal_below(dmax: usize) -> Check {
    let mut bad = Vec::new();
    for d in 3..=dmax {
        for r in 1..d - 1 {
            let lit = ProtocolSpec::new(d, d - r, GatingVariant::LiteralBothOrNothing).unwrap();
            let ind = ProtocolSpec::new(d, d - r, GatingVariant::IndependentGating).unwrap();
            if exact_success::<f64>(&lit).average >= exact_success::<f64>(&ind).average {
                bad.push(format!("({d},{r})"));
            }
        }
    }
    Check {
        name: format!("literal gating strictly below independent, d = 3..{dmax}"),
        passed: bad.is_empty(),
        detail: if bad.is_empty() { "ok".into() } else { bad.join(" ") },
    }
}

fn classical_counting() -> Check {
    let mut bad = Vec::new();
    for n in [2, 3] {
        for d in 2..=64 {
            let task = ClassicalTask::new(n, d).unwrap();
            let got = exact_average(&task, &majority_identity_strategy(&task)).unwrap();
            if got != closed_form_classical_exact(n, d).unwrap() {
                bad.push(format!("(n={n},d={d})"));
            }
        }
    }
    Check {
        name: "majority/identity counting, n = 2, 3, d = 2..64".into(),
        passed: bad.is_empty(),
        detail: if bad.is_empty() { "exact".into() } else { bad.join(" ") },
    }
}

fn classical_oracle() -> Check {
    let mut bad = Vec::new();
    for (n, d) in [(2, 2), (2, 3), (2, 4), (2, 5), (3, 2), (3, 3)] {
        let task = ClassicalTask::new(n, d).unwrap();
        let r = optimal_classical_bruteforce::<f64>(&task, OracleBudget::default()).unwrap();
        if r.exact != closed_form_classical_exact(n, d).unwrap() {
            bad.push(format!("(n={n},d={d}) -> {}", r.exact));
        }
    }
    Check {
        name: "exhaustive classical optimum, n = 2 d <= 5, n = 3 d <= 3".into(),
        passed: bad.is_empty(),
        detail: if bad.is_empty() { "matches closed forms".into() } else { bad.join(" ") },
    }
}

fn advantage_condition(dmax: usize) -> Check {
    let mut bad = Vec::new();
    for d in 2..=dmax {
        for r in 0..d - 1 {
            let holds = advantage_holds(d, r).unwrap();
            let q: f64 = closed_form_restricted(d, r).unwrap();
            let c = 0.5 * (1.0 + 1.0 / d as f64);
            let tie = d == r * r + 3 * r + 1;
            if tie {
                let exact = closed_form_restricted_exact(d, r).unwrap();
                if exact != Some(closed_form_classical_exact(2, d).unwrap()) || holds {
                    bad.push(format!("tie ({d},{r})"));
                }
            } else if holds != (q > c) {
                bad.push(format!("({d},{r})"));
            }
        }
        let rm = r_max(d);
        if (rm >= 1 && !advantage_holds(d, rm).unwrap())
            || (rm + 1 < d && advantage_holds(d, rm + 1).unwrap())
        {
            bad.push(format!("r_max({d})"));
        }
    }
    Check {
        name: format!("advantage condition and r_max, d = 2..{dmax}"),
        passed: bad.is_empty(),
        detail: if bad.is_empty() { "consistent".into() } else { bad.join(" ") },
    }
}

fn ratio_peak() -> Check {
    let d = best_ratio_d::<f64>(2, 1000).unwrap();
    Check {
        name: "full quantum / classical ratio peaks at d = 6".into(),
        passed: d == 6,
        detail: format!("argmax d = {d}"),
    }
}

#[derive(Serialize)]
struct VerifyParams {
    dmax: usize,
}

pub fn run(args: &VerifyArgs) -> Result<()> {
    if args.dmax < 2 || args.dmax > 64 {
        return Err(UsageError(format!("--dmax must be in 2..=64, got {}", args.dmax)).into());
    }
    if args.format == Format::Csv {
        return Err(UsageError("`verify` supports --format text or json".into()).into());
    }
    let checks = vec![
        full_protocol(args.dmax),
        restricted_protocol(args.dmax),
        literal_below(args.dmax),
        classical_counting(),
        classical_oracle(),
        advantage_condition(args.dmax.max(50)),
        ratio_peak(),
    ];
    let failed = checks.iter().filter(|c| !c.passed).count();
    let text = match args.format {
        Format::Json => render::json(
            Provenance::new("verify", VerifyParams { dmax: args.dmax }),
            &checks,
        )?,
        _ => {
            let mut out = String::new();
            for c in &checks {
                let tag = if c.passed { "PASS" } else { "FAIL" };
                out.push_str(&format!("{tag}  {}: {}\n", c.name, c.detail));
            }
            out.push_str(&format!("{} passed, {failed} failed\n", checks.len() - failed));
            out
        }
    };
    render::emit(&text, args.output.as_deref())?;
    if failed > 0 {
        return Err(VerifyFailed(failed).into());
    }
    Ok(())
}
