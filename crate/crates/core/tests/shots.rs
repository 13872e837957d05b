use racsim_core::classical::{evaluate_strategy, majority_identity_strategy, ClassicalTask};
use racsim_core::quantum::{exact_success, GatingVariant, ProtocolSpec};
use racsim_core::shots::{simulate, simulate_tally, Protocol, TrialConfig};
use racsim_core::SuccessReport;

/// The five reference protocols with their exact per-input reports.
fn references() -> Vec<(&'static str, Protocol, SuccessReport<f64>)> {
    let mut out = Vec::new();
    for (name, spec) in [
        ("full d=2", ProtocolSpec::full(2).unwrap()),
        ("full d=6", ProtocolSpec::full(6).unwrap()),
        ("restricted 6/5 independent", ProtocolSpec::new(6, 5, GatingVariant::IndependentGating).unwrap()),
        ("restricted 6/5 literal", ProtocolSpec::new(6, 5, GatingVariant::LiteralBothOrNothing).unwrap()),
    ] {
        out.push((name, Protocol::Quantum(spec), exact_success(&spec)));
    }
    let task = ClassicalTask::new(2, 6).unwrap();
    let s = majority_identity_strategy(&task);
    let report = evaluate_strategy(&task, &s).unwrap();
    out.push(("classical majority d=6", Protocol::classical(task, s).unwrap(), report));
    out
}

#[test]
fn estimates_mostly_within_three_sigma() {
    for (name, protocol, exact) in references() {
        let inside = (0..20u64)
            .filter(|&seed| {
                let e = simulate(&protocol, TrialConfig::new(100_000, 1000 + seed).unwrap()).unwrap();
                e.z_score(exact.average) <= 3.0
            })
            .count();
        assert!(inside >= 19, "{name}: only {inside}/20 within 3 sigma");
    }
}

/// Per-(input, question) success counts against the exact Born x guess probabilities.
#[test]
fn per_input_frequencies_chi_square() {
    for (name, protocol, exact) in references() {
        let tally = simulate_tally(&protocol, TrialConfig::new(1_000_000, 7).unwrap()).unwrap();
        let mut chi2 = 0.0;
        let mut cells = 0usize;
        for (i, (&n, &k)) in tally.trials.iter().zip(&tally.successes).enumerate() {
            let p = exact.per_input[i];
            let var = n as f64 * p * (1.0 - p);
            if var > 0.0 {
                chi2 += (k as f64 - n as f64 * p).powi(2) / var;
                cells += 1;
            } else {
                // deterministic cells must be reproduced exactly
                assert_eq!(k as f64, n as f64 * p, "{name} cell {i}");
            }
        }
        if cells > 0 {
            let k = cells as f64;
            let bound = k + 6.0 * (2.0 * k).sqrt();
            assert!(chi2 < bound, "{name}: chi2 {chi2} over {cells} cells");
        }
    }
}

#[test]
fn repeated_runs_agree() {
    let p = Protocol::Quantum(ProtocolSpec::full(4).unwrap());
    let a = simulate_tally(&p, TrialConfig::new(1000, 3).unwrap()).unwrap();
    let b = simulate_tally(&p, TrialConfig::new(1000, 3).unwrap()).unwrap();
    assert_eq!(a, b);
    let big = simulate(&p, TrialConfig::new(300_000, 3).unwrap()).unwrap();
    assert_eq!(big.trials, 300_000);
}
