//! One pass/fail line per acceptance criterion, with the worst check of each.

use std::time::{Duration, Instant};

use hyperfourier::verify::{Check, Expect, Topic};
use hyperfourier_cli::commands;

const SEED: u64 = 42;

struct Outcome {
    passed: bool,
    summary: String,
    elapsed: Duration,
}

/// Worst check by margin: ratio to tolerance for bounds, inverse ratio for
/// negative controls.
fn worst(checks: &[Check]) -> Option<&Check> {
    let ratio = |c: &Check| match c.expect {
        Expect::AtMost if c.tolerance == 0.0 => if c.deviation == 0.0 { 0.0 } else { f64::INFINITY },
        Expect::AtMost => c.deviation / c.tolerance,
        Expect::Exceeds => c.tolerance / c.deviation,
    };
    checks.iter().max_by(|a, b| ratio(a).partial_cmp(&ratio(b)).unwrap_or(std::cmp::Ordering::Greater))
}

fn run_topics(topics: &[Topic], budget: Option<Duration>) -> Outcome {
    let start = Instant::now();
    let mut checks = Vec::new();
    for t in topics {
        match t.run(SEED) {
            Ok(c) => checks.extend(c),
            Err(e) => return Outcome { passed: false, summary: format!("error: {e}"), elapsed: start.elapsed() },
        }
    }
    let elapsed = start.elapsed();
    let failures: Vec<_> = checks.iter().filter(|c| !c.passed()).collect();
    let over_budget = budget.is_some_and(|b| elapsed > b);
    let summary = match (failures.first(), worst(&checks)) {
        (Some(f), _) => format!("{} failing, first: {}", failures.len(), f.to_string().trim()),
        (None, Some(w)) => format!("{} checks; tightest: {}", checks.len(), w.to_string()[5..].trim()),
        (None, None) => "no checks".into(),
    };
    let summary = match budget {
        Some(b) if over_budget => format!("{summary}; runtime over {}s budget", b.as_secs()),
        _ => summary,
    };
    Outcome { passed: failures.is_empty() && !checks.is_empty() && !over_budget, summary, elapsed }
}

fn performance() -> Outcome {
    let start = Instant::now();
    match commands::bench(&[64], SEED) {
        Ok(rows) => {
            let slowest = rows.iter().map(|r| r.speedup()).fold(f64::INFINITY, f64::min);
            let detail: Vec<_> = rows
                .iter()
                .map(|r| format!("{} {:.0}x (dev {:.1e})", r.transform, r.speedup(), r.deviation))
                .collect();
            Outcome {
                passed: slowest >= 10.0,
                summary: format!("64x64 fast vs direct, need >= 10x: {}", detail.join(", ")),
                elapsed: start.elapsed(),
            }
        }
        Err(e) => Outcome { passed: false, summary: format!("error: {e:#}"), elapsed: start.elapsed() },
    }
}

#[test]
fn acceptance() {
    use Topic::*;
    type Criterion = (&'static str, Box<dyn Fn() -> Outcome>);
    let criteria: Vec<Criterion> = vec![
        ("round-trip identity", Box::new(|| run_topics(&[QftRoundTrip, QftrRoundTrip, SpacetimeRoundTrip], Some(Duration::from_secs(30))))),
        ("oracle equivalence", Box::new(|| run_topics(&[QftOracle, QftrOracle, SpacetimeOracle], None))),
        ("Plancherel and Parseval", Box::new(|| run_topics(&[QftEnergy, QftrEnergy], None))),
        ("QFT quaternion Plancherel control", Box::new(|| run_topics(&[QftPlancherelControl], None))),
        ("lattice laws and commutation conditions", Box::new(|| run_topics(&[QftLatticeLaws, QftrLatticeLaws, QftrContinuousConditions], None))),
        ("continuous GL(R^2) law", Box::new(|| run_topics(&[Automorphisms, Gl2Continuous], Some(Duration::from_secs(60))))),
        ("derivative and powers of x, y", Box::new(|| run_topics(&[DerivativeLaws], None))),
        ("Clifford foundations", Box::new(|| run_topics(&[CliffordFoundations, QuatAlgebra], None))),
        ("spacetime specifics", Box::new(|| run_topics(&[SpacetimeLaws], None))),
        ("performance", Box::new(performance)),
    ];
    let mut failed = Vec::new();
    for (k, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        println!(
            "criterion {:>2} {} [{:>7.2}s] {name}: {}",
            k + 1,
            if o.passed { "PASS" } else { "FAIL" },
            o.elapsed.as_secs_f64(),
            o.summary
        );
        if !o.passed {
            failed.push(k + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
