//! Acceptance gate: one line per criterion, nonzero exit if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use qn_cli::suites::{run_suite, Params, Report};

/// Every criterion tolerates zero failing cases.
const MAX_FAILURES: usize = 0;
/// Wall-clock budget per criterion.
const TIME_LIMIT: Duration = Duration::from_secs(300);

struct Criterion {
    id: u32,
    title: &'static str,
    runs: Vec<(&'static str, Params)>,
}

fn params(n: u32, depth: u32) -> Params {
    Params {
        n,
        depth,
        ..Params::default()
    }
}

fn criteria() -> Vec<Criterion> {
    let c = |id, title, runs| Criterion { id, title, runs };
    vec![
        c(1, "group axioms, inverses, canonical forms", vec![("axioms", params(2, 3))]),
        c(
            2,
            "breakpoint congruences over subdivisions within 3 moves",
            vec![("breakpoints-mod", params(2, 3)), ("breakpoints-mod", params(3, 3))],
        ),
        c(
            3,
            "orbit maps to i/n and class invariance",
            vec![("orbits", params(2, 4)), ("orbits", params(3, 4))],
        ),
        c(4, "tuple transport with commutator certificates", vec![("transport", params(2, 4)), ("transport", params(3, 4))]),
        c(5, "Gamma_n membership and closure", vec![("gamma-membership", params(2, 3))]),
        c(
            6,
            "special elements and their landing class",
            vec![("special", params(2, 3)), ("special", params(3, 3)), ("special", params(4, 3))],
        ),
        c(7, "factorization over xi and F_eta", vec![("factorization", params(2, 3))]),
        c(8, "presentation relations", vec![("relations", params(2, 3)), ("relations", params(3, 3))]),
        c(9, "translation numbers", vec![("rotnum", params(2, 3))]),
        c(10, "commutator words agreeing on I+Z", vec![("conj-q", params(2, 3))]),
        c(11, "simplicity witnesses", vec![("witness", params(2, 3))]),
        c(12, "conjugation to the positive reals", vec![("belk", params(2, 3))]),
        c(
            13,
            "chain generators and the fast inequality",
            vec![("chain", params(2, 3)), ("chain", params(3, 3)), ("chain", params(6, 3))],
        ),
    ]
}

fn main() -> ExitCode {
    let mut all_ok = true;
    for crit in criteria() {
        let start = Instant::now();
        let mut cases = 0;
        let mut failures: Vec<String> = vec![];
        for (suite, p) in &crit.runs {
            let r: Report = run_suite(suite, p).expect("known suite");
            cases += r.cases;
            failures.extend(r.failures.iter().map(|f| format!("{suite} n={}: {f}", p.n)));
        }
        let elapsed = start.elapsed();
        let ok = failures.len() <= MAX_FAILURES && elapsed <= TIME_LIMIT;
        all_ok &= ok;
        println!(
            "criterion {:>2} {}: {} (cases={}, failures={}, {:.1}s)",
            crit.id,
            crit.title,
            if ok { "PASS" } else { "FAIL" },
            cases,
            failures.len(),
            elapsed.as_secs_f64()
        );
        for f in failures.iter().take(5) {
            println!("    {f}");
        }
    }
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
