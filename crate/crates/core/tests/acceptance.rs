//! Acceptance criteria 1-10, one line per criterion. Exits nonzero if any
//! criterion fails. `COHINV_ACCEPTANCE_SEED` overrides the seed.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use cohinv::harness::{collision_search, run_suite, SuiteReport};

struct Outcome {
    pass: bool,
    detail: String,
}

fn params(pairs: &[(&str, u64)]) -> BTreeMap<String, u64> {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

fn suite(
    name: &str,
    seed: u64,
    p: &[(&str, u64)],
    expected_cases: usize,
) -> (SuiteReport, Outcome) {
    let r = run_suite(name, seed, &params(p)).expect("known suite");
    let pass = r.passed() && r.cases == expected_cases;
    let mut detail = format!(
        "{name}: {} cases, {} violations, {:.2}s",
        r.cases,
        r.failures.len(),
        r.elapsed.as_secs_f64()
    );
    if let Some(f) = r.failures.first() {
        detail.push_str(&format!("; first: {} on {}", f.reason, f.input));
    }
    (r, Outcome { pass, detail })
}

fn within(o: Outcome, elapsed: Duration, limit: Duration) -> Outcome {
    Outcome {
        pass: o.pass && elapsed < limit,
        detail: format!("{} (limit {}s)", o.detail, limit.as_secs()),
    }
}

fn both(a: Outcome, b: Outcome) -> Outcome {
    Outcome {
        pass: a.pass && b.pass,
        detail: format!("{}; {}", a.detail, b.detail),
    }
}

type Criterion = (&'static str, Box<dyn Fn() -> Outcome>);

fn main() -> ExitCode {
    let seed = std::env::var("COHINV_ACCEPTANCE_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(42);
    println!("acceptance suite, seed {seed}");

    let criteria: Vec<Criterion> = vec![
        (
            "Hilbert product formula, 1000 pairs, < 5 s",
            Box::new(move || {
                let (r, o) = suite(
                    "hilbert-product-formula",
                    seed,
                    &[("cases", 1000), ("height", 10_000)],
                    1000,
                );
                within(o, r.elapsed, Duration::from_secs(5))
            }),
        ),
        (
            "Steinberg relation and (a)(a) = (a)(-1), 200 each",
            Box::new(move || {
                let (_, a) = suite("steinberg", seed, &[("cases", 200)], 200);
                let (_, b) = suite("square-relation", seed, &[("cases", 200)], 200);
                both(a, b)
            }),
        ),
        (
            "SW classes independent of diagonalization, 100 congruences, dim <= 6",
            Box::new(move || {
                suite(
                    "sw-diagonalization",
                    seed,
                    &[("cases", 100), ("max_dim", 6), ("entry", 30)],
                    100,
                )
                .1
            }),
        ),
        (
            "chain equivalence, 100 triples for each r in {1,2,3}",
            Box::new(move || {
                suite(
                    "chain-equivalence",
                    seed,
                    &[("cases", 100), ("max_steps", 5)],
                    300,
                )
                .1
            }),
        ),
        (
            "determinant normalization, 100 instances",
            Box::new(move || suite("normalization", seed, &[("cases", 100)], 100).1),
        ),
        (
            "trace-form oracle, 20 per (r, n), n = 3 r <= 3 and n = 5 r <= 2, < 60 s",
            Box::new(move || {
                let (r, o) = suite("trace-oracle", seed, &[("cases", 20), ("max_n", 5)], 140);
                within(o, r.elapsed, Duration::from_secs(60))
            }),
        ),
        (
            "composition law N(xy) = N(x)N(y), 500 pairs per r <= 3",
            Box::new(move || suite("composition-law", seed, &[("cases", 500)], 2000).1),
        ),
        (
            "v_i invariant under presentation changes, 100 per generator",
            Box::new(move || suite("presentation-invariance", seed, &[("cases", 100)], 300).1),
        ),
        (
            "distinguishing examples for the seven (r, n)",
            Box::new(move || suite("distinguishing", seed, &[], 7).1),
        ),
        (
            "completeness at n = 3: no collisions for r in {0, 2}, B = 7, < 120 s",
            Box::new(|| {
                let start = Instant::now();
                let found: Vec<usize> = [0, 2]
                    .iter()
                    .map(|&r| collision_search(r, 3, 7).expect("valid parameters").len())
                    .collect();
                let elapsed = start.elapsed();
                let o = Outcome {
                    pass: found.iter().all(|&k| k == 0),
                    detail: format!(
                        "collision certificates r=0: {}, r=2: {}, {:.2}s",
                        found[0],
                        found[1],
                        elapsed.as_secs_f64()
                    ),
                };
                within(o, elapsed, Duration::from_secs(120))
            }),
        ),
    ];

    let mut failed = 0;
    for (i, (title, check)) in criteria.iter().enumerate() {
        let o = check();
        let status = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {status}: {title} [{}]", i + 1, o.detail);
        failed += usize::from(!o.pass);
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
