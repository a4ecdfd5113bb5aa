//! Acceptance criteria. Each criterion maps to a group of verification
//! checks plus a wall-time bound; one PASS/FAIL line is printed per
//! criterion. Run with `cargo test --test acceptance -- --nocapture`.

use std::time::Duration;

use boundrank::verify::{run_suite, Report, Suite, VerifyConfig};

struct Criterion {
    number: u32,
    name: &'static str,
    checks: &'static [&'static str],
    bound: Duration,
}

const fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

const CRITERIA: &[Criterion] = &[
    Criterion {
        number: 1,
        name: "model-verification",
        checks: &["models.dimensions", "models.formulas", "models.upper-ranks", "models.linearity"],
        bound: secs(10),
    },
    Criterion {
        number: 2,
        name: "invariant-table",
        checks: &[
            "invariants.rank-one-members",
            "invariants.alternating-members",
            "invariants.zero-free",
            "invariants.common-kernel",
        ],
        bound: secs(1),
    },
    Criterion {
        number: 3,
        name: "lemma-suite",
        checks: &[
            "lemmas.adjugate",
            "lemmas.rank-one-update",
            "lemmas.schur",
            "lemmas.alternating-determinant",
            "lemmas.symmetric-determinant",
            "lemmas.alternating-corner",
            "lemmas.symmetric-corner",
            "lemmas.diagonal-corner",
            "lemmas.extraction",
            "lemmas.char2-corner",
        ],
        bound: secs(60),
    },
    Criterion {
        number: 4,
        name: "key-lemma-suite",
        checks: &["keylemmas.exhaustive", "keylemmas.random"],
        bound: secs(120),
    },
    Criterion { number: 5, name: "sym3-gf2-classification", checks: &["search.sym3-gf2"], bound: secs(30) },
    Criterion { number: 6, name: "sym3-gf3-classification", checks: &["search.sym3-gf3"], bound: secs(300) },
    Criterion { number: 7, name: "alt4-gf2-classification", checks: &["search.alt4-gf2"], bound: secs(30) },
    Criterion { number: 8, name: "rank-one-lines", checks: &["search.rank-one-lines"], bound: secs(5) },
    Criterion {
        number: 9,
        name: "flanders",
        checks: &["flanders.scan", "flanders.recovery"],
        bound: secs(60),
    },
    Criterion { number: 10, name: "range-compatibility", checks: &["rc.enumeration"], bound: secs(120) },
    Criterion {
        number: 11,
        name: "generation",
        checks: &["generation.named", "generation.dimension-bound"],
        bound: secs(5),
    },
];

fn run_with_threads(threads: usize, config: &VerifyConfig) -> Report {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool")
        .install(|| run_suite(Suite::All, config))
}

fn judge(c: &Criterion, report: &Report) -> (bool, String) {
    let mut ok = true;
    let mut elapsed = Duration::ZERO;
    let mut notes = Vec::new();
    for id in c.checks {
        match report.get(id) {
            Some((outcome, t)) => {
                elapsed += t;
                if !outcome.passed {
                    ok = false;
                    notes.push(outcome.to_string());
                }
            }
            None => {
                ok = false;
                notes.push(format!("missing check {id}"));
            }
        }
    }
    if elapsed > c.bound {
        ok = false;
        notes.push(format!("over time bound {:?}", c.bound));
    }
    let mut line = format!("checks={} time={:.2}s", c.checks.len(), elapsed.as_secs_f64());
    for n in notes {
        line.push_str(&format!(" | {n}"));
    }
    (ok, line)
}

#[test]
fn acceptance() {
    let config = VerifyConfig::default();
    // Sample sizes the criteria are stated for.
    assert!(config.random_cases >= 10_000);
    assert!(config.random_spaces >= 1_000);

    // One worker so per-check times are not inflated by sharing a core.
    let first = run_with_threads(1, &config);
    let mut failed = Vec::new();
    for c in CRITERIA {
        let (ok, detail) = judge(c, &first);
        println!("{} AC{} {} {}", if ok { "PASS" } else { "FAIL" }, c.number, c.name, detail);
        if !ok {
            failed.push(c.number);
        }
    }

    let again = run_with_threads(1, &config);
    let wide = run_with_threads(4, &config);
    let text = first.to_text();
    let same = text == again.to_text() && text == wide.to_text();
    println!(
        "{} AC12 determinism runs=3 threads=1,1,4 lines={} identical={same}",
        if same { "PASS" } else { "FAIL" },
        first.checks.len()
    );
    if !same {
        failed.push(12);
    }

    let covered: usize = CRITERIA.iter().map(|c| c.checks.len()).sum();
    assert_eq!(covered, first.checks.len(), "every catalog check belongs to a criterion");
    assert!(failed.is_empty(), "failed criteria: {failed:?}\n{text}");
}
