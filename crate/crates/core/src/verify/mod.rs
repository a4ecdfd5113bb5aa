//! Catalog of verification checks with a deterministic plain-text report.
//!
//! Every check is a pure function of the [`VerifyConfig`]; randomized checks
//! derive their generator from the configured seed and their position in
//! the catalog, so the report does not depend on scheduling or thread count.

pub mod keylemmas;
pub mod lemmas;
pub mod models;
pub mod theorems;

use std::fmt;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::budget::Budget;
use crate::error::{Error, Result};

pub const DEFAULT_SEED: u64 = 0x5eed_2024;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Models,
    Lemmas,
    Theorems,
    All,
}

impl Suite {
    pub fn parse(name: &str) -> Result<Suite> {
        match name {
            "models" => Ok(Suite::Models),
            "lemmas" => Ok(Suite::Lemmas),
            "theorems" => Ok(Suite::Theorems),
            "all" => Ok(Suite::All),
            other => Err(Error::usage(format!("unknown suite `{other}` (models, lemmas, theorems, all)"))),
        }
    }

    fn includes(self, group: Suite) -> bool {
        self == Suite::All || self == group
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyConfig {
    pub seed: u64,
    pub budget: Budget,
    /// Random instances per field for each matrix-lemma check.
    pub random_cases: usize,
    /// Random bounded-rank spaces per ambient for the key-lemma checks.
    pub random_spaces: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { seed: DEFAULT_SEED, budget: Budget::default(), random_cases: 10_000, random_spaces: 1_000 }
    }
}

/// Counts gathered by a property check.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Tally {
    /// Instances examined.
    pub cases: u64,
    /// Instances meeting the hypothesis.
    pub hits: u64,
    pub failures: u64,
    pub first_failure: Option<String>,
}

impl Tally {
    pub fn case(&mut self) {
        self.cases += 1;
    }

    /// Records one instance meeting the hypothesis, with its verdict.
    pub fn hit(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.hits += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(describe());
            }
        }
    }

    pub fn merge(&mut self, other: Tally) {
        self.cases += other.cases;
        self.hits += other.hits;
        self.failures += other.failures;
        if self.first_failure.is_none() {
            self.first_failure = other.first_failure;
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0 && self.hits > 0
    }

    pub fn summary(&self) -> String {
        let mut s = format!("cases={} hits={} failures={}", self.cases, self.hits, self.failures);
        if let Some(first) = &self.first_failure {
            s.push_str(&format!(" first={first}"));
        }
        s
    }
}

/// One line of a report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub id: &'static str,
    pub anchor: &'static str,
    pub passed: bool,
    pub value: String,
}

impl CheckOutcome {
    pub fn new(id: &'static str, anchor: &'static str, passed: bool, value: impl Into<String>) -> Self {
        CheckOutcome { id, anchor, passed, value: value.into() }
    }

    pub fn from_tally(id: &'static str, anchor: &'static str, t: &Tally) -> Self {
        CheckOutcome::new(id, anchor, t.passed(), t.summary())
    }

    fn from_result(id: &'static str, anchor: &'static str, r: Result<CheckOutcome>) -> Self {
        r.unwrap_or_else(|e| CheckOutcome::new(id, anchor, false, format!("error: {e}")))
    }
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{status} {} {} {}", self.id, self.anchor, self.value)
    }
}

pub struct Report {
    pub checks: Vec<CheckOutcome>,
    /// Wall time per check, parallel to `checks`; not part of the text.
    pub elapsed: Vec<Duration>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn get(&self, id: &str) -> Option<(&CheckOutcome, Duration)> {
        let i = self.checks.iter().position(|c| c.id == id)?;
        Some((&self.checks[i], self.elapsed[i]))
    }

    pub fn to_text(&self) -> String {
        self.checks.iter().map(|c| format!("{c}\n")).collect()
    }
}

type CheckFn = fn(&VerifyConfig, &mut ChaCha8Rng) -> Result<CheckOutcome>;

/// A catalog entry: suite, identifier, anchor and the check itself.
pub struct CheckSpec {
    pub suite: Suite,
    pub id: &'static str,
    pub anchor: &'static str,
    run: CheckFn,
}

macro_rules! spec {
    ($suite:ident, $id:literal, $anchor:literal, $f:path) => {
        CheckSpec { suite: Suite::$suite, id: $id, anchor: $anchor, run: $f }
    };
}

/// Every check in report order.
pub fn catalog() -> Vec<CheckSpec> {
    vec![
        spec!(Models, "models.dimensions", "model-dimensions", models::dimensions),
        spec!(Models, "models.formulas", "dimension-formulas", models::formulas),
        spec!(Models, "models.upper-ranks", "model-upper-ranks", models::upper_ranks),
        spec!(Models, "models.linearity", "model-base-points", models::linearity),
        spec!(Models, "invariants.rank-one-members", "invariant-table", models::rank_one_members),
        spec!(Models, "invariants.alternating-members", "invariant-table", models::alternating_members),
        spec!(Models, "invariants.zero-free", "invariant-table", models::zero_free),
        spec!(Models, "invariants.common-kernel", "invariant-table", models::common_kernels),
        spec!(Lemmas, "lemmas.adjugate", "adjugate-identity", lemmas::adjugate_check),
        spec!(Lemmas, "lemmas.rank-one-update", "rank-one-determinant-update", lemmas::rank_one_update_check),
        spec!(Lemmas, "lemmas.schur", "schur-complement", lemmas::schur_check),
        spec!(Lemmas, "lemmas.alternating-determinant", "alternating-determinant", lemmas::alternating_determinant_check),
        spec!(Lemmas, "lemmas.symmetric-determinant", "symmetric-determinant", lemmas::symmetric_determinant_check),
        spec!(Lemmas, "lemmas.alternating-corner", "alternating-corner", lemmas::alternating_corner_check),
        spec!(Lemmas, "lemmas.symmetric-corner", "symmetric-corner", lemmas::symmetric_corner_check),
        spec!(Lemmas, "lemmas.diagonal-corner", "diagonal-corner", lemmas::diagonal_corner_check),
        spec!(Lemmas, "lemmas.extraction", "extraction", lemmas::extraction_check),
        spec!(Lemmas, "lemmas.char2-corner", "char2-corner", lemmas::char2_corner_check),
        spec!(Lemmas, "keylemmas.exhaustive", "hyperplane-key-lemmas", keylemmas::exhaustive_check),
        spec!(Lemmas, "keylemmas.random", "hyperplane-key-lemmas", keylemmas::random_check),
        spec!(Theorems, "search.sym3-gf2", "symmetric-classification", theorems::sym3_gf2),
        spec!(Theorems, "search.sym3-gf3", "symmetric-classification", theorems::sym3_gf3),
        spec!(Theorems, "search.alt4-gf2", "alternating-classification", theorems::alt4_gf2),
        spec!(Theorems, "search.rank-one-lines", "rank-one-lines", theorems::rank_one_lines),
        spec!(Theorems, "flanders.scan", "flanders", theorems::flanders_scans),
        spec!(Theorems, "flanders.recovery", "flanders-corollary", theorems::flanders_recovery),
        spec!(Theorems, "rc.enumeration", "range-compatible-maps", theorems::rc_enumeration),
        spec!(Theorems, "generation.named", "generation", theorems::generation_named),
        spec!(Theorems, "generation.dimension-bound", "generation", theorems::generation_bound),
    ]
}

/// Runs the checks of `suite`; lines come out in catalog order.
pub fn run_suite(suite: Suite, config: &VerifyConfig) -> Report {
    let specs: Vec<(usize, CheckSpec)> =
        catalog().into_iter().enumerate().filter(|(_, s)| suite.includes(s.suite)).collect();
    let results: Vec<(CheckOutcome, Duration)> = specs
        .par_iter()
        .map(|(index, spec)| {
            let mut rng = check_rng(config.seed, *index);
            let start = Instant::now();
            let out = CheckOutcome::from_result(spec.id, spec.anchor, (spec.run)(config, &mut rng));
            (out, start.elapsed())
        })
        .collect();
    let (checks, elapsed) = results.into_iter().unzip();
    Report { checks, elapsed }
}

fn check_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64 + 1);
    rng
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_ids_are_unique() {
        let mut ids: Vec<&str> = catalog().iter().map(|c| c.id).collect();
        ids.sort();
        let before = ids.len();
        ids.dedup();
        assert_eq!(ids.len(), before);
    }

    #[test]
    fn suite_names() {
        assert_eq!(Suite::parse("lemmas").unwrap(), Suite::Lemmas);
        assert!(Suite::parse("everything").is_err());
    }

    #[test]
    fn tally_needs_a_hit() {
        let mut t = Tally::default();
        t.case();
        assert!(!t.passed());
        t.hit(true, String::new);
        assert!(t.passed());
        t.hit(false, || "bad".into());
        assert!(!t.passed());
        assert_eq!(t.summary(), "cases=1 hits=2 failures=1 first=bad");
    }

    #[test]
    fn outcome_line_format() {
        let c = CheckOutcome::new("a.b", "anchor", true, "x=1");
        assert_eq!(c.to_string(), "PASS a.b anchor x=1");
    }
}
