//! Exhaustive classifications, the rectangular bounded-rank results,
//! range-compatible maps and affine generation.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{CheckOutcome, VerifyConfig};
use crate::budget::Budget;
use crate::error::Result;
use crate::field::FieldSpec;
use crate::models::{dim_formula, FormulaKind, ModelName};
use crate::rangecompat::enumerate_rc_maps;
use crate::search::{
    bounded_rank_search, column_relation_space, enumerate_affine_subspaces, flanders_recover_y, flanders_scan,
    generation_check,
};
use crate::space::{AffineMatrixSpace, AmbientKind};

/// Searches one dimension above the expected maximum (must be empty) and
/// classifies the maximum; `expected` lists the model labels of each class.
pub fn classification(
    ambient: AmbientKind,
    field: FieldSpec,
    r: usize,
    max_dim: usize,
    expected: &[&[ModelName]],
    budget: &Budget,
) -> Result<(bool, String)> {
    let above = bounded_rank_search(ambient, field, r, max_dim + 1, false, budget)?;
    let at = bounded_rank_search(ambient, field, r, max_dim, true, budget)?;
    let classes = at.classes.as_deref().unwrap_or_default();
    let mut got: Vec<Vec<ModelName>> = classes.iter().map(|c| c.matched_models.clone()).collect();
    let mut want: Vec<Vec<ModelName>> = expected.iter().map(|e| e.to_vec()).collect();
    let labels: Vec<String> = got
        .iter()
        .map(|m| if m.is_empty() { "unmatched".to_string() } else { join(m, "=") })
        .collect();
    got.sort_by_key(|m| format!("{m:?}"));
    want.sort_by_key(|m| format!("{m:?}"));
    let ok = above.spaces_satisfying == 0 && at.spaces_satisfying > 0 && got == want;
    let value = format!(
        "dim{}={}/{} dim{}={}/{} classes={} labels={}",
        max_dim + 1,
        above.spaces_satisfying,
        above.spaces_scanned,
        max_dim,
        at.spaces_satisfying,
        at.spaces_scanned,
        classes.len(),
        labels.join(",")
    );
    Ok((ok, value))
}

fn join(models: &[ModelName], sep: &str) -> String {
    models.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
}

pub fn sym3_gf2(config: &VerifyConfig, _rng: &mut ChaCha8Rng) -> Result<CheckOutcome> {
    let (ok, value) = classification(
        AmbientKind::Symmetric(3),
        FieldSpec::gf(2),
        2,
        3,
        &[
            &[ModelName::SymFullPad(2)],
            &[ModelName::WS(2)],
            &[ModelName::AltFullPad(2)],
            &[ModelName::Z(3)],
            &[ModelName::Y1],
            &[ModelName::Y2],
            &[ModelName::Y3],
        ],
        &config.budget,
    )?;
    Ok(CheckOutcome::new("search.sym3-gf2", "symmetric-classification", ok, value))
}

pub fn sym3_gf3(config: &VerifyConfig, _rng: &mut ChaCha8Rng) -> Result<CheckOutcome> {
    let (ok, value) = classification(
        AmbientKind::Symmetric(3),
        FieldSpec::gf(3),
        2,
        3,
        &[&[ModelName::SymFullPad(2)], &[ModelName::WS(2)]],
        &config.budget,
    )?;
    Ok(CheckOutcome::new("search.sym3-gf3", "symmetric-classification", ok, value))
}

pub fn alt4_gf2(config: &VerifyConfig, _rng: &mut ChaCha8Rng) -> Result<CheckOutcome> {
    let (ok, value) = classification(
        AmbientKind::Alternating(4),
        FieldSpec::gf(2),
        2,
        3,
        &[&[ModelName::WA(2)], &[ModelName::AltFullPad(2)], &[ModelName::U]],
        &config.budget,
    )?;
    Ok(CheckOutcome::new("search.alt4-gf2", "alternating-classification", ok, value))
}

/// Lines of `Sym_2` with rank at most one.
pub fn rank_one_lines(config: &VerifyConfig, _rng: &mut ChaCha8Rng) -> Result<CheckOutcome> {
    let amb = AmbientKind::Symmetric(2);
    let (ok2, v2) = classification(
        amb,
        FieldSpec::gf(2),
        1,
        1,
        &[&[ModelName::SymFullPad(1), ModelName::WS(1)], &[ModelName::Z(2), ModelName::ZPrime(1)]],
        &config.budget,
    )?;
    let (ok3, v3) = classification(
        amb,
        FieldSpec::gf(3),
        1,
        1,
        &[&[ModelName::SymFullPad(1), ModelName::WS(1)]],
        &config.budget,
    )?;
    Ok(CheckOutcome::new("search.rank-one-lines", "rank-one-lines", ok2 && ok3, format!("q2[{v2}] q3[{v3}]")))
}

/// `Mat_2` with rank at most 1: no survivor at dimension 3; at dimension 2
/// every survivor meets an equality condition, with zero-free survivors
/// over `GF(2)` and none relying on the exception over `GF(3)`.
pub fn flanders_scans(config: &VerifyConfig, _rng: &mut ChaCha8Rng) -> Result<CheckOutcome> {
    let mut ok = true;
    let mut parts = Vec::new();
    for q in [2, 3] {
        let f = FieldSpec::gf(q);
        let above = flanders_scan(2, 2, 1, f, 3, &config.budget)?;
        let at = flanders_scan(2, 2, 1, f, 2, &config.budget)?;
        ok &= above.survivors.is_empty() && !at.survivors.is_empty() && at.all_satisfy_a_bullet();
        if q == 2 {
            ok &= at.zero_free() > 0;
        } else {
            ok &= at.exception_only() == 0 && at.zero_free() == 0;
        }
        parts.push(format!(
            "q{q}[dim3={} dim2={} zero_free={} exception_only={}]",
            above.survivors.len(),
            at.survivors.len(),
            at.zero_free(),
            at.exception_only()
        ));
    }
    Ok(CheckOutcome::new("flanders.scan", "flanders", ok, parts.join(" ")))
}

/// Plants `{[N, N Y]}` for a random `Y` and recovers `Y`.
pub fn recovery_trials(n: usize, p: usize, q: u32, trials: usize, budget: &Budget, rng: &mut ChaCha8Rng) -> Result<usize> {
    let f = FieldSpec::gf(q);
    let mut recovered = 0;
    for _ in 0..trials {
        let y: Vec<u8> = (0..p - 1).map(|_| rng.gen_range(0..f.q())).collect();
        let v = column_relation_space(n, &y, f)?;
        if flanders_recover_y(&v, budget)? == y {
            recovered += 1;
        }
    }
    Ok(recovered)
}

pub fn flanders_recovery(config: &VerifyConfig, rng: &mut ChaCha8Rng) -> Result<CheckOutcome> {
    const TRIALS: usize = 100;
    let mut ok = true;
    let mut parts = Vec::new();
    for (n, p, q) in [(3, 2, 2), (3, 3, 3)] {
        let got = recovery_trials(n, p, q, TRIALS, &config.budget, rng)?;
        ok &= got == TRIALS;
        parts.push(format!("n{n}p{p}q{q}={got}/{TRIALS}"));
    }
    Ok(CheckOutcome::new("flanders.recovery", "flanders-corollary", ok, parts.join(" ")))
}

/// Range-compatible maps on small full spaces, as (local, local + diagonal,
/// other) counts.
pub fn rc_enumeration(config: &VerifyConfig, _rng: &mut ChaCha8Rng) -> Result<CheckOutcome> {
    let cases = [
        ("sym2q2", AmbientKind::Symmetric(2), 2, (4, 4, 0)),
        ("sym3q2", AmbientKind::Symmetric(3), 2, (8, 8, 0)),
        ("alt3q2", AmbientKind::Alternating(3), 2, (8, 0, 0)),
        ("sym2q3", AmbientKind::Symmetric(2), 3, (9, 0, 0)),
        ("alt3q3", AmbientKind::Alternating(3), 3, (27, 0, 0)),
    ];
    let mut ok = true;
    let mut parts = Vec::new();
    for (label, amb, q, want) in cases {
        let e = enumerate_rc_maps(amb, FieldSpec::gf(q), &config.budget)?;
        let got = e.counts();
        ok &= got == want;
        parts.push(format!("{label}={}+{}+{}/{}", got.0, got.1, got.2, e.maps_tested));
    }
    Ok(CheckOutcome::new("rc.enumeration", "range-compatible-maps", ok, parts.join(" ")))
}

/// Named spaces and whether they are affinely generated by their members
/// of rank greater than `r`.
pub fn generation_named(config: &VerifyConfig, _rng: &mut ChaCha8Rng) -> Result<CheckOutcome> {
    let mut cases: Vec<(String, AmbientKind, u32, usize, bool)> = vec![
        ("sym1q2".into(), AmbientKind::Symmetric(1), 2, 0, false),
        ("sym1q3".into(), AmbientKind::Symmetric(1), 3, 0, true),
        ("alt2q2".into(), AmbientKind::Alternating(2), 2, 1, false),
        ("alt2q3".into(), AmbientKind::Alternating(2), 3, 1, true),
        ("alt4q2".into(), AmbientKind::Alternating(4), 2, 3, true),
    ];
    for q in [2, 3] {
        cases.push((format!("alt3q{q}"), AmbientKind::Alternating(3), q, 1, true));
        for n in 2..=3 {
            cases.push((format!("sym{n}q{q}"), AmbientKind::Symmetric(n), q, n - 1, true));
        }
    }
    let mut ok = true;
    let mut parts = Vec::new();
    for (label, amb, q, r, want) in cases {
        let got = generation_check(&AffineMatrixSpace::full(amb, FieldSpec::gf(q)), r, &config.budget)?;
        ok &= got == want;
        parts.push(format!("{label}={got}"));
    }
    Ok(CheckOutcome::new("generation.named", "generation", ok, parts.join(" ")))
}

/// Every affine subspace of dimension at least `2 + max` of the two
/// dimension formulas is generated by its members of rank above `r`;
/// checked on `Sym_3(GF(2))` and `Alt_4(GF(2))`.
pub fn generation_bound(config: &VerifyConfig, _rng: &mut ChaCha8Rng) -> Result<CheckOutcome> {
    let f = FieldSpec::gf(2);
    let mut ok = true;
    let mut parts = Vec::new();
    let mut configs = Vec::new();
    for r in 0..3 {
        let m = dim_formula(FormulaKind::S1, 3, r)?.max(dim_formula(FormulaKind::S2, 3, r)?);
        configs.push((AmbientKind::Symmetric(3), r, m));
    }
    for r in [0, 2] {
        let m = dim_formula(FormulaKind::A1, 4, r)?.max(dim_formula(FormulaKind::A2, 4, r)?);
        configs.push((AmbientKind::Alternating(4), r, m));
    }
    for (amb, r, m) in configs {
        let (mut spaces, mut generated) = (0u64, 0u64);
        for dim in m + 2..=amb.dim() {
            for s in enumerate_affine_subspaces(amb, f, dim, &config.budget)? {
                spaces += 1;
                generated += generation_check(&s, r, &config.budget)? as u64;
            }
        }
        ok &= spaces > 0 && generated == spaces;
        parts.push(format!("{amb}r{r}={generated}/{spaces}"));
    }
    Ok(CheckOutcome::new("generation.dimension-bound", "generation", ok, parts.join(" ")))
}
