//! Model checks: dimensions, upper-ranks and the invariant table, for every
//! constructible model with `n <= 6` over `GF(2)`, `GF(3)` and `GF(5)`.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{CheckOutcome, VerifyConfig};
use crate::budget::Budget;
use crate::congruence::invariant_profile;
use crate::error::Result;
use crate::field::FieldSpec;
use crate::linalg;
use crate::matrix::Matrix;
use crate::models::{
    build_model, buildable, crossover, dim_formula, Crossover, CrossoverKind, FormulaKind, ModelName,
};
use crate::space::{AffineMatrixSpace, AmbientKind};

pub const MODEL_FIELDS: [u32; 3] = [2, 3, 5];
pub const MAX_MODEL_SIZE: usize = 6;
/// Spaces up to this many members are scanned member by member.
pub const EXHAUSTIVE_MEMBERS: u64 = 1 << 20;
const WITNESS_DRAWS: usize = 4096;

fn each_model(mut visit: impl FnMut(ModelName, usize, FieldSpec) -> Result<()>) -> Result<()> {
    for q in MODEL_FIELDS {
        let f = FieldSpec::gf(q);
        for n in 1..=MAX_MODEL_SIZE {
            for name in buildable(n, f) {
                visit(name, n, f)?;
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UrkMethod {
    /// Every member was ranked.
    Exhaustive,
    /// A member of rank `k` was found and a structural bound gives `<= k`.
    Certificate,
}

/// Structural upper bound on the rank of every member of a square space:
/// `n - dim(common kernel)`, and for each coordinate subset `W` small
/// enough to scan, `2 (n - |W|) + urk(S restricted to W x W)`; rounded
/// down to even for alternating spaces.
pub fn structural_rank_bound(space: &AffineMatrixSpace, budget: &Budget) -> Result<usize> {
    let n = space.ambient().rows();
    let alternating = matches!(space.ambient(), AmbientKind::Alternating(_));
    let even = |b: usize| if alternating { b - b % 2 } else { b };
    let mut bound = even(n - space.common_kernel_dim());
    let base = space.base();
    let basis = space.basis();
    for mask in 1u32..(1 << n) {
        let w: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let slack = 2 * (n - w.len());
        if slack >= bound {
            continue;
        }
        let amb = space.ambient().resized(w.len())?;
        let restricted = AffineMatrixSpace::from_generators(
            amb,
            &base.select(&w, &w),
            &basis.iter().map(|m| m.select(&w, &w)).collect::<Vec<_>>(),
        )?;
        if restricted.size() > EXHAUSTIVE_MEMBERS as u128 {
            continue;
        }
        bound = bound.min(even(slack + restricted.upper_rank(budget)?));
    }
    Ok(bound)
}

fn random_member(space: &AffineMatrixSpace, rng: &mut ChaCha8Rng) -> Matrix {
    let f = space.field();
    let coeffs: Vec<u8> = (0..space.dim()).map(|_| rng.gen_range(0..f.q())).collect();
    let dir = linalg::combine(f, &coeffs, space.basis_vectors(), space.base_vector().len());
    let v: Vec<u8> = dir.iter().zip(space.base_vector()).map(|(&a, &b)| f.add(a, b)).collect();
    space.ambient().matrix_of(f, &v)
}

/// Exact upper-rank: by full scan when small, otherwise by a witness member
/// meeting [`structural_rank_bound`]. `None` when neither settles it.
pub fn certified_upper_rank(
    space: &AffineMatrixSpace,
    budget: &Budget,
    rng: &mut ChaCha8Rng,
) -> Result<Option<(usize, UrkMethod)>> {
    if space.size() <= EXHAUSTIVE_MEMBERS.min(budget.members) as u128 {
        return Ok(Some((space.upper_rank(budget)?, UrkMethod::Exhaustive)));
    }
    let bound = structural_rank_bound(space, budget)?;
    for _ in 0..WITNESS_DRAWS {
        if random_member(space, rng).rank() == bound {
            return Ok(Some((bound, UrkMethod::Certificate)));
        }
    }
    Ok(None)
}

pub fn dimensions(_config: &VerifyConfig, _rng: &mut ChaCha8Rng) -> Result<CheckOutcome> {
    let mut count = 0;
    let mut bad = Vec::new();
    each_model(|name, n, f| {
        count += 1;
        let s = build_model(name, n, f)?;
        if s.dim() != name.stated_dim(n) || s.ambient() != name.ambient(n) {
            bad.push(format!("{name}@n={n},q={}:dim={}", f.q(), s.dim()));
        }
        Ok(())
    })?;
    Ok(listing("models.dimensions", "model-dimensions", count, &bad))
}

fn listing(id: &'static str, anchor: &'static str, count: usize, bad: &[String]) -> CheckOutcome {
    let mut value = format!("models={count} mismatches={}", bad.len());
    if let Some(first) = bad.first() {
        value.push_str(&format!(" first={first}"));
    }
    CheckOutcome::new(id, anchor, bad.is_empty(), value)
}

/// Built dimensions against the four closed formulas, and the crossover
/// rule against the formulas for `n <= 40`.
pub fn formulas(_config: &VerifyConfig, _rng: &mut ChaCha8Rng) -> Result<CheckOutcome> {
    let mut comparisons = 0;
    let mut bad = Vec::new();
    for q in MODEL_FIELDS {
        let f = FieldSpec::gf(q);
        for n in 1..=MAX_MODEL_SIZE {
            for name in buildable(n, f) {
                let kind = match name {
                    ModelName::SymFullPad(r) if r < n => Some((FormulaKind::S1, r)),
                    ModelName::WS(r) if r < n => Some((FormulaKind::S2, r)),
                    ModelName::AltFullPad(r) if r < n => Some((FormulaKind::A1, r)),
                    ModelName::WA(r) => Some((FormulaKind::A2, r)),
                    _ => None,
                };
                if let Some((kind, r)) = kind {
                    comparisons += 1;
                    let dim = build_model(name, n, f)?.dim();
                    if dim != dim_formula(kind, n, r)? {
                        bad.push(format!("{name}@n={n},q={q}"));
                    }
                }
            }
        }
    }
    for n in 1..=40usize {
        for s in 0..=n / 2 {
            for (kind, r, first, second) in [
                (CrossoverKind::Alt, 2 * s, FormulaKind::A1, FormulaKind::A2),
                (CrossoverKind::SymEven, 2 * s, FormulaKind::S1, FormulaKind::S2),
                (CrossoverKind::SymOdd, 2 * s + 1, FormulaKind::S1, FormulaKind::S2),
            ] {
                if r >= n {
                    continue;
                }
                comparisons += 1;
                let (a, b) = (dim_formula(first, n, r)?, dim_formula(second, n, r)?);
                let direct = match a.cmp(&b) {
                    std::cmp::Ordering::Greater => Crossover::FirstMax,
                    std::cmp::Ordering::Less => Crossover::SecondMax,
                    std::cmp::Ordering::Equal => Crossover::Tie,
                };
                if crossover(kind, n, s)? != direct {
                    bad.push(format!("{kind:?}@n={n},s={s}"));
                }
            }
        }
    }
    let mut value = format!("comparisons={comparisons} mismatches={}", bad.len());
    if let Some(first) = bad.first() {
        value.push_str(&format!(" first={first}"));
    }
    Ok(CheckOutcome::new("models.formulas", "dimension-formulas", bad.is_empty(), value))
}

pub fn upper_ranks(config: &VerifyConfig, rng: &mut ChaCha8Rng) -> Result<CheckOutcome> {
    let (mut count, mut exhaustive, mut certified) = (0, 0, 0);
    let mut bad = Vec::new();
    each_model(|name, n, f| {
        count += 1;
        let s = build_model(name, n, f)?;
        match certified_upper_rank(&s, &config.budget, rng)? {
            Some((urk, method)) => {
                match method {
                    UrkMethod::Exhaustive => exhaustive += 1,
                    UrkMethod::Certificate => certified += 1,
                }
                if urk != name.stated_upper_rank() {
                    bad.push(format!("{name}@n={n},q={}:urk={urk}", f.q()));
                }
            }
            None => bad.push(format!("{name}@n={n},q={}:unsettled", f.q())),
        }
        Ok(())
    })?;
    let mut value = format!("models={count} exhaustive={exhaustive} certified={certified} mismatches={}", bad.len());
    if let Some(first) = bad.first() {
        value.push_str(&format!(" first={first}"));
    }
    Ok(CheckOutcome::new("models.upper-ranks", "model-upper-ranks", bad.is_empty(), value))
}

pub fn linearity(_config: &VerifyConfig, _rng: &mut ChaCha8Rng) -> Result<CheckOutcome> {
    let mut count = 0;
    let mut bad = Vec::new();
    each_model(|name, n, f| {
        count += 1;
        let s = build_model(name, n, f)?;
        let zero = Matrix::zeros(f, n, n);
        if s.is_linear() != name.is_linear() || s.contains(&zero)? != name.is_linear() {
            bad.push(format!("{name}@n={n},q={}", f.q()));
        }
        Ok(())
    })?;
    Ok(listing("models.linearity", "model-base-points", count, &bad))
}

fn gf2_model(name: ModelName, n: usize) -> Result<AffineMatrixSpace> {
    build_model(name, n, FieldSpec::gf(2))
}

fn table_check(
    id: &'static str,
    rows: Vec<(String, u128, u128)>,
) -> CheckOutcome {
    let ok = rows.iter().all(|(_, got, want)| got == want);
    let value: Vec<String> = rows.iter().map(|(label, got, _)| format!("{label}={got}")).collect();
    CheckOutcome::new(id, "invariant-table", ok, value.join(" "))
}

pub fn rank_one_members(config: &VerifyConfig, _rng: &mut ChaCha8Rng) -> Result<CheckOutcome> {
    let p = invariant_profile(&gf2_model(ModelName::Y1, 3)?, &config.budget)?;
    Ok(table_check("invariants.rank-one-members", vec![("Y1".into(), p.rank_distribution[1], 2)]))
}

pub fn alternating_members(config: &VerifyConfig, _rng: &mut ChaCha8Rng) -> Result<CheckOutcome> {
    let mut rows = Vec::new();
    for (name, want) in [(ModelName::Y2, 2), (ModelName::Y3, 4), (ModelName::Z(3), 2), (ModelName::WS(2), 4)] {
        let p = invariant_profile(&gf2_model(name, 3)?, &config.budget)?;
        rows.push((name.to_string(), p.alternating_count, want));
    }
    Ok(table_check("invariants.alternating-members", rows))
}

pub fn zero_free(config: &VerifyConfig, _rng: &mut ChaCha8Rng) -> Result<CheckOutcome> {
    let mut rows = Vec::new();
    for (name, n) in [(ModelName::Y1, 3), (ModelName::Y2, 3), (ModelName::Y3, 3), (ModelName::U, 4)] {
        let p = invariant_profile(&gf2_model(name, n)?, &config.budget)?;
        rows.push((format!("{name}.zero"), p.contains_zero as u128, 0));
    }
    Ok(table_check("invariants.zero-free", rows))
}

/// Common kernel dimension `n - r` for padded full symmetric spaces, `0`
/// for `WS(r)` with `r >= 2`, `n - r - 1` for padded `Z(r + 1)`.
pub fn common_kernels(_config: &VerifyConfig, _rng: &mut ChaCha8Rng) -> Result<CheckOutcome> {
    let mut count = 0;
    let mut bad = Vec::new();
    each_model(|name, n, f| {
        let expected = match name {
            ModelName::SymFullPad(r) => Some(n - r),
            ModelName::WS(r) if r >= 2 => Some(0),
            ModelName::Z(k) if k >= 2 => Some(n - k),
            _ => None,
        };
        if let Some(want) = expected {
            count += 1;
            let got = build_model(name, n, f)?.common_kernel_dim();
            if got != want {
                bad.push(format!("{name}@n={n},q={}:{got}", f.q()));
            }
        }
        Ok(())
    })?;
    Ok(listing("invariants.common-kernel", "invariant-table", count, &bad))
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;

    use super::*;

    #[test]
    fn structural_bound_is_tight_on_ws() {
        let f = FieldSpec::gf(5);
        for (r, n) in [(4, 6), (5, 6), (2, 5)] {
            let s = build_model(ModelName::WS(r), n, f).unwrap();
            assert_eq!(structural_rank_bound(&s, &Budget::default()).unwrap(), r);
        }
        let pad = build_model(ModelName::SymFullPad(3), 6, f).unwrap();
        assert_eq!(structural_rank_bound(&pad, &Budget::default()).unwrap(), 3);
    }

    #[test]
    fn structural_bound_never_undercuts_exhaustive() {
        let f = FieldSpec::gf(3);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..30 {
            let s = crate::search::random_bounded_space(AmbientKind::Symmetric(3), f, 2, 2, 20, &mut rng).unwrap();
            let b = structural_rank_bound(&s, &Budget::default()).unwrap();
            assert!(b >= s.upper_rank(&Budget::default()).unwrap());
        }
    }

    #[test]
    fn certified_matches_exhaustive_where_both_apply() {
        // Force the certificate route on a space small enough to scan.
        let f = FieldSpec::gf(3);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for (name, n) in [(ModelName::WS(3), 4), (ModelName::WA(2), 4), (ModelName::SymFullPad(2), 4)] {
            let s = build_model(name, n, f).unwrap();
            let bound = structural_rank_bound(&s, &Budget::default()).unwrap();
            assert_eq!(bound, s.upper_rank(&Budget::default()).unwrap(), "{name}");
            let (urk, _) = certified_upper_rank(&s, &Budget::default(), &mut rng).unwrap().unwrap();
            assert_eq!(urk, bound);
        }
    }

    #[test]
    fn table_checks_pass() {
        let c = VerifyConfig::default();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for check in [rank_one_members, alternating_members, zero_free, common_kernels, linearity, dimensions] {
            let out = check(&c, &mut rng).unwrap();
            assert!(out.passed, "{out}");
        }
    }
}
